//! Formal semigroups of L-space knots and the Upsilon invariant computed from
//! them, including torus knots, cables of torus knots and the K_i family.

use crate::numeric::{rat_int, PLFunction, Rat};
use crate::torus_sig::TorusKnot;
use num::{Integer, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum SemigroupError {
    #[error("generators {0:?} have gcd > 1: complement is infinite")]
    InfiniteGaps(Vec<u64>),
    #[error("bound {0} too small to certify the gap set")]
    BoundTooSmall(u64),
    #[error("{0} is outside [0, {1}]")]
    DomainError(u64, u64),
    #[error("stated genus {stated} does not match the gap count {gaps}")]
    GenusMismatch { stated: u64, gaps: u64 },
    #[error("({p},{q})-cable parameters (r,s)=({r},{s}) violate the L-space condition")]
    NotLSpace { p: i64, q: i64, r: i64, s: i64 },
    #[error("invalid parameter: {0}")]
    ParameterError(String),
}

/// Numerical semigroup given by generators, realized as a membership table
/// over [0, bound). Construction certifies that every gap lies below the
/// bound: the top max(generators) consecutive integers below it are members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSemigroup {
    generators: Vec<u64>,
    bound: u64,
    members: Vec<bool>,
}

impl FormalSemigroup {
    pub fn generate(generators: &[u64], bound: u64) -> Result<Self, SemigroupError> {
        if generators.is_empty() || generators.contains(&0) {
            return Err(SemigroupError::ParameterError(
                "generators must be a nonempty set of positive integers".into(),
            ));
        }
        let mut gens: Vec<u64> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let g = gens.iter().fold(0u64, |a, b| a.gcd(b));
        if g > 1 {
            return Err(SemigroupError::InfiniteGaps(gens));
        }
        let max_gen = *gens.last().unwrap();
        if bound < max_gen + 1 {
            return Err(SemigroupError::BoundTooSmall(bound));
        }
        let mut members = vec![false; bound as usize];
        members[0] = true;
        for x in 0..bound as usize {
            if members[x] {
                for &gen in &gens {
                    let y = x + gen as usize;
                    if y < bound as usize {
                        members[y] = true;
                    }
                }
            }
        }
        let certified = members[(bound - max_gen) as usize..].iter().all(|&m| m);
        if !certified {
            return Err(SemigroupError::BoundTooSmall(bound));
        }
        Ok(FormalSemigroup { generators: gens, bound, members })
    }

    /// Generates with an automatically certified bound: start at
    /// max(2 * gap estimate, product of the two smallest generators) and
    /// double until certification passes.
    pub fn generate_auto(generators: &[u64]) -> Result<Self, SemigroupError> {
        let mut gens: Vec<u64> = generators.to_vec();
        gens.sort_unstable();
        let max_gen = *gens.last().ok_or_else(|| {
            SemigroupError::ParameterError("generators must be nonempty".into())
        })?;
        let prod = if gens.len() >= 2 { gens[0].saturating_mul(gens[1]) } else { gens[0] };
        let mut bound = prod.max(2 * max_gen).max(4);
        loop {
            match Self::generate(generators, bound) {
                Err(SemigroupError::BoundTooSmall(_)) => {
                    bound = bound.checked_mul(2).ok_or(SemigroupError::BoundTooSmall(bound))?;
                }
                other => return other,
            }
        }
    }

    /// Regenerates with a bound at least `min_bound`, keeping certification.
    pub fn with_min_bound(&self, min_bound: u64) -> Result<Self, SemigroupError> {
        if self.bound >= min_bound {
            return Ok(self.clone());
        }
        let mut bound = min_bound;
        loop {
            match Self::generate(&self.generators, bound) {
                Err(SemigroupError::BoundTooSmall(_)) => bound *= 2,
                other => return other,
            }
        }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn contains(&self, x: u64) -> bool {
        if x >= self.bound {
            true // certified: all gaps lie below the bound
        } else {
            self.members[x as usize]
        }
    }

    /// Number of members strictly below m.
    pub fn count_below(&self, m: u64) -> Result<u64, SemigroupError> {
        if m > self.bound {
            return Err(SemigroupError::DomainError(m, self.bound));
        }
        Ok(self.members[..m as usize].iter().filter(|&&b| b).count() as u64)
    }

    pub fn gaps(&self) -> Vec<u64> {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| !m)
            .map(|(i, _)| i as u64)
            .collect()
    }

    /// Number of gaps; for the formal semigroup of an L-space knot this is the
    /// genus.
    pub fn genus_from_gaps(&self) -> u64 {
        self.members.iter().filter(|&&m| !m).count() as u64
    }
}

/// Upsilon of an L-space knot with formal semigroup S and genus g:
/// the upper envelope over m in {0..2g} of the lines
/// t -> -2 #(S cap [0,m)) + (m-g) t, on [0,2], computed exactly.
pub fn upsilon_from_semigroup(s: &FormalSemigroup, g: u64) -> Result<PLFunction, SemigroupError> {
    let gaps = s.genus_from_gaps();
    if g != gaps {
        return Err(SemigroupError::GenusMismatch { stated: g, gaps });
    }
    if s.bound() < 2 * g + 1 {
        return Err(SemigroupError::BoundTooSmall(s.bound()));
    }
    let g = g as i64;
    let lines: Vec<(Rat, Rat)> = (0..=2 * g)
        .map(|m| {
            let intercept = rat_int(-2 * s.count_below(m as u64).unwrap() as i64);
            let slope = rat_int(m - g);
            (slope, intercept)
        })
        .collect();
    // pairwise-intersection sweep: every envelope breakpoint is an
    // intersection of two candidate lines
    let zero = Rat::zero();
    let two = rat_int(2);
    let mut xs: Vec<Rat> = vec![zero.clone(), two.clone()];
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (ref si, ref ci) = lines[i];
            let (ref sj, ref cj) = lines[j];
            if si != sj {
                let x = (ci - cj) / (sj - si);
                if x > zero && x < two {
                    xs.push(x);
                }
            }
        }
    }
    xs.sort();
    xs.dedup();
    let ys: Vec<Rat> = xs
        .iter()
        .map(|x| lines.iter().map(|(s, c)| s * x + c).max().unwrap())
        .collect();
    Ok(PLFunction::new(xs, ys).expect("envelope is a valid polyline"))
}

/// The (r,s)-cable of T_{p,q} (r the longitudinal winding), restricted to
/// parameters for which the cable is an L-space knot: s >= r(2g-1) with
/// g = (p-1)(q-1)/2, equality allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LSpaceCable {
    knot: TorusKnot,
    r: i64,
    s: i64,
}

impl LSpaceCable {
    pub fn new(knot: TorusKnot, r: i64, s: i64) -> Result<Self, SemigroupError> {
        if r < 1 || s < 1 || r.gcd(&s) != 1 {
            return Err(SemigroupError::ParameterError(format!(
                "cable parameters (r,s)=({r},{s}) must be coprime positive integers"
            )));
        }
        let g = knot.genus();
        if s < r * (2 * g - 1) {
            return Err(SemigroupError::NotLSpace { p: knot.p(), q: knot.q(), r, s });
        }
        Ok(LSpaceCable { knot, r, s })
    }

    pub fn knot(&self) -> TorusKnot {
        self.knot
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    /// Genus of the cable: r g + (r-1)(s-1)/2.
    pub fn genus(&self) -> i64 {
        self.r * self.knot.genus() + (self.r - 1) * (self.s - 1) / 2
    }
}

/// Formal semigroup of an L-space cable of a torus knot: <pr, qr, s>.
pub fn cable_semigroup(c: &LSpaceCable) -> Result<FormalSemigroup, SemigroupError> {
    let gens = [
        (c.knot().p() * c.r()) as u64,
        (c.knot().q() * c.r()) as u64,
        c.s() as u64,
    ];
    let s = FormalSemigroup::generate_auto(&gens)?;
    s.with_min_bound(2 * c.genus() as u64 + 1)
}

pub fn cable_upsilon(c: &LSpaceCable) -> Result<PLFunction, SemigroupError> {
    let s = cable_semigroup(c)?;
    upsilon_from_semigroup(&s, c.genus() as u64)
}

/// Upsilon of the positive torus knot T_{p,q} via its formal semigroup <p,q>.
pub fn torus_upsilon(knot: TorusKnot) -> Result<PLFunction, SemigroupError> {
    let s = FormalSemigroup::generate_auto(&[knot.p() as u64, knot.q() as u64])?;
    let s = s.with_min_bound(2 * knot.genus() as u64 + 1)?;
    upsilon_from_semigroup(&s, knot.genus() as u64)
}

/// Upsilon of K_i = D_{2,2i+1} # -T_{2,2i+1} # -D for i > 1, computed through
/// its nu+-equivalent representative (T_{2,3})_{2,2i+1} # -T_{2,2i+3}.
pub fn upsilon_ki(i: i64) -> Result<PLFunction, SemigroupError> {
    if i <= 1 {
        return Err(SemigroupError::ParameterError(format!(
            "K_i is defined for i > 1, got i = {i}"
        )));
    }
    let trefoil = TorusKnot::new(2, 3).expect("trefoil parameters");
    let cable = LSpaceCable::new(trefoil, 2, 2 * i + 1)?;
    let u_cable = cable_upsilon(&cable)?;
    let u_torus = torus_upsilon(
        TorusKnot::new(2, 2 * i + 3).map_err(|e| SemigroupError::ParameterError(e.to_string()))?,
    )?;
    Ok(u_cable.add(&u_torus.neg()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn generate_2_3() {
        let s = FormalSemigroup::generate(&[2, 3], 10).unwrap();
        assert_eq!(s.gaps(), vec![1]);
        assert!(s.contains(0) && !s.contains(1) && s.contains(2));
        assert_eq!(s.genus_from_gaps(), 1);
    }

    #[test]
    fn generate_4_6_5() {
        let s = FormalSemigroup::generate(&[4, 6, 5], 16).unwrap();
        assert_eq!(s.gaps(), vec![1, 2, 3, 7]);
        assert_eq!(s.genus_from_gaps(), 4);
    }

    #[test]
    fn generate_full() {
        let s = FormalSemigroup::generate(&[1], 4).unwrap();
        assert!(s.gaps().is_empty());
        assert_eq!(s.genus_from_gaps(), 0);
    }

    #[test]
    fn generate_errors() {
        assert!(matches!(
            FormalSemigroup::generate(&[4, 6], 100),
            Err(SemigroupError::InfiniteGaps(_))
        ));
        assert!(matches!(
            FormalSemigroup::generate(&[5, 7], 8),
            Err(SemigroupError::BoundTooSmall(_))
        ));
        assert!(FormalSemigroup::generate_auto(&[5, 7]).is_ok());
    }

    #[test]
    fn counting() {
        let s = FormalSemigroup::generate(&[2, 3], 10).unwrap();
        assert_eq!(s.count_below(0).unwrap(), 0);
        assert_eq!(s.count_below(2).unwrap(), 1);
        assert!(s.count_below(11).is_err());
        let s = FormalSemigroup::generate_auto(&[4, 6, 7]).unwrap();
        assert_eq!(s.count_below(4).unwrap(), 1);
    }

    #[test]
    fn torus_upsilon_small() {
        // Upsilon_{T_{2,2i+1}} = -i t on [0,1]
        for i in 1..=3i64 {
            let u = torus_upsilon(TorusKnot::new(2, 2 * i + 1).unwrap()).unwrap();
            assert_eq!(u.eval(&rat_int(1)).unwrap(), rat_int(-i));
            assert_eq!(u.eval(&rat(1, 2)).unwrap(), rat(-i, 2));
            assert_eq!(u.eval(&rat_int(2)).unwrap(), rat_int(0));
        }
    }

    #[test]
    fn upsilon_4_6_7() {
        // i = 3: -5t on [0,1/2], -2-t on [1/2,1]
        let s = FormalSemigroup::generate_auto(&[4, 6, 7]).unwrap().with_min_bound(11).unwrap();
        let u = upsilon_from_semigroup(&s, 5).unwrap();
        assert_eq!(u.eval(&rat(1, 2)).unwrap(), rat(-5, 2));
        assert_eq!(u.eval(&rat_int(1)).unwrap(), rat_int(-3));
        assert_eq!(u.eval(&rat(3, 4)).unwrap(), rat(-11, 4));
    }

    #[test]
    fn upsilon_4_6_5() {
        // i = 2: -4t on [0,1/2], constant -2 on [1/2,1]
        let s = FormalSemigroup::generate_auto(&[4, 6, 5]).unwrap().with_min_bound(9).unwrap();
        let u = upsilon_from_semigroup(&s, 4).unwrap();
        assert_eq!(u.eval(&rat(1, 2)).unwrap(), rat_int(-2));
        assert_eq!(u.eval(&rat(3, 4)).unwrap(), rat_int(-2));
        assert_eq!(u.eval(&rat_int(1)).unwrap(), rat_int(-2));
    }

    #[test]
    fn genus_mismatch_detected() {
        let s = FormalSemigroup::generate_auto(&[2, 3]).unwrap();
        assert!(matches!(
            upsilon_from_semigroup(&s, 2),
            Err(SemigroupError::GenusMismatch { .. })
        ));
    }

    #[test]
    fn cable_examples() {
        let trefoil = TorusKnot::new(2, 3).unwrap();
        let c = LSpaceCable::new(trefoil, 2, 5).unwrap();
        let s = cable_semigroup(&c).unwrap();
        assert_eq!(s.generators(), &[4, 5, 6]);
        assert_eq!(s.gaps(), vec![1, 2, 3, 7]);
        assert!(matches!(
            LSpaceCable::new(trefoil, 2, 1),
            Err(SemigroupError::NotLSpace { .. })
        ));
    }

    #[test]
    fn ki_polyline() {
        for i in [2i64, 5] {
            let u = upsilon_ki(i).unwrap();
            assert_eq!(u.eval(&rat(1, 2)).unwrap(), rat(-1, 2));
            assert_eq!(u.eval(&rat_int(1)).unwrap(), rat_int(1));
            assert_eq!(u.eval(&rat(1, 4)).unwrap(), rat(-1, 4));
            assert_eq!(u.eval(&rat(3, 4)).unwrap(), rat(1, 4));
        }
        assert!(upsilon_ki(1).is_err());
    }
}
