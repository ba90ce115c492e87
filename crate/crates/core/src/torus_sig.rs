//! Tristram-Levine signature functions of torus knots via the
//! Hirzebruch-Brieskorn counting formula, together with the closed-form jump
//! description, the pq = p'q' closed form, and the regularity predicate.

use crate::numeric::{rat_int, rat_string, Rat, StepFunction};
use num::{Integer, One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum TorusSigError {
    #[error("invalid torus knot parameters ({0},{1}): need 2 <= p < q coprime")]
    ParameterError(i64, i64),
    #[error("{0} is outside the domain {1}")]
    DomainError(String, &'static str),
    #[error("precondition violated: {0}")]
    PreconditionError(String),
}

/// The positive torus knot T_{p,q} with 2 <= p < q and gcd(p,q) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusKnot {
    p: i64,
    q: i64,
}

impl TorusKnot {
    pub fn new(p: i64, q: i64) -> Result<Self, TorusSigError> {
        if p < 2 || p >= q || p.gcd(&q) != 1 {
            return Err(TorusSigError::ParameterError(p, q));
        }
        Ok(TorusKnot { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Seifert genus = 4-ball genus = (p-1)(q-1)/2.
    pub fn genus(&self) -> i64 {
        (self.p - 1) * (self.q - 1) / 2
    }
}

/// The multiset-free set S = { k/p + j/q : 0 < k < p, 0 < j < q } of the
/// Hirzebruch-Brieskorn counting formula, sorted ascending in (0,2).
#[derive(Debug, Clone)]
pub struct HBSet {
    knot: TorusKnot,
    elements: Vec<Rat>,
}

impl HBSet {
    pub fn new(knot: TorusKnot) -> Self {
        let (p, q) = (knot.p, knot.q);
        // k/p + j/q = (kq + jp)/(pq); distinct (k,j) give distinct values.
        let mut nums: Vec<i64> = (1..p)
            .flat_map(|k| (1..q).map(move |j| k * q + j * p))
            .collect();
        nums.sort_unstable();
        let elements = nums.into_iter().map(|n| Rat::new(n.into(), (p * q).into())).collect();
        HBSet { knot, elements }
    }

    pub fn knot(&self) -> TorusKnot {
        self.knot
    }

    pub fn elements(&self) -> &[Rat] {
        &self.elements
    }
}

/// Signature of T_{p,q} at omega = e^{2 pi i t} by direct counting:
/// -sigma_t = #(S cap [t,1+t]) - #(S \ (t,1+t)).
pub fn hb_signature_at(knot: TorusKnot, t: &Rat) -> Result<i64, TorusSigError> {
    if t < &Rat::zero() || t > &Rat::one() {
        return Err(TorusSigError::DomainError(rat_string(t), "[0,1]"));
    }
    let s = HBSet::new(knot);
    let upper = t + Rat::one();
    let mut closed = 0i64;
    let mut open = 0i64;
    for x in s.elements() {
        if x >= t && x <= &upper {
            closed += 1;
        }
        if x > t && x < &upper {
            open += 1;
        }
    }
    let total = s.elements().len() as i64;
    Ok(-(closed - (total - open)))
}

/// The full signature step function on (0,1). All jumps occur at multiples of
/// 1/pq, so the function is assembled from counts on the integer grid.
pub fn signature_step_function(knot: TorusKnot) -> StepFunction {
    let (p, q) = (knot.p, knot.q);
    let pq = p * q;
    // membership bitmap for S scaled by pq: elements are kq + jp in (0, 2pq)
    let mut member = vec![false; (2 * pq) as usize];
    for k in 1..p {
        for j in 1..q {
            member[(k * q + j * p) as usize] = true;
        }
    }
    let mut prefix = vec![0i64; member.len() + 1];
    for (i, &m) in member.iter().enumerate() {
        prefix[i + 1] = prefix[i] + i64::from(m);
    }
    let total = (p - 1) * (q - 1);
    // value on (m/pq, (m+1)/pq): strict count of S in the open window
    // (t, 1+t) at t = (2m+1)/(2pq), i.e. elements l with m+1 <= l <= m+pq.
    let mut values = Vec::with_capacity(pq as usize);
    for m in 0..pq {
        let inside = prefix[(m + pq + 1) as usize] - prefix[(m + 1) as usize];
        values.push(-(2 * inside - total));
    }
    let breakpoints = (1..pq).map(|m| Rat::new(m.into(), pq.into())).collect();
    StepFunction::new(breakpoints, values).expect("grid values form a valid step function")
}

/// Jump description of the signature function on [0, (p+q)/pq]: a jump of -2
/// at every l/pq with l < p+q, p and q both not dividing l, then +2 at
/// (p+q)/pq.
pub fn jump_description(knot: TorusKnot) -> Vec<(Rat, i64)> {
    let (p, q) = (knot.p, knot.q);
    let pq = p * q;
    let mut jumps: Vec<(Rat, i64)> = (1..p + q)
        .filter(|l| l % p != 0 && l % q != 0)
        .map(|l| (Rat::new(l.into(), pq.into()), -2))
        .collect();
    jumps.push((Rat::new((p + q).into(), pq.into()), 2));
    jumps
}

/// One labelled piece of the pq = p'q' closed form: the function value on the
/// interval (lo, hi) (the first piece is the half-open [0, 1/q)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormPiece {
    pub lo: Rat,
    pub hi: Rat,
    pub value: i64,
}

/// The three stated interval/value pairs for sigma_t(T_{p,q} # -T_{p',q'})
/// when pq = p'q' and p < p'.
pub fn sum_signature_closed_form(
    k: TorusKnot,
    k2: TorusKnot,
) -> Result<[ClosedFormPiece; 3], TorusSigError> {
    let (p, q) = (k.p, k.q);
    let (p2, q2) = (k2.p, k2.q);
    if p * q != p2 * q2 || p >= p2 {
        return Err(TorusSigError::PreconditionError(format!(
            "need pq = p'q' and p < p', got ({p},{q}) and ({p2},{q2})"
        )));
    }
    let pq = p * q;
    let third = 2 * ((p2 + q2) / q + (p2 + q2) / p - 4 - q2 / p2);
    Ok([
        ClosedFormPiece { lo: Rat::zero(), hi: Rat::new(1.into(), q.into()), value: 0 },
        ClosedFormPiece {
            lo: Rat::new(1.into(), q.into()),
            hi: Rat::new(1.into(), q.into()) + Rat::new(1.into(), pq.into()),
            value: 2,
        },
        ClosedFormPiece {
            lo: Rat::new((p2 + q2).into(), pq.into()),
            hi: Rat::new((p2 + q2 + 1).into(), pq.into()),
            value: third,
        },
    ])
}

/// A rational t in (0,1) gives a regular omega = e^{2 pi i t} exactly when the
/// reduced denominator is a prime power: any admissible Laurent polynomial
/// vanishing at omega is divisible by the cyclotomic polynomial Phi_n, and
/// Phi_n(1) != 1 exactly for prime powers n.
pub fn is_regular(t: &Rat) -> Result<bool, TorusSigError> {
    if !(t > &Rat::zero() && t < &Rat::one()) {
        return Err(TorusSigError::DomainError(rat_string(t), "(0,1)"));
    }
    let n = t
        .denom()
        .to_u64()
        .ok_or_else(|| TorusSigError::DomainError(rat_string(t), "(0,1)"))?;
    Ok(is_prime_power(n))
}

fn is_prime_power(mut n: u64) -> bool {
    debug_assert!(n >= 2);
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            return n == 1;
        }
        d += 1;
    }
    true // n itself prime
}

/// Extrema of a signature function over regular omega. Points k/2^a are
/// regular and dense, so every open interval of constancy realizes its value
/// at a regular point: the extrema over regular omega equal the interior
/// extrema.
pub fn extrema_over_regular(f: &StepFunction) -> (i64, i64) {
    f.extrema_interior()
}

/// A dyadic rational strictly inside (lo, hi); dyadic points are regular.
pub fn dyadic_inside(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo < hi);
    let two = rat_int(2);
    let mut denom = Rat::one();
    loop {
        denom *= &two;
        // smallest k with k/denom > lo
        let k = (lo * &denom).floor() + Rat::one();
        let cand = &k / &denom;
        if &cand < hi {
            debug_assert!(&cand > lo);
            return cand;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn tk(p: i64, q: i64) -> TorusKnot {
        TorusKnot::new(p, q).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(TorusKnot::new(2, 2).is_err());
        assert!(TorusKnot::new(2, 4).is_err());
        assert!(TorusKnot::new(3, 2).is_err());
        assert!(TorusKnot::new(1, 5).is_err());
        assert!(TorusKnot::new(2, 3).is_ok());
    }

    #[test]
    fn hb_set_size_and_range() {
        let s = HBSet::new(tk(3, 7));
        assert_eq!(s.elements().len(), 12);
        assert!(s.elements().first().unwrap() > &Rat::zero());
        assert!(s.elements().last().unwrap() < &rat_int(2));
    }

    #[test]
    fn hb_values() {
        assert_eq!(hb_signature_at(tk(2, 3), &Rat::zero()).unwrap(), 0);
        assert_eq!(hb_signature_at(tk(2, 3), &rat(1, 2)).unwrap(), -2);
        assert_eq!(hb_signature_at(tk(3, 7), &rat(1, 2)).unwrap(), -8);
        assert!(hb_signature_at(tk(2, 3), &rat(3, 2)).is_err());
    }

    #[test]
    fn trefoil_step_function() {
        let f = signature_step_function(tk(2, 3));
        assert_eq!(f.breakpoints(), &[rat(1, 6), rat(5, 6)]);
        assert_eq!(f.values(), &[0, -2, 0]);
        assert_eq!(f.eval(&rat(1, 2)).unwrap(), -2);
        assert!(f.eval(&rat(1, 6)).is_err());
    }

    #[test]
    fn closed_form_interval_values() {
        // (4,5): value on ((p+q)/pq, (p+q+1)/pq) = -2(p+q-4-floor(q/p)) = -8
        let f = signature_step_function(tk(4, 5));
        assert_eq!(f.eval(&rat(19, 40)).unwrap(), -8);
        // (2,5): value on (3/10, 4/10) = -2(3-0-1) = -4
        let f = signature_step_function(tk(2, 5));
        assert_eq!(f.eval(&rat(7, 20)).unwrap(), -4);
    }

    #[test]
    fn jump_descriptions() {
        assert_eq!(jump_description(tk(2, 3)), vec![(rat(1, 6), -2), (rat(5, 6), 2)]);
        assert_eq!(
            jump_description(tk(2, 5)),
            vec![(rat(1, 10), -2), (rat(3, 10), -2), (rat(7, 10), 2)]
        );
        assert_eq!(
            jump_description(tk(3, 4)),
            vec![(rat(1, 12), -2), (rat(2, 12), -2), (rat(5, 12), -2), (rat(7, 12), 2)]
        );
    }

    #[test]
    fn sum_closed_form_examples() {
        let pieces = sum_signature_closed_form(tk(4, 15), tk(5, 12)).unwrap();
        assert_eq!(pieces[2].value, -2);
        assert_eq!(pieces[1].value, 2);
        assert_eq!(pieces[1].lo, rat(1, 15));
        assert_eq!(pieces[1].hi, rat(1, 15) + rat(1, 60));
        let pieces = sum_signature_closed_form(tk(3, 10), tk(5, 6)).unwrap();
        assert_eq!(pieces[2].value, -2);
        assert!(sum_signature_closed_form(tk(2, 3), tk(2, 5)).is_err());
        assert!(sum_signature_closed_form(tk(5, 12), tk(4, 15)).is_err());
    }

    #[test]
    fn regularity() {
        assert!(is_regular(&rat(1, 2)).unwrap());
        assert!(!is_regular(&rat(1, 6)).unwrap());
        assert!(is_regular(&rat(3, 8)).unwrap());
        assert!(is_regular(&rat(2, 9)).unwrap());
        assert!(!is_regular(&rat(1, 12)).unwrap());
        assert!(is_regular(&rat_int(0)).is_err());
    }

    #[test]
    fn sum_extrema_example_35() {
        // sigma(T_{3,7}) + neg(sigma(T_{4,5})) on (3/20, 4/21) is 2
        let f = signature_step_function(tk(3, 7)).add(&signature_step_function(tk(4, 5)).neg());
        let mid = (rat(3, 20) + rat(4, 21)) / rat_int(2);
        assert_eq!(f.eval(&mid).unwrap(), 2);
        assert_eq!(extrema_over_regular(&f), (2, -2));
        assert_eq!(f.eval(&dyadic_inside(&rat(1, 21), &rat(1, 20))).unwrap(), -2);
    }

    #[test]
    fn dyadic_inside_tiny_interval() {
        let d = dyadic_inside(&rat(1000, 3001), &rat(1001, 3001));
        assert!(d > rat(1000, 3001) && d < rat(1001, 3001));
    }
}
