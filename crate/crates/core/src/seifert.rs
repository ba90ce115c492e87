//! Numerical oracle: Seifert matrices of braid closures, signature/nullity of
//! the associated Hermitian form at unit-circle parameters, and Alexander
//! polynomials.  Everything here is independent of the closed-form step
//! functions, so the two can cross-validate each other.

use crate::braid::BraidWord;
use crate::numeric::Rat;
use crate::poly::{poly_det, CyclotomicField, IntPoly, LaurentPoly};
use crate::torus_sig::{TorusKnot, TorusSigError};
use nalgebra::{Complex, DMatrix};
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SeifertError {
    #[error("generator {0} does not occur: the Seifert surface is disconnected")]
    DisconnectedSurface(usize),
    #[error("parameter t = {0} is outside the open interval (0,1)")]
    DomainError(String),
    #[error("eigenvalue of magnitude {0:.3e} cannot be certified zero or nonzero at tolerance {1:.3e}")]
    AmbiguousEigenvalue(f64, f64),
    #[error("determinant at t=1 is {0}, so the matrix does not come from a knot")]
    NotAKnot(String),
    #[error(transparent)]
    ParameterError(#[from] TorusSigError),
}

/// Seifert matrix of a compact surface, together with the topology of the
/// surface it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
    components: usize,
    first_betti: usize,
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>, components: usize) -> SeifertMatrix {
        let first_betti = entries.len();
        debug_assert!(entries.iter().all(|r| r.len() == first_betti));
        SeifertMatrix { entries, components, first_betti }
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn first_betti(&self) -> usize {
        self.first_betti
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }
}

/// Seifert matrix of the Bennequin surface of a braid closure: one disc per
/// strand, one band per letter, and a homology basis of loops through
/// consecutive same-generator band pairs.
///
/// The sign convention is anchored so that the closure of "aaa" (the positive
/// trefoil) has signature -2 at t = 1/2; see the regression test below.
pub fn seifert_matrix_from_braid(w: &BraidWord) -> Result<SeifertMatrix, SeifertError> {
    let strands = w.strands();
    // positions of the letters in each column (generator index), plus signs
    let mut columns: Vec<Vec<(usize, i64)>> = vec![vec![]; strands - 1];
    for (pos, &letter) in w.letters().iter().enumerate() {
        let col = letter.unsigned_abs() as usize - 1;
        columns[col].push((pos, letter.signum() as i64));
    }
    if let Some(missing) = columns.iter().position(Vec::is_empty) {
        return Err(SeifertError::DisconnectedSurface(missing + 1));
    }

    // Loops: consecutive band pairs within a column.
    // (column, first position, second position, first sign, second sign)
    struct Loop {
        col: usize,
        a: usize,
        b: usize,
        ea: i64,
        eb: i64,
    }
    let mut loops: Vec<Loop> = vec![];
    for (col, bands) in columns.iter().enumerate() {
        for pair in bands.windows(2) {
            loops.push(Loop {
                col,
                a: pair[0].0,
                b: pair[1].0,
                ea: pair[0].1,
                eb: pair[1].1,
            });
        }
    }
    let n = loops.len();
    debug_assert_eq!(n, w.len() + 1 - strands);

    let mut m = vec![vec![0i64; n]; n];
    for (x, lx) in loops.iter().enumerate() {
        m[x][x] = -(lx.ea + lx.eb) / 2;
        for (y, ly) in loops.iter().enumerate().skip(x + 1) {
            if lx.col == ly.col {
                // consecutive loops in one column share a band of sign e
                if lx.b == ly.a {
                    let e = lx.eb;
                    m[x][y] = (e - 1) / 2;
                    m[y][x] = (e + 1) / 2;
                }
            } else if lx.col + 1 == ly.col || ly.col + 1 == lx.col {
                // linking of loops in adjacent columns depends only on how
                // their band positions interleave along the braid axis; only
                // the higher-column loop picks up a nonzero pairing entry
                let (lo_idx, lo, hi_idx, hi) = if lx.col < ly.col {
                    (x, lx, y, ly)
                } else {
                    (y, ly, x, lx)
                };
                if lo.a < hi.a && hi.a < lo.b && lo.b < hi.b {
                    m[hi_idx][lo_idx] = 1;
                } else if hi.a < lo.a && lo.a < hi.b && hi.b < lo.b {
                    m[hi_idx][lo_idx] = -1;
                }
            }
        }
    }

    Ok(SeifertMatrix::new(m, w.closure_components()))
}

/// Signature and nullity of (1-w)M + (1-conj(w))M^T at w = e^{2 pi i t}.
///
/// Eigenvalues are computed in double precision; a sign count is accepted only
/// when every eigenvalue is certified nonzero (|lambda| > 10 * tol * norm) or
/// the borderline ones are confirmed to be exact kernel directions by an exact
/// rank computation over the cyclotomic field at w.
pub fn tl_signature_nullity(
    m: &SeifertMatrix,
    t: &Rat,
    tol: f64,
) -> Result<(i64, i64), SeifertError> {
    if *t <= Rat::zero() || *t >= Rat::one() {
        return Err(SeifertError::DomainError(crate::numeric::rat_string(t)));
    }
    let n = m.dim();
    if n == 0 {
        return Ok((0, 0));
    }
    let tf = t.to_f64().expect("rational in (0,1) converts to f64");
    let theta = 2.0 * std::f64::consts::PI * tf;
    let omega = Complex::new(theta.cos(), theta.sin());
    let a = Complex::new(1.0, 0.0) - omega;
    let ac = a.conj();
    let h = DMatrix::from_fn(n, n, |i, j| {
        a * (m.entries[i][j] as f64) + ac * (m.entries[j][i] as f64)
    });
    let norm = h.norm().max(1.0);
    let eigen = h.symmetric_eigen();
    let threshold = 10.0 * tol * norm;

    let mut pos = 0i64;
    let mut neg = 0i64;
    let mut small = 0usize;
    let mut smallest_unclear = f64::INFINITY;
    for &lambda in eigen.eigenvalues.iter() {
        if lambda > threshold {
            pos += 1;
        } else if lambda < -threshold {
            neg += 1;
        } else {
            small += 1;
            smallest_unclear = smallest_unclear.min(lambda.abs());
        }
    }
    if small == 0 {
        return Ok((pos - neg, 0));
    }

    // Borderline eigenvalues: decide the nullity exactly.  The kernel of the
    // Hermitian form equals the kernel of M^T - w M because the form factors
    // as (1 - conj(w)) (M^T - w M) and w != 1 on (0,1).
    let eta = exact_nullity(m, t);
    if small == eta {
        Ok((pos - neg, eta as i64))
    } else {
        Err(SeifertError::AmbiguousEigenvalue(smallest_unclear, threshold))
    }
}

/// Exact nullity of M^T - w M at w = e^{2 pi i t}, over Q(zeta_d) where d is
/// the denominator of t in lowest terms.
fn exact_nullity(m: &SeifertMatrix, t: &Rat) -> usize {
    let d = m.dim();
    let denom = t.denom().to_u64().expect("sample denominators fit in u64");
    let numer = t.numer().to_u64().expect("t in (0,1)") as usize;
    let field = CyclotomicField::new(denom);
    let deg = cyclotomic_degree(denom);
    let elem = |a: i64, b: i64| -> Vec<Rat> {
        // a + b * zeta^numer, reduced into the field
        let mut v = vec![Rat::zero(); (numer + 1).max(deg)];
        v[0] += Rat::from_integer(BigInt::from(a));
        v[numer] += Rat::from_integer(BigInt::from(b));
        field.reduce(v)
    };
    let mat: Vec<Vec<Vec<Rat>>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| elem(m.entries[j][i], -m.entries[i][j]))
                .collect()
        })
        .collect();
    d - field.rank(mat)
}

fn cyclotomic_degree(n: u64) -> usize {
    crate::poly::cyclotomic(n).degree().unwrap_or(0)
}

/// Alexander polynomial det(t^{1/2} M - t^{-1/2} M^T), normalized to be
/// symmetric with value +1 at t = 1.
pub fn alexander_polynomial(m: &SeifertMatrix) -> Result<LaurentPoly, SeifertError> {
    let n = m.dim();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    // det(t M - M^T) as an integer polynomial, then shift by t^{-n/2}
    let mat: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    IntPoly::monomial(m.entries[i][j], 1)
                        .sub(&IntPoly::constant(m.entries[j][i]))
                })
                .collect()
        })
        .collect();
    let det = poly_det(mat);
    if det.is_zero() {
        return Err(SeifertError::NotAKnot("0".into()));
    }
    let at_one = det.eval_int(1);
    if !at_one.abs().is_one() {
        return Err(SeifertError::NotAKnot(at_one.to_string()));
    }
    let mut coeffs = det.coeffs().to_vec();
    if at_one.is_negative() {
        for c in &mut coeffs {
            *c = -c.clone();
        }
    }
    let min = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero determinant");
    let max = coeffs.len() - 1;
    if (min + max) % 2 != 0 {
        return Err(SeifertError::NotAKnot(format!(
            "degree span {min}..{max} cannot be symmetrized"
        )));
    }
    let shift = (min + max) as i64 / 2;
    let poly = LaurentPoly::new(-shift, coeffs);
    if !poly.is_symmetric() {
        return Err(SeifertError::NotAKnot(format!("asymmetric polynomial {poly}")));
    }
    Ok(poly)
}

/// Closed-form Alexander polynomial of a torus knot:
/// (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)), symmetrized.
pub fn torus_alexander(knot: TorusKnot) -> LaurentPoly {
    let (p, q) = (knot.p() as usize, knot.q() as usize);
    let tn = |k: usize| IntPoly::monomial(1, k).sub(&IntPoly::constant(1));
    let num = tn(p * q).mul(&tn(1));
    let poly = num
        .exact_div(&tn(p))
        .and_then(|r| r.exact_div(&tn(q)))
        .expect("torus Alexander division is exact");
    let genus = knot.genus() as i64;
    LaurentPoly::new(-genus, poly.coeffs().to_vec())
}

/// Signature/nullity transport across a clasp resolution: adding p positive
/// and n negative clasps changes (sigma, eta) to (sigma - n + p, eta).
pub fn hopf_sum_transform(sigma: i64, eta: i64, p: i64, n: i64) -> (i64, i64) {
    (sigma - n + p, eta)
}
