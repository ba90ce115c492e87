//! Exact univariate polynomial arithmetic used by the Seifert-matrix oracle:
//! integer polynomials with a fraction-free determinant, cyclotomic
//! polynomials, symmetric Laurent polynomials, and exact linear algebra over
//! cyclotomic fields for certified nullity.

use crate::numeric::Rat;
use num::{BigInt, One, Signed, Zero};
use std::fmt;

/// Integer polynomial, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly(vec![])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![BigInt::from(c)])
    }

    /// c * t^k
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::from(c);
        Self::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// Exact division; None when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let mut rem = self.0.clone();
        let d = divisor.0.len();
        if rem.len() < d {
            return None;
        }
        let lead = divisor.0.last().unwrap();
        let mut quot = vec![BigInt::zero(); rem.len() - d + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + d - 1].clone();
            if top.is_zero() {
                continue;
            }
            if (&top % lead) != BigInt::zero() {
                return None;
            }
            let q = &top / lead;
            for (j, c) in divisor.0.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    pub fn eval_int(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }
}

/// Determinant of a square polynomial matrix by fraction-free (Bareiss)
/// elimination; divisions are exact in Z[t].
pub fn poly_det(mut m: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::constant(1);
    }
    let mut sign = 1i64;
    let mut prev = IntPoly::constant(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return IntPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is exact over Z[t]");
            }
        }
        prev = m[k][k].clone();
        for i in k + 1..n {
            m[i][k] = IntPoly::zero();
        }
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

/// The n-th cyclotomic polynomial, by dividing t^n - 1 by the proper
/// cyclotomic divisors.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1);
    let mut num = IntPoly::monomial(1, n as usize).sub(&IntPoly::constant(1));
    for d in 1..n {
        if n % d == 0 {
            num = num
                .exact_div(&cyclotomic(d))
                .expect("cyclotomic division is exact");
        }
    }
    num
}

/// Symmetric integer Laurent polynomial, coefficients from t^min_exp upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn one() -> Self {
        LaurentPoly { min_exp: 0, coeffs: vec![BigInt::one()] }
    }

    pub fn new(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.first().is_some_and(Zero::is_zero) {
            self.coeffs.remove(0);
            self.min_exp += 1;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Symmetric under t -> 1/t?
    pub fn is_symmetric(&self) -> bool {
        let max_exp = self.min_exp + self.coeffs.len() as i64 - 1;
        if self.min_exp != -max_exp {
            return false;
        }
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_exp + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

/// Exact rank of a matrix with entries a + b*zeta_n (zeta_n a primitive n-th
/// root of unity), computed by Gaussian elimination in Q[x]/Phi_n(x).
/// Entries are given as rational polynomials in zeta of degree < phi(n).
pub struct CyclotomicField {
    modulus: Vec<Rat>, // monic, ascending
}

impl CyclotomicField {
    pub fn new(n: u64) -> Self {
        let phi = cyclotomic(n);
        let modulus = phi
            .coeffs()
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        CyclotomicField { modulus }
    }

    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduce a polynomial in zeta modulo Phi_n into the canonical degree
    /// < phi(n) representation.
    pub fn reduce(&self, mut v: Vec<Rat>) -> Vec<Rat> {
        let d = self.degree();
        while v.len() > d {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = v.len() - d;
            for i in 0..d {
                let adj = &top * &self.modulus[i];
                v[k + i] -= adj;
            }
        }
        v.resize(d, Rat::zero());
        v
    }

    fn mul(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let add = x * y;
                out[i + j] += add;
            }
        }
        self.reduce(out)
    }

    fn is_zero_elem(a: &[Rat]) -> bool {
        a.iter().all(Zero::is_zero)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in Q[x];
    /// Phi_n is irreducible, so every nonzero element is invertible.
    fn inverse(&self, a: &[Rat]) -> Vec<Rat> {
        // extended gcd of a and modulus
        let mut r0: Vec<Rat> = self.modulus.clone();
        let mut r1: Vec<Rat> = a.to_vec();
        trim(&mut r0);
        trim(&mut r1);
        let mut s0: Vec<Rat> = vec![];
        let mut s1: Vec<Rat> = vec![Rat::one()];
        while !r1.is_empty() {
            let (q, rem) = poly_divmod(&r0, &r1);
            let mut s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            trim(&mut s2);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd (a constant, since Phi_n is irreducible and a != 0)
        assert_eq!(r0.len(), 1, "nonzero cyclotomic field element must be a unit");
        let inv_c = Rat::one() / r0[0].clone();
        let mut out: Vec<Rat> = s0.iter().map(|c| c * &inv_c).collect();
        out.resize(self.degree().max(out.len()), Rat::zero());
        self.reduce(out)
    }

    /// Rank of the matrix over the field.
    pub fn rank(&self, mut m: Vec<Vec<Vec<Rat>>>) -> usize {
        let rows = m.len();
        if rows == 0 {
            return 0;
        }
        let cols = m[0].len();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..cols {
            let pivot = (row..rows).find(|&r| !Self::is_zero_elem(&m[r][col]));
            let Some(p) = pivot else { continue };
            m.swap(row, p);
            let inv = self.inverse(&m[row][col].clone());
            for c in col..cols {
                m[row][c] = self.mul(&m[row][c].clone(), &inv);
            }
            for r in 0..rows {
                if r != row && !Self::is_zero_elem(&m[r][col]) {
                    let factor = m[r][col].clone();
                    for c in col..cols {
                        let prod = self.mul(&factor, &m[row][c]);
                        for (x, y) in m[r][c].iter_mut().zip(prod) {
                            *x -= y;
                        }
                    }
                }
            }
            rank += 1;
            row += 1;
            if row == rows {
                break;
            }
        }
        rank
    }
}

fn trim(v: &mut Vec<Rat>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let add = x * y;
            out[i + j] += add;
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    out
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![], rem);
    }
    let lead = &b[db];
    let mut quot = vec![Rat::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db].clone() / lead;
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                let adj = &c * bc;
                rem[k + j] -= adj;
            }
        }
        quot[k] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat_int;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn exact_division() {
        // (t^2 - 1) / (t - 1) = t + 1
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        assert!(p(&[1, 1, 1]).exact_div(&p(&[-1, 1])).is_none());
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        // Phi_n(1) = prime for prime powers, 1 otherwise
        assert_eq!(cyclotomic(9).eval_int(1), BigInt::from(3));
        assert_eq!(cyclotomic(15).eval_int(1), BigInt::from(1));
    }

    #[test]
    fn determinant_small() {
        // det [[t, 1], [1, t]] = t^2 - 1
        let m = vec![
            vec![p(&[0, 1]), p(&[1])],
            vec![p(&[1]), p(&[0, 1])],
        ];
        assert_eq!(poly_det(m), p(&[-1, 0, 1]));
        let singular = vec![
            vec![p(&[1]), p(&[1])],
            vec![p(&[1]), p(&[1])],
        ];
        assert_eq!(poly_det(singular), IntPoly::zero());
        assert_eq!(poly_det(vec![]), IntPoly::constant(1));
    }

    #[test]
    fn laurent_display() {
        let trefoil = LaurentPoly::new(-1, vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]);
        assert!(trefoil.is_symmetric());
        assert_eq!(trefoil.to_string(), "t - 1 + t^-1");
        assert_eq!(trefoil.eval_at_one(), BigInt::from(1));
        assert_eq!(LaurentPoly::one().to_string(), "1");
    }

    #[test]
    fn cyclotomic_field_rank() {
        let f = CyclotomicField::new(6);
        let zeta = vec![rat_int(0), rat_int(1)];
        let one = vec![rat_int(1), rat_int(0)];
        // [[1, zeta], [zeta, zeta^2]] has rank 1
        let z2 = f.mul(&zeta, &zeta);
        let m = vec![vec![one.clone(), zeta.clone()], vec![zeta.clone(), z2]];
        assert_eq!(f.rank(m), 1);
        // inverse: zeta * zeta^-1 = 1
        let inv = f.inverse(&zeta);
        assert_eq!(f.mul(&zeta, &inv), one);
    }
}
