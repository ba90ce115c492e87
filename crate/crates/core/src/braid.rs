//! Braid words and the word problem in B_n via the Garside left-canonical
//! normal form, plus crossing changes and closure bookkeeping.
//!
//! Text format: lowercase letters are positive generators (a = sigma_1),
//! uppercase letters their inverses.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum BraidError {
    #[error("unexpected character `{ch}` at position {pos}")]
    SyntaxError { ch: char, pos: usize },
    #[error("generator sigma_{0} does not exist in B_{1}")]
    RangeError(usize, usize),
    #[error("index {0} out of range 1..={1}")]
    IndexError(usize, usize),
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
}

/// A word in the braid group B_n: letters are nonzero integers g with
/// 1 <= |g| < n, sign = crossing sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        assert!(strands >= 2);
        for &g in &letters {
            let a = g.unsigned_abs() as usize;
            if g == 0 || a >= strands {
                return Err(BraidError::RangeError(a, strands));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn parse(text: &str, strands: usize) -> Result<Self, BraidError> {
        let mut letters = Vec::with_capacity(text.len());
        for (pos, ch) in text.chars().enumerate() {
            let g = match ch {
                'a'..='z' => (ch as i32) - ('a' as i32) + 1,
                'A'..='Z' => -((ch as i32) - ('A' as i32) + 1),
                c if c.is_whitespace() => continue,
                _ => return Err(BraidError::SyntaxError { ch, pos }),
            };
            if g.unsigned_abs() as usize >= strands {
                return Err(BraidError::RangeError(g.unsigned_abs() as usize, strands));
            }
            letters.push(g);
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|g| -g).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Iteratively cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            if stack.last() == Some(&-g) {
                stack.pop();
            } else {
                stack.push(g);
            }
        }
        BraidWord { strands: self.strands, letters: stack }
    }

    /// Replaces the letter at 1-based `index` by its inverse, then freely
    /// reduces.
    pub fn crossing_change(&self, index: usize) -> Result<BraidWord, BraidError> {
        if index == 0 || index > self.letters.len() {
            return Err(BraidError::IndexError(index, self.letters.len()));
        }
        let mut letters = self.letters.clone();
        letters[index - 1] = -letters[index - 1];
        Ok(BraidWord { strands: self.strands, letters }.free_reduce())
    }

    /// Underlying permutation of the closure: entry i is the endpoint of the
    /// strand starting at position i (0-based).
    pub fn closure_permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        // perm currently maps ending positions back; invert the tracking:
        // we tracked positions forward, so perm[i] is where the strand at
        // slot i ends after applying all swaps to the slot contents.
        let mut result = vec![0; self.strands];
        for (start, &end) in perm.iter().enumerate() {
            result[end] = start;
        }
        result
    }

    /// True iff the closure is a knot: the permutation is a single cycle.
    pub fn is_knot_closure(&self) -> bool {
        let perm = self.closure_permutation();
        let mut seen = 1;
        let mut at = perm[0];
        while at != 0 {
            at = perm[at];
            seen += 1;
        }
        seen == self.strands
    }

    /// Number of closure components.
    pub fn closure_components(&self) -> usize {
        let perm = self.closure_permutation();
        let mut visited = vec![false; self.strands];
        let mut count = 0;
        for start in 0..self.strands {
            if !visited[start] {
                count += 1;
                let mut at = start;
                while !visited[at] {
                    visited[at] = true;
                    at = perm[at];
                }
            }
        }
        count
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&g| i64::from(g.signum())).sum()
    }

    pub fn normal_form(&self) -> NormalForm {
        NormalForm::of(self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &g in &self.letters {
            let a = (g.unsigned_abs() - 1) as u8;
            let ch = if g > 0 { b'a' + a } else { b'A' + a } as char;
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

/// A permutation braid, identified with its underlying permutation. With the
/// convention perm[i] = endpoint of the strand starting at i, the product of
/// braid words v then w has permutation perm_w o perm_v.
type Perm = Vec<usize>;

fn identity(n: usize) -> Perm {
    (0..n).collect()
}

fn transposition(n: usize, i: usize) -> Perm {
    let mut p = identity(n);
    p.swap(i - 1, i);
    p
}

/// Half-twist permutation i -> n-1-i (0-based).
fn half_twist(n: usize) -> Perm {
    (0..n).rev().collect()
}

fn compose(f: &Perm, g: &Perm) -> Perm {
    g.iter().map(|&x| f[x]).collect()
}

fn invert(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Conjugation by the half-twist: tau(p) = delta o p o delta.
fn tau(p: &Perm) -> Perm {
    let n = p.len();
    (0..n).map(|i| n - 1 - p[n - 1 - i]).collect()
}

/// Generator i is in the starting set iff some reduced word begins with
/// sigma_i.
fn starting_set_contains(p: &Perm, i: usize) -> bool {
    p[i - 1] > p[i]
}

/// Generator i is in the finishing set iff some reduced word ends with
/// sigma_i.
fn finishing_set_contains(inv: &Perm, i: usize) -> bool {
    inv[i - 1] > inv[i]
}

/// A reduced word for a permutation braid: repeatedly emit the smallest
/// starting generator.
fn reduced_word(p: &Perm) -> Vec<i32> {
    let mut p = p.clone();
    let n = p.len();
    let mut out = Vec::new();
    loop {
        let mut found = None;
        for i in 1..n {
            if starting_set_contains(&p, i) {
                found = Some(i);
                break;
            }
        }
        match found {
            Some(i) => {
                out.push(i as i32);
                // strip sigma_i from the front: p := p o s_i
                p.swap(i - 1, i);
            }
            None => return out,
        }
    }
}

/// Garside left-canonical normal form: Delta^inf F_1 ... F_k with the F_j
/// left-weighted permutation braids, none the identity or Delta.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    strands: usize,
    infimum: i64,
    factors: Vec<Perm>,
}

impl NormalForm {
    pub fn of(w: &BraidWord) -> NormalForm {
        let n = w.strands;
        let delta = half_twist(n);
        let mut infimum = 0i64;
        let mut factors: Vec<Perm> = Vec::new();
        for &g in &w.letters {
            let i = g.unsigned_abs() as usize;
            if g > 0 {
                factors.push(transposition(n, i));
            } else {
                // sigma_i^{-1} = Delta^{-1} (Delta sigma_i^{-1}); pushing the
                // Delta^{-1} to the front conjugates the earlier factors
                infimum -= 1;
                for f in factors.iter_mut() {
                    *f = tau(f);
                }
                factors.push(compose(&transposition(n, i), &delta));
            }
        }
        // left-weight: slide letters leftward between adjacent factors until
        // every pair (A, B) satisfies S(B) subset of F(A)
        loop {
            let mut changed = false;
            let mut k = 1;
            while k < factors.len() {
                let (left, right) = factors.split_at_mut(k);
                let a = &mut left[k - 1];
                let b = &mut right[0];
                let mut a_inv = invert(a);
                loop {
                    let mut moved = false;
                    for i in 1..n {
                        if starting_set_contains(b, i) && !finishing_set_contains(&a_inv, i) {
                            // append sigma_i to A, strip it from the front of B
                            for v in a.iter_mut() {
                                if *v == i - 1 {
                                    *v = i;
                                } else if *v == i {
                                    *v = i - 1;
                                }
                            }
                            a_inv.swap(i - 1, i);
                            b.swap(i - 1, i);
                            moved = true;
                            changed = true;
                        }
                    }
                    if !moved {
                        break;
                    }
                }
                k += 1;
            }
            factors.retain(|f| f.iter().enumerate().any(|(i, &x)| i != x));
            if !changed {
                break;
            }
        }
        // absorb leading half-twists into the infimum
        let mut start = 0;
        while start < factors.len() && factors[start] == delta {
            infimum += 1;
            start += 1;
        }
        factors.drain(..start);
        NormalForm { strands: n, infimum, factors }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn infimum(&self) -> i64 {
        self.infimum
    }

    /// Canonical length: number of permutation-braid factors.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    /// Re-expands the normal form into a braid word Delta^inf F_1 ... F_k.
    pub fn to_word(&self) -> BraidWord {
        let n = self.strands;
        let delta_word = reduced_word(&half_twist(n));
        let mut letters: Vec<i32> = Vec::new();
        if self.infimum >= 0 {
            for _ in 0..self.infimum {
                letters.extend_from_slice(&delta_word);
            }
        } else {
            for _ in 0..-self.infimum {
                letters.extend(delta_word.iter().rev().map(|g| -g));
            }
        }
        for f in &self.factors {
            letters.extend(reduced_word(f));
        }
        BraidWord { strands: n, letters }
    }

    /// Permutation-braid factors rendered as reduced words, for display.
    pub fn factor_words(&self) -> Vec<String> {
        self.factors
            .iter()
            .map(|f| {
                BraidWord { strands: self.strands, letters: reduced_word(f) }.to_string()
            })
            .collect()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.infimum)?;
        for w in self.factor_words() {
            write!(f, " . {w}")?;
        }
        Ok(())
    }
}

/// Word problem: two braid words represent the same element of B_n iff their
/// left-canonical normal forms coincide.
pub fn braids_equal(w1: &BraidWord, w2: &BraidWord) -> Result<bool, BraidError> {
    if w1.strands != w2.strands {
        return Err(BraidError::StrandMismatch(w1.strands, w2.strands));
    }
    Ok(w1.normal_form() == w2.normal_form())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(bw("abcabcabcabcabc", 4).len(), 15);
        assert_eq!(bw("aA", 2).letters(), &[1, -1]);
        assert!(matches!(
            BraidWord::parse("d", 4),
            Err(BraidError::RangeError(4, 4))
        ));
        assert!(matches!(
            BraidWord::parse("a!", 3),
            Err(BraidError::SyntaxError { ch: '!', pos: 1 })
        ));
        assert_eq!(bw("aBc", 4).to_string(), "aBc");
    }

    #[test]
    fn free_reduction() {
        assert!(bw("aA", 2).free_reduce().is_empty());
        assert!(bw("abBA", 3).free_reduce().is_empty());
        assert_eq!(
            bw("abcabcCbabcbcbc", 4).free_reduce(),
            bw("abcabbabcbcbc", 4)
        );
    }

    #[test]
    fn crossing_change_chain() {
        assert_eq!(
            bw("abcabccbabcbcbc", 4).crossing_change(7).unwrap(),
            bw("abcabbabcbcbc", 4)
        );
        assert_eq!(
            bw("abaabaabababab", 3).crossing_change(4).unwrap(),
            bw("abbaabababab", 3)
        );
        let w = bw("a", 2);
        let once = w.crossing_change(1).unwrap();
        assert_eq!(once.crossing_change(1).unwrap(), w);
        assert!(w.crossing_change(2).is_err());
    }

    #[test]
    fn closure_data() {
        let w = bw("abcabcabcabcabc", 4);
        assert!(w.is_knot_closure());
        assert_eq!(w.exponent_sum(), 15);
        let w = bw("ababababababab", 3);
        assert!(w.is_knot_closure());
        assert_eq!(w.exponent_sum(), 14);
        let empty = BraidWord::new(2, vec![]).unwrap();
        assert!(!empty.is_knot_closure());
        assert_eq!(empty.closure_components(), 2);
    }

    #[test]
    fn braid_relation() {
        assert!(braids_equal(&bw("aba", 3), &bw("bab", 3)).unwrap());
        assert!(!braids_equal(&bw("ab", 3), &bw("ba", 3)).unwrap());
        assert!(braids_equal(&bw("ab", 3), &bw("ab", 3)).unwrap());
        assert!(braids_equal(&bw("ac", 4), &bw("ca", 4)).unwrap());
        assert!(braids_equal(&bw("aAbB", 3), &BraidWord::new(3, vec![]).unwrap()).unwrap());
        assert!(braids_equal(&bw("aB", 3), &bw("aB", 3)).unwrap());
        assert!(!braids_equal(&bw("a", 3), &bw("b", 3)).unwrap());
        assert!(braids_equal(&bw("abA", 3), &bw("Bab", 3)).unwrap());
        assert!(matches!(
            braids_equal(&bw("a", 2), &bw("a", 3)),
            Err(BraidError::StrandMismatch(2, 3))
        ));
    }

    #[test]
    fn isotopy_word_equalities() {
        assert!(braids_equal(&bw("abcabcabcabcabc", 4), &bw("abcabccabcabcbc", 4)).unwrap());
        assert!(braids_equal(&bw("abcabccabcabcbc", 4), &bw("abcabccbabcbcbc", 4)).unwrap());
        assert!(braids_equal(&bw("abaabaabababab", 3), &bw("ababababababab", 3)).unwrap());
    }

    #[test]
    fn normal_form_shape() {
        // Delta in B_3 is aba
        let nf = bw("aba", 3).normal_form();
        assert_eq!(nf.infimum(), 1);
        assert_eq!(nf.canonical_length(), 0);
        let nf = bw("A", 2).normal_form();
        assert_eq!(nf.infimum(), -1);
        assert_eq!(nf.canonical_length(), 0);
        let nf = bw("ab", 3).normal_form();
        assert_eq!(nf.infimum(), 0);
        assert_eq!(nf.canonical_length(), 1);
    }

    #[test]
    fn normal_form_idempotent() {
        for (text, n) in [
            ("abcabcabcabcabc", 4),
            ("abcabccbabcbcbc", 4),
            ("aBaB", 3),
            ("AbAcb", 4),
            ("", 2),
        ] {
            let w = bw(text, n);
            let nf = w.normal_form();
            assert_eq!(nf.to_word().normal_form(), nf, "word {text}");
        }
    }
}
