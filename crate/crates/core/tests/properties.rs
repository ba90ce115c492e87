//! Randomized property tests for the exact function types, the braid word
//! problem, and the signature machinery.

use clasp4::braid::{braids_equal, BraidWord, NormalForm};
use clasp4::numeric::{rat, rat_int, PLFunction, Rat, StepFunction};
use clasp4::semigroup::torus_upsilon;
use clasp4::torus_sig::{signature_step_function, TorusKnot};
use num::{Integer, One};
use proptest::prelude::*;

fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
    (2i64..=10, 3i64..=13)
        .prop_filter_map("coprime and ordered", |(p, q)| {
            (p < q && p.gcd(&q) == 1).then_some((p, q))
        })
}

fn braid_word(strands: usize) -> impl Strategy<Value = BraidWord> {
    let g = strands as i32 - 1;
    prop::collection::vec((1..=g, prop::bool::ANY), 0..12).prop_map(move |letters| {
        let letters = letters
            .into_iter()
            .map(|(l, neg)| if neg { -l } else { l })
            .collect();
        BraidWord::new(strands, letters).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signature_symmetric_under_t_reflection((p, q) in coprime_pair(), l in 0i64..200) {
        let knot = TorusKnot::new(p, q).unwrap();
        let f = signature_step_function(knot);
        let pq = p * q;
        let l = l % pq;
        let t = (rat(l, pq) + rat(l + 1, pq)) / rat_int(2);
        let mirrored = Rat::one() - &t;
        prop_assert_eq!(f.eval(&t).unwrap(), f.eval(&mirrored).unwrap());
    }

    #[test]
    fn step_function_json_roundtrip((p, q) in coprime_pair(), (p2, q2) in coprime_pair()) {
        let f = signature_step_function(TorusKnot::new(p, q).unwrap())
            .add(&signature_step_function(TorusKnot::new(p2, q2).unwrap()).neg());
        let back = StepFunction::from_json(&f.to_json()).unwrap();
        prop_assert_eq!(f, back);
    }

    #[test]
    fn step_addition_commutes((p, q) in coprime_pair(), (p2, q2) in coprime_pair()) {
        let a = signature_step_function(TorusKnot::new(p, q).unwrap());
        let b = signature_step_function(TorusKnot::new(p2, q2).unwrap());
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&a.neg()), StepFunction::zero());
    }

    #[test]
    fn upsilon_json_roundtrip(i in 1i64..=10) {
        let u = torus_upsilon(TorusKnot::new(2, 2 * i + 1).unwrap()).unwrap();
        let back = PLFunction::from_json(&u.to_json()).unwrap();
        prop_assert_eq!(u, back);
    }

    #[test]
    fn normal_form_is_canonical(w in braid_word(4)) {
        // re-expanding the normal form and renormalizing is a fixpoint
        let nf = w.normal_form();
        let again = nf.to_word().normal_form();
        prop_assert_eq!(&nf, &again);
        prop_assert!(braids_equal(&w, &nf.to_word()).unwrap());
    }

    #[test]
    fn word_equivalence_is_a_congruence(w in braid_word(4), c in braid_word(4)) {
        // w ~ free_reduce(w), and conjugation by c preserves inequality with w
        prop_assert!(braids_equal(&w, &w.free_reduce()).unwrap());
        let conj = c.concat(&w).unwrap().concat(&c.inverse()).unwrap();
        let nf_conj = NormalForm::of(&conj);
        let nf_back = NormalForm::of(
            &c.inverse().concat(&conj).unwrap().concat(&c).unwrap(),
        );
        prop_assert_eq!(nf_back, w.normal_form());
        // exponent sum is a braid invariant
        prop_assert_eq!(conj.exponent_sum(), w.exponent_sum());
        let _ = nf_conj;
    }

    #[test]
    fn inverse_cancels(w in braid_word(3)) {
        let trivial = w.concat(&w.inverse()).unwrap();
        prop_assert!(braids_equal(&trivial, &BraidWord::new(3, vec![]).unwrap()).unwrap());
    }
}
