//! Exact computation of knot concordance invariants and lower bounds on the
//! 4-ball genus and 4-dimensional clasp number:
//!
//! - Tristram-Levine signature functions of torus knots and their connected
//!   sums, as exact rational step functions ([`torus_sig`], [`numeric`]);
//! - Upsilon invariants of L-space cables and related knots via formal
//!   semigroups ([`semigroup`]);
//! - a small expression language for sums/mirrors/cables of torus knots
//!   ([`expr`]);
//! - the braid word problem via Garside normal forms and crossing-change
//!   bookkeeping ([`braid`]);
//! - an independent numerical Seifert-matrix oracle ([`seifert`], [`poly`]);
//! - the bound engine and consolidated reports ([`bounds`]);
//! - reproduction suites re-deriving the published tables end to end
//!   ([`repro`]).

pub mod bounds;
pub mod braid;
pub mod expr;
pub mod numeric;
pub mod poly;
pub mod repro;
pub mod seifert;
pub mod semigroup;
pub mod torus_sig;

pub use bounds::{
    clasp_bounds_from_signature, clasp_bounds_from_upsilon, ClaspBoundReport, SurfaceData,
};
pub use braid::{braids_equal, BraidWord, NormalForm};
pub use expr::KnotExpr;
pub use numeric::{PLFunction, Rat, StepFunction};
pub use seifert::{seifert_matrix_from_braid, tl_signature_nullity, SeifertMatrix};
pub use torus_sig::TorusKnot;
