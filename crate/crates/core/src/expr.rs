//! Expression AST and parser for the knots under study: torus knots, mirrors,
//! connected sums, cables, and the constant D (the positive untwisted
//! Whitehead double of the right-handed trefoil), with invariant dispatch.
//!
//! Grammar:
//!   expr := term { "#" term }
//!   term := ["-"] atom
//!   atom := "T(" int "," int ")" | "D" | "Cable(" int "," int ";" expr ")" | "(" expr ")"

use crate::numeric::{PLFunction, StepFunction};
use crate::semigroup::{cable_upsilon, torus_upsilon, LSpaceCable, SemigroupError};
use crate::torus_sig::{signature_step_function, TorusKnot, TorusSigError};
use num::Integer;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ExprError {
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("invalid parameters: {0}")]
    ParameterError(String),
    #[error("unsupported node for this invariant: {0}")]
    UnsupportedNode(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

impl From<TorusSigError> for ExprError {
    fn from(e: TorusSigError) -> Self {
        ExprError::ParameterError(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotExpr {
    Torus(TorusKnot),
    Cable { r: i64, s: i64, base: Box<KnotExpr> },
    Mirror(Box<KnotExpr>),
    Sum(Vec<KnotExpr>),
    /// The positive untwisted Whitehead double of the right-handed trefoil.
    D,
}

impl KnotExpr {
    pub fn torus(p: i64, q: i64) -> Result<Self, ExprError> {
        Ok(KnotExpr::Torus(TorusKnot::new(p, q)?))
    }

    pub fn cable(r: i64, s: i64, base: KnotExpr) -> Result<Self, ExprError> {
        if r < 2 || r.gcd(&s) != 1 {
            return Err(ExprError::ParameterError(format!(
                "cable parameters ({r},{s}) must be coprime with r >= 2"
            )));
        }
        Ok(KnotExpr::Cable { r, s, base: Box::new(base) })
    }

    pub fn mirror(e: KnotExpr) -> Self {
        KnotExpr::Mirror(Box::new(e))
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Torus(k) => write!(f, "T({},{})", k.p(), k.q()),
            KnotExpr::Cable { r, s, base } => write!(f, "Cable({r},{s}; {base})"),
            KnotExpr::Mirror(e) => match **e {
                KnotExpr::Sum(_) => write!(f, "-({e})"),
                _ => write!(f, "-{e}"),
            },
            KnotExpr::Sum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " # ")?;
                    }
                    match p {
                        KnotExpr::Sum(_) => write!(f, "({p})")?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
            KnotExpr::D => write!(f, "D"),
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { bytes: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::SyntaxError { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn int(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("integer out of range"))
    }

    fn expr(&mut self) -> Result<KnotExpr, ExprError> {
        let mut parts = vec![self.term()?];
        while self.peek() == Some(b'#') {
            self.pos += 1;
            parts.push(self.term()?);
        }
        if parts.len() == 1 {
            Ok(parts.pop().unwrap())
        } else {
            Ok(KnotExpr::Sum(parts))
        }
    }

    fn term(&mut self) -> Result<KnotExpr, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            Ok(KnotExpr::mirror(self.atom()?))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<KnotExpr, ExprError> {
        match self.peek() {
            Some(b'T') => {
                self.pos += 1;
                self.expect(b'(')?;
                let p = self.int()?;
                self.expect(b',')?;
                let q = self.int()?;
                self.expect(b')')?;
                KnotExpr::torus(p, q)
            }
            Some(b'D') => {
                self.pos += 1;
                Ok(KnotExpr::D)
            }
            Some(b'C') => {
                let kw = b"Cable";
                if self.bytes[self.pos..].starts_with(kw) {
                    self.pos += kw.len();
                } else {
                    return self.err("expected `Cable`");
                }
                self.expect(b'(')?;
                let r = self.int()?;
                self.expect(b',')?;
                let s = self.int()?;
                self.expect(b';')?;
                let base = self.expr()?;
                self.expect(b')')?;
                KnotExpr::cable(r, s, base)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            _ => self.err("expected `T(p,q)`, `D`, `Cable(r,s; ...)` or `(`"),
        }
    }
}

pub fn parse(text: &str) -> Result<KnotExpr, ExprError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Tristram-Levine signature function of an expression without cable nodes.
/// D contributes the zero function: it has trivial Alexander polynomial, so
/// its signature function has no jumps and vanishes near t = 0.
pub fn signature_function(e: &KnotExpr) -> Result<StepFunction, ExprError> {
    match e {
        KnotExpr::Torus(k) => Ok(signature_step_function(*k)),
        KnotExpr::D => Ok(StepFunction::zero()),
        KnotExpr::Mirror(inner) => Ok(signature_function(inner)?.neg()),
        KnotExpr::Sum(parts) => {
            let mut acc = StepFunction::zero();
            for p in parts {
                acc = acc.add(&signature_function(p)?);
            }
            Ok(acc)
        }
        KnotExpr::Cable { .. } => Err(ExprError::UnsupportedNode(format!(
            "signature function of a cable is not computed: {e}"
        ))),
    }
}

/// Upsilon of an expression. D and Cable(2,2i+1; D) are rewritten to their
/// nu+-equivalent representatives T_{2,3} and (T_{2,3})_{2,2i+1} inside this
/// evaluator only; nu+-equivalence preserves Upsilon.
pub fn upsilon(e: &KnotExpr) -> Result<PLFunction, ExprError> {
    match e {
        KnotExpr::Torus(k) => Ok(torus_upsilon(*k)?),
        KnotExpr::D => {
            let trefoil = TorusKnot::new(2, 3).expect("trefoil parameters");
            Ok(torus_upsilon(trefoil)?)
        }
        KnotExpr::Mirror(inner) => Ok(upsilon(inner)?.neg()),
        KnotExpr::Sum(parts) => {
            let mut acc = PLFunction::zero();
            for p in parts {
                acc = acc.add(&upsilon(p)?);
            }
            Ok(acc)
        }
        KnotExpr::Cable { r, s, base } => match **base {
            KnotExpr::Torus(k) => {
                let c = LSpaceCable::new(k, *r, *s)?;
                Ok(cable_upsilon(&c)?)
            }
            KnotExpr::D if *r == 2 && *s >= 5 && *s % 2 == 1 => {
                // Cable(2, 2i+1; D) with i > 1
                let trefoil = TorusKnot::new(2, 3).expect("trefoil parameters");
                let c = LSpaceCable::new(trefoil, 2, *s)?;
                Ok(cable_upsilon(&c)?)
            }
            _ => Err(ExprError::UnsupportedNode(format!(
                "Upsilon of this cable shape is not computed: {e}"
            ))),
        },
    }
}

/// Parses "Cable(2,2i+1; D) # -T(2,2i+1) # -D" for the given i.
pub fn ki_expr(i: i64) -> Result<KnotExpr, ExprError> {
    parse(&format!("Cable(2,{s}; D) # -T(2,{s}) # -D", s = 2 * i + 1))
}
