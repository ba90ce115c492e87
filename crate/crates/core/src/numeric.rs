//! Exact rational arithmetic and the two piecewise function shapes used
//! throughout: integer-valued step functions on (0,1) and continuous
//! rational polylines on [0,2].

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

/// Arbitrary-precision rational. Always stored reduced with positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum NumericError {
    #[error("evaluation at breakpoint {0}")]
    EvaluationAtBreakpoint(String),
    #[error("{0} is outside the domain {1}")]
    DomainError(String, &'static str),
    #[error("precondition violated: {0}")]
    PreconditionError(String),
    #[error("malformed rational literal `{0}`")]
    ParseError(String),
    #[error("malformed function JSON: {0}")]
    JsonError(String),
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p".
pub fn parse_rat(s: &str) -> Result<Rat, NumericError> {
    let s = s.trim();
    let err = || NumericError::ParseError(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| err())?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// Lossy conversion for plotting and numerics; exact code never uses this.
pub fn rat_to_f64(r: &Rat) -> f64 {
    use num::ToPrimitive;
    r.to_f64().expect("rational magnitude fits in f64")
}

pub fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Integer-valued function on (0,1), constant on the open intervals cut out by
/// the breakpoints. Values at the breakpoints themselves are deliberately not
/// represented; evaluation there is an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    breakpoints: Vec<Rat>,
    values: Vec<i64>,
}

impl StepFunction {
    pub fn zero() -> Self {
        StepFunction { breakpoints: vec![], values: vec![0] }
    }

    /// Builds a step function, merging adjacent intervals with equal values so
    /// the representation is minimal.
    pub fn new(breakpoints: Vec<Rat>, values: Vec<i64>) -> Result<Self, NumericError> {
        if values.len() != breakpoints.len() + 1 {
            return Err(NumericError::PreconditionError(format!(
                "{} breakpoints need {} interval values, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                values.len()
            )));
        }
        for b in &breakpoints {
            if !(b > &Rat::zero() && b < &Rat::one()) {
                return Err(NumericError::DomainError(rat_string(b), "(0,1)"));
            }
        }
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(NumericError::PreconditionError(
                    "breakpoints not strictly increasing".into(),
                ));
            }
        }
        let mut bp = Vec::with_capacity(breakpoints.len());
        let mut vs = vec![values[0]];
        for (b, v) in breakpoints.into_iter().zip(values[1..].iter()) {
            if *v != *vs.last().unwrap() {
                bp.push(b);
                vs.push(*v);
            }
        }
        Ok(StepFunction { breakpoints: bp, values: vs })
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.breakpoints.is_empty() && self.values[0] == 0
    }

    /// The open intervals of constancy with their values, including the two
    /// outer intervals bounded by 0 and 1.
    pub fn intervals(&self) -> Vec<(Rat, Rat, i64)> {
        let mut out = Vec::with_capacity(self.values.len());
        let mut lo = Rat::zero();
        for (b, v) in self.breakpoints.iter().zip(&self.values) {
            out.push((lo.clone(), b.clone(), *v));
            lo = b.clone();
        }
        out.push((lo, Rat::one(), *self.values.last().unwrap()));
        out
    }

    pub fn eval(&self, t: &Rat) -> Result<i64, NumericError> {
        if !(t > &Rat::zero() && t < &Rat::one()) {
            return Err(NumericError::DomainError(rat_string(t), "(0,1)"));
        }
        match self.breakpoints.binary_search(t) {
            Ok(_) => Err(NumericError::EvaluationAtBreakpoint(rat_string(t))),
            Err(i) => Ok(self.values[i]),
        }
    }

    /// Constant value of the interval containing `t`; unlike `eval`, a
    /// breakpoint of `self` is not rejected here (used internally where the
    /// caller guarantees `t` avoids the relevant breakpoints).
    fn value_left_open(&self, t: &Rat) -> i64 {
        match self.breakpoints.binary_search(t) {
            Ok(i) => self.values[i + 1],
            Err(i) => self.values[i],
        }
    }

    pub fn add(&self, other: &StepFunction) -> StepFunction {
        let mut bp: Vec<Rat> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .cloned()
            .collect();
        bp.sort();
        bp.dedup();
        let mut lo = Rat::zero();
        let mut values = Vec::with_capacity(bp.len() + 1);
        let two = rat_int(2);
        for hi in bp.iter().chain(std::iter::once(&Rat::one())) {
            let mid = (&lo + hi) / &two;
            values.push(self.value_left_open(&mid) + other.value_left_open(&mid));
            lo = hi.clone();
        }
        StepFunction::new(bp, values).expect("sum of valid step functions is valid")
    }

    pub fn neg(&self) -> StepFunction {
        StepFunction {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> StepFunction {
        if k == 0 {
            return StepFunction::zero();
        }
        StepFunction {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| k * v).collect(),
        }
    }

    /// (max, min) of the interval values.
    pub fn extrema_interior(&self) -> (i64, i64) {
        let max = *self.values.iter().max().unwrap();
        let min = *self.values.iter().min().unwrap();
        (max, min)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "breakpoints": self.breakpoints.iter().map(rat_string).collect::<Vec<_>>(),
            "values": self.values,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, NumericError> {
        let obj = v
            .as_object()
            .ok_or_else(|| NumericError::JsonError("expected object".into()))?;
        let bps = obj
            .get("breakpoints")
            .and_then(Value::as_array)
            .ok_or_else(|| NumericError::JsonError("missing breakpoints".into()))?;
        let vals = obj
            .get("values")
            .and_then(Value::as_array)
            .ok_or_else(|| NumericError::JsonError("missing values".into()))?;
        let breakpoints = bps
            .iter()
            .map(|b| {
                b.as_str()
                    .ok_or_else(|| NumericError::JsonError("breakpoint not a string".into()))
                    .and_then(parse_rat)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let values = vals
            .iter()
            .map(|x| {
                x.as_i64()
                    .ok_or_else(|| NumericError::JsonError("value not an integer".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        StepFunction::new(breakpoints, values)
    }
}

/// Continuous piecewise-linear function on [0,2] through the listed vertices,
/// with value 0 at t = 0. Collinear interior vertices are removed on
/// construction, so equality of representations is equality of functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLFunction {
    breakpoints: Vec<Rat>,
    values: Vec<Rat>,
}

impl PLFunction {
    pub fn zero() -> Self {
        PLFunction {
            breakpoints: vec![Rat::zero(), rat_int(2)],
            values: vec![Rat::zero(), Rat::zero()],
        }
    }

    pub fn new(breakpoints: Vec<Rat>, values: Vec<Rat>) -> Result<Self, NumericError> {
        if breakpoints.len() < 2 || breakpoints.len() != values.len() {
            return Err(NumericError::PreconditionError(
                "need matching breakpoint/value lists with at least the endpoints".into(),
            ));
        }
        if !breakpoints[0].is_zero() || breakpoints.last().unwrap() != &rat_int(2) {
            return Err(NumericError::PreconditionError(
                "breakpoints must start at 0 and end at 2".into(),
            ));
        }
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(NumericError::PreconditionError(
                    "breakpoints not strictly increasing".into(),
                ));
            }
        }
        if !values[0].is_zero() {
            return Err(NumericError::PreconditionError("value at 0 must be 0".into()));
        }
        // drop collinear interior vertices
        let mut bp = vec![breakpoints[0].clone()];
        let mut vs = vec![values[0].clone()];
        for i in 1..breakpoints.len() - 1 {
            let prev_slope =
                (&values[i] - vs.last().unwrap()) / (&breakpoints[i] - bp.last().unwrap());
            let next_slope =
                (&values[i + 1] - &values[i]) / (&breakpoints[i + 1] - &breakpoints[i]);
            if prev_slope != next_slope {
                bp.push(breakpoints[i].clone());
                vs.push(values[i].clone());
            }
        }
        bp.push(breakpoints.last().unwrap().clone());
        vs.push(values.last().unwrap().clone());
        Ok(PLFunction { breakpoints: bp, values: vs })
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn eval(&self, t: &Rat) -> Result<Rat, NumericError> {
        if t < &Rat::zero() || t > &rat_int(2) {
            return Err(NumericError::DomainError(rat_string(t), "[0,2]"));
        }
        match self.breakpoints.binary_search(t) {
            Ok(i) => Ok(self.values[i].clone()),
            Err(i) => {
                let (b0, b1) = (&self.breakpoints[i - 1], &self.breakpoints[i]);
                let (v0, v1) = (&self.values[i - 1], &self.values[i]);
                Ok(v0 + (v1 - v0) * (t - b0) / (b1 - b0))
            }
        }
    }

    pub fn add(&self, other: &PLFunction) -> PLFunction {
        let mut bp: Vec<Rat> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .cloned()
            .collect();
        bp.sort();
        bp.dedup();
        let values = bp
            .iter()
            .map(|b| self.eval(b).unwrap() + other.eval(b).unwrap())
            .collect();
        PLFunction::new(bp, values).expect("sum of valid polylines is valid")
    }

    pub fn neg(&self) -> PLFunction {
        PLFunction {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> PLFunction {
        if k == 0 {
            return PLFunction::zero();
        }
        let k = rat_int(k);
        PLFunction {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v * &k).collect(),
        }
    }

    /// Exact max over t in (0,1] of u(t)/t. Since u(0) = 0 and u is a
    /// polyline, the maximum is attained at a breakpoint in (0,1] or at t = 1
    /// (the ratio is monotone on each linear piece, and constant on the first).
    pub fn sup_ratio(&self) -> Result<Rat, NumericError> {
        if !self.values[0].is_zero() {
            return Err(NumericError::PreconditionError("u(0) must be 0".into()));
        }
        let one = Rat::one();
        let mut best = self.eval(&one).unwrap();
        for (b, v) in self.breakpoints.iter().zip(&self.values).skip(1) {
            if b <= &one {
                let ratio = v / b;
                if ratio > best {
                    best = ratio;
                }
            }
        }
        Ok(best)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "breakpoints": self.breakpoints.iter().map(rat_string).collect::<Vec<_>>(),
            "values": self.values.iter().map(rat_string).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, NumericError> {
        let obj = v
            .as_object()
            .ok_or_else(|| NumericError::JsonError("expected object".into()))?;
        let read = |key: &str| -> Result<Vec<Rat>, NumericError> {
            obj.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| NumericError::JsonError(format!("missing {key}")))?
                .iter()
                .map(|b| {
                    b.as_str()
                        .ok_or_else(|| NumericError::JsonError(format!("{key} entry not a string")))
                        .and_then(parse_rat)
                })
                .collect()
        };
        PLFunction::new(read("breakpoints")?, read("values")?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(bps: &[(i64, i64)], vals: &[i64]) -> StepFunction {
        StepFunction::new(bps.iter().map(|&(n, d)| rat(n, d)).collect(), vals.to_vec()).unwrap()
    }

    #[test]
    fn zero_eval() {
        assert_eq!(StepFunction::zero().eval(&rat(1, 3)).unwrap(), 0);
    }

    #[test]
    fn trefoil_shape_eval() {
        // sigma(T_{2,3}): -2 on (1/6,5/6), 0 elsewhere
        let f = sf(&[(1, 6), (5, 6)], &[0, -2, 0]);
        assert_eq!(f.eval(&rat(1, 2)).unwrap(), -2);
        assert_eq!(
            f.eval(&rat(1, 6)),
            Err(NumericError::EvaluationAtBreakpoint("1/6".into()))
        );
        assert!(matches!(f.eval(&rat_int(1)), Err(NumericError::DomainError(..))));
    }

    #[test]
    fn add_cancels_and_doubles() {
        let f = sf(&[(1, 6), (5, 6)], &[0, -2, 0]);
        assert!(f.add(&f.neg()).is_zero());
        let d = f.add(&f);
        assert_eq!(d, sf(&[(1, 6), (5, 6)], &[0, -4, 0]));
        assert_eq!(f.neg().neg(), f);
        assert!(StepFunction::zero().neg().is_zero());
    }

    #[test]
    fn minimality_merges_equal_adjacent() {
        let f = sf(&[(1, 4), (1, 2)], &[1, 1, 3]);
        assert_eq!(f.breakpoints(), &[rat(1, 2)]);
        assert_eq!(f.values(), &[1, 3]);
    }

    #[test]
    fn extrema() {
        assert_eq!(StepFunction::zero().extrema_interior(), (0, 0));
        let f = sf(&[(1, 6), (5, 6)], &[0, -2, 0]);
        assert_eq!(f.extrema_interior(), (0, -2));
    }

    #[test]
    fn step_json_roundtrip() {
        let f = sf(&[(1, 6), (5, 6)], &[0, -2, 0]);
        assert_eq!(StepFunction::from_json(&f.to_json()).unwrap(), f);
    }

    fn upsilon_k2() -> PLFunction {
        // -t on [0,1/2], -2+3t on [1/2,1], symmetric tail back to 0 at 2
        PLFunction::new(
            vec![rat_int(0), rat(1, 2), rat_int(1), rat(3, 2), rat_int(2)],
            vec![rat_int(0), rat(-1, 2), rat_int(1), rat(-1, 2), rat_int(0)],
        )
        .unwrap()
    }

    #[test]
    fn pl_eval_exact() {
        let u = upsilon_k2();
        assert_eq!(u.eval(&rat_int(1)).unwrap(), rat_int(1));
        assert_eq!(u.eval(&rat(1, 2)).unwrap(), rat(-1, 2));
        assert_eq!(u.eval(&rat(1, 4)).unwrap(), rat(-1, 4));
        assert!(matches!(
            u.eval(&rat_int(3)),
            Err(NumericError::DomainError(..))
        ));
    }

    #[test]
    fn pl_add_neg_zero() {
        let u = upsilon_k2();
        assert_eq!(u.add(&u.neg()), PLFunction::zero());
        assert_eq!(u.scale(2), u.add(&u));
    }

    #[test]
    fn pl_sup_ratio() {
        let u = upsilon_k2();
        assert_eq!(u.sup_ratio().unwrap(), rat_int(1));
        assert_eq!(u.neg().sup_ratio().unwrap(), rat_int(1));
        assert_eq!(PLFunction::zero().sup_ratio().unwrap(), rat_int(0));
    }

    #[test]
    fn pl_json_roundtrip() {
        let u = upsilon_k2();
        assert_eq!(PLFunction::from_json(&u.to_json()).unwrap(), u);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-7").unwrap(), rat_int(-7));
        assert_eq!(rat_string(&rat(-1, 2)), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
