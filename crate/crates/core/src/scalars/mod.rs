//! Involutive commutative semirings used as scalar domains.
//!
//! Three instances are provided: exact [`QiSqrt2`] for the qubit models,
//! [`BoolScalar`] for relations, and [`ComplexApprox`] for approximate
//! smoke checks.

mod qisqrt2;

use std::fmt;

use serde_json::Value;
use thiserror::Error;

pub use qisqrt2::QiSqrt2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("malformed scalar literal: {0}")]
    Literal(String),
    #[error("scalar {0} has no multiplicative inverse")]
    NotInvertible(String),
    #[error("mixed semirings: {0} and {1}")]
    MixedSemirings(&'static str, &'static str),
    #[error("literal {literal} is not representable in the {semiring} semiring")]
    Unrepresentable { literal: String, semiring: &'static str },
    #[error("bad JSON scalar for {semiring}: {found}")]
    Json { semiring: &'static str, found: String },
}

/// The contract shared by every scalar domain: a commutative semiring
/// with an involution fixing 0 and 1.
pub trait Semiring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Short identifier used in JSON output.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// The dagger on scalars.
    fn involution(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn invert(&self) -> Result<Self, ScalarError>;
    /// Embed a term-language literal.
    fn from_literal(lit: &QiSqrt2) -> Result<Self, ScalarError>;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, ScalarError>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Semiring for QiSqrt2 {
    const NAME: &'static str = "qi-sqrt2";

    fn zero() -> Self {
        QiSqrt2::zero()
    }
    fn one() -> Self {
        QiSqrt2::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn involution(&self) -> Self {
        self.conj()
    }
    fn is_zero(&self) -> bool {
        QiSqrt2::is_zero(self)
    }
    fn invert(&self) -> Result<Self, ScalarError> {
        self.inverse()
    }
    fn from_literal(lit: &QiSqrt2) -> Result<Self, ScalarError> {
        Ok(lit.clone())
    }
    fn to_json(&self) -> Value {
        Value::Array(self.to_component_strings().into_iter().map(Value::String).collect())
    }
    fn from_json(v: &Value) -> Result<Self, ScalarError> {
        let bad = || ScalarError::Json { semiring: Self::NAME, found: v.to_string() };
        let arr = v.as_array().ok_or_else(bad)?;
        let parts: Option<Vec<&str>> = arr.iter().map(Value::as_str).collect();
        QiSqrt2::from_component_strs(&parts.ok_or_else(bad)?)
    }
}

/// Booleans with OR as addition and AND as multiplication.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct BoolScalar(pub bool);

impl fmt::Display for BoolScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Semiring for BoolScalar {
    const NAME: &'static str = "bool";

    fn zero() -> Self {
        BoolScalar(false)
    }
    fn one() -> Self {
        BoolScalar(true)
    }
    fn add(&self, rhs: &Self) -> Self {
        BoolScalar(self.0 || rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        BoolScalar(self.0 && rhs.0)
    }
    fn involution(&self) -> Self {
        *self
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn invert(&self) -> Result<Self, ScalarError> {
        if self.0 {
            Ok(*self)
        } else {
            Err(ScalarError::NotInvertible("0".into()))
        }
    }
    /// Only the literals `0` and `1` name Boolean scalars.
    fn from_literal(lit: &QiSqrt2) -> Result<Self, ScalarError> {
        if lit.is_zero() {
            Ok(BoolScalar(false))
        } else if *lit == QiSqrt2::one() {
            Ok(BoolScalar(true))
        } else {
            Err(ScalarError::Unrepresentable { literal: lit.to_string(), semiring: Self::NAME })
        }
    }
    fn to_json(&self) -> Value {
        Value::from(u8::from(self.0))
    }
    fn from_json(v: &Value) -> Result<Self, ScalarError> {
        match v.as_u64() {
            Some(0) => Ok(BoolScalar(false)),
            Some(1) => Ok(BoolScalar(true)),
            _ => match v.as_bool() {
                Some(b) => Ok(BoolScalar(b)),
                None => Err(ScalarError::Json { semiring: Self::NAME, found: v.to_string() }),
            },
        }
    }
}

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Double precision complex number compared up to a tolerance.
#[derive(Clone, Copy, Debug)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
    pub tol: f64,
}

impl ComplexApprox {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im, tol: DEFAULT_TOLERANCE }
    }
}

impl PartialEq for ComplexApprox {
    fn eq(&self, other: &Self) -> bool {
        let tol = self.tol.max(other.tol);
        (self.re - other.re).abs() <= tol && (self.im - other.im).abs() <= tol
    }
}

impl fmt::Display for ComplexApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im >= 0.0 {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}-{}i", self.re, -self.im)
        }
    }
}

impl Semiring for ComplexApprox {
    const NAME: &'static str = "complex-f64";

    fn zero() -> Self {
        Self::new(0.0, 0.0)
    }
    fn one() -> Self {
        Self::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im, tol: self.tol.max(rhs.tol) }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Self {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
            tol: self.tol.max(rhs.tol),
        }
    }
    fn involution(&self) -> Self {
        Self { im: -self.im, ..*self }
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn invert(&self) -> Result<Self, ScalarError> {
        let n = self.re * self.re + self.im * self.im;
        if n <= self.tol * self.tol {
            return Err(ScalarError::NotInvertible(self.to_string()));
        }
        Ok(Self { re: self.re / n, im: -self.im / n, tol: self.tol })
    }
    fn from_literal(lit: &QiSqrt2) -> Result<Self, ScalarError> {
        let (re, im) = lit.to_f64_pair();
        Ok(Self::new(re, im))
    }
    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }
    fn from_json(v: &Value) -> Result<Self, ScalarError> {
        let bad = || ScalarError::Json { semiring: Self::NAME, found: v.to_string() };
        let arr = v.as_array().ok_or_else(bad)?;
        match arr.as_slice() {
            [re, im] => Ok(Self::new(re.as_f64().ok_or_else(bad)?, im.as_f64().ok_or_else(bad)?)),
            _ => Err(bad()),
        }
    }
}

/// Operation selector for [`scalar_combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
}

/// A scalar from any of the three domains, for callers that only learn
/// the semiring at run time.
#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum AnyScalar {
    Exact(QiSqrt2),
    Bool(BoolScalar),
    Approx(ComplexApprox),
}

impl AnyScalar {
    pub fn semiring_name(&self) -> &'static str {
        match self {
            AnyScalar::Exact(_) => QiSqrt2::NAME,
            AnyScalar::Bool(_) => BoolScalar::NAME,
            AnyScalar::Approx(_) => ComplexApprox::NAME,
        }
    }
}

impl fmt::Display for AnyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyScalar::Exact(x) => x.fmt(f),
            AnyScalar::Bool(x) => x.fmt(f),
            AnyScalar::Approx(x) => x.fmt(f),
        }
    }
}

fn combine<S: Semiring>(op: ScalarOp, x: &S, y: &S) -> S {
    match op {
        ScalarOp::Add => x.add(y),
        ScalarOp::Mul => x.mul(y),
    }
}

pub fn scalar_combine(op: ScalarOp, x: &AnyScalar, y: &AnyScalar) -> Result<AnyScalar, ScalarError> {
    match (x, y) {
        (AnyScalar::Exact(a), AnyScalar::Exact(b)) => Ok(AnyScalar::Exact(combine(op, a, b))),
        (AnyScalar::Bool(a), AnyScalar::Bool(b)) => Ok(AnyScalar::Bool(combine(op, a, b))),
        (AnyScalar::Approx(a), AnyScalar::Approx(b)) => Ok(AnyScalar::Approx(combine(op, a, b))),
        _ => Err(ScalarError::MixedSemirings(x.semiring_name(), y.semiring_name())),
    }
}

pub fn scalar_involution(x: &AnyScalar) -> AnyScalar {
    match x {
        AnyScalar::Exact(a) => AnyScalar::Exact(a.involution()),
        AnyScalar::Bool(a) => AnyScalar::Bool(a.involution()),
        AnyScalar::Approx(a) => AnyScalar::Approx(a.involution()),
    }
}

pub fn scalar_invert(x: &AnyScalar) -> Result<AnyScalar, ScalarError> {
    Ok(match x {
        AnyScalar::Exact(a) => AnyScalar::Exact(a.invert()?),
        AnyScalar::Bool(a) => AnyScalar::Bool(a.invert()?),
        AnyScalar::Approx(a) => AnyScalar::Approx(a.invert()?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combine_examples() {
        let s = AnyScalar::Exact(QiSqrt2::half_sqrt2());
        assert_eq!(scalar_combine(ScalarOp::Mul, &s, &s).unwrap(), AnyScalar::Exact(QiSqrt2::ratio(1, 2)));
        let t = AnyScalar::Bool(BoolScalar(true));
        assert_eq!(scalar_combine(ScalarOp::Add, &t, &t).unwrap(), t);
        let p: QiSqrt2 = "1 + i".parse().unwrap();
        let m: QiSqrt2 = "1 - i".parse().unwrap();
        assert_eq!(
            scalar_combine(ScalarOp::Mul, &AnyScalar::Exact(p), &AnyScalar::Exact(m)).unwrap(),
            AnyScalar::Exact(QiSqrt2::integer(2))
        );
    }

    #[test]
    fn mixed_operands_rejected() {
        let s = AnyScalar::Exact(QiSqrt2::one());
        let t = AnyScalar::Bool(BoolScalar(true));
        assert!(matches!(scalar_combine(ScalarOp::Add, &s, &t), Err(ScalarError::MixedSemirings(_, _))));
    }

    #[test]
    fn bool_zero_has_no_inverse() {
        assert!(scalar_invert(&AnyScalar::Bool(BoolScalar(false))).is_err());
        assert_eq!(scalar_invert(&AnyScalar::Bool(BoolScalar(true))).unwrap(), AnyScalar::Bool(BoolScalar(true)));
        assert_eq!(scalar_involution(&AnyScalar::Bool(BoolScalar(true))), AnyScalar::Bool(BoolScalar(true)));
    }

    #[test]
    fn bool_literals() {
        assert_eq!(BoolScalar::from_literal(&QiSqrt2::one()).unwrap(), BoolScalar(true));
        assert!(BoolScalar::from_literal(&QiSqrt2::half_sqrt2()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x: QiSqrt2 = "-1/3 + 2*r2 - 5/7*i*r2".parse().unwrap();
        assert_eq!(QiSqrt2::from_json(&x.to_json()).unwrap(), x);
        assert_eq!(BoolScalar::from_json(&BoolScalar(true).to_json()).unwrap(), BoolScalar(true));
    }

    #[test]
    fn approx_equality_tolerance() {
        let a = ComplexApprox::new(0.5, 0.0);
        let b = ComplexApprox::new(0.5 + 1e-12, -1e-12);
        assert_eq!(a, b);
        assert_ne!(a, ComplexApprox::new(0.5 + 1e-6, 0.0));
    }
}
