use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::IntPoly;
use super::ratfunc::RatFunc;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Coefficient field for series and correlators.
///
/// Implemented by [`Rational`] (fixed framing) and [`RatFunc`] (symbolic
/// framing). Every computation is monomorphized on one of them, so a single
/// computation can never mix framing modes.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;

    /// The framing parameter `f` as an element of this field.
    fn framing_value(framing: &Framing) -> Result<Self>;

    fn to_scalar(&self) -> FieldScalar;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n))
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        self.add_assign(&a.mul(b));
    }

    fn scale_int(&self, k: i64) -> Self {
        self.mul(&Self::from_int(k))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        self.recip()
    }
    fn framing_value(framing: &Framing) -> Result<Self> {
        match framing {
            Framing::Fixed(v) => Ok(v.clone()),
            Framing::Symbolic => Err(Error::ModeMismatch),
        }
    }
    fn to_scalar(&self) -> FieldScalar {
        FieldScalar::Rational(self.clone())
    }
    fn add_assign(&mut self, other: &Self) {
        *self = &*self + other;
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        Rational::add_mul(self, a, b);
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn from_rational(r: &Rational) -> Self {
        RatFunc::from_rational(r)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        RatFunc::inv(self)
    }
    fn framing_value(framing: &Framing) -> Result<Self> {
        match framing {
            Framing::Symbolic => Ok(RatFunc::var()),
            Framing::Fixed(_) => Err(Error::ModeMismatch),
        }
    }
    fn to_scalar(&self) -> FieldScalar {
        FieldScalar::RatFunc(self.clone())
    }
    fn scale_int(&self, k: i64) -> Self {
        RatFunc::scale_int(self, &BigInt::from(k))
    }
}

/// The framing of the mirror curve: kept as the symbol `f`, or fixed to a
/// generic rational value.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Framing {
    Symbolic,
    Fixed(Rational),
}

impl Framing {
    /// A fixed framing; rejects the degenerate values 0 and -1.
    pub fn fixed(value: Rational) -> Result<Self> {
        if value.is_zero() || value == Rational::from_integer(-1) {
            return Err(Error::Genericity(value.to_string()));
        }
        Ok(Framing::Fixed(value))
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Framing::Symbolic)
    }

    pub fn mode(&self) -> &'static str {
        match self {
            Framing::Symbolic => "symbolic",
            Framing::Fixed(_) => "fixed",
        }
    }
}

impl fmt::Display for Framing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Framing::Symbolic => f.write_str("symbolic"),
            Framing::Fixed(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for Framing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "symbolic" {
            return Ok(Framing::Symbolic);
        }
        Framing::fixed(s.parse()?)
    }
}

impl Serialize for Framing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Framing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact coefficient of either framing mode.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldScalar {
    Rational(Rational),
    RatFunc(RatFunc),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldScalar {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_zero(),
            FieldScalar::RatFunc(r) => r.is_zero(),
        }
    }

    pub fn mode(&self) -> &'static str {
        match self {
            FieldScalar::Rational(_) => "fixed",
            FieldScalar::RatFunc(_) => "symbolic",
        }
    }

    /// The rational value when the scalar does not depend on `f`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self {
            FieldScalar::Rational(r) => Some(r.clone()),
            FieldScalar::RatFunc(r) => r.to_rational(),
        }
    }

    /// True when the scalar is a polynomial in `f` (always for rationals).
    pub fn is_polynomial(&self) -> bool {
        match self {
            FieldScalar::Rational(_) => true,
            FieldScalar::RatFunc(r) => r.is_polynomial(),
        }
    }

    /// Substitutes a fixed framing `f0` into a symbolic scalar. Fixed-mode
    /// scalars are returned unchanged.
    pub fn evaluate_at_framing(&self, f0: &Rational) -> Result<Rational> {
        if f0.is_zero() || *f0 == Rational::from_integer(-1) {
            return Err(Error::Evaluation(f0.to_string()));
        }
        match self {
            FieldScalar::Rational(r) => Ok(r.clone()),
            FieldScalar::RatFunc(r) => r.evaluate(f0),
        }
    }

    /// Image under the framing reflection `f -> -1 - f`.
    pub fn reflect_framing(&self) -> Result<FieldScalar> {
        match self {
            FieldScalar::Rational(r) => Ok(FieldScalar::Rational(r.clone())),
            FieldScalar::RatFunc(r) => Ok(FieldScalar::RatFunc(
                r.substitute(&IntPoly::from_i64s(&[-1, -1]))?,
            )),
        }
    }

    pub fn parse_mode(s: &str, framing: &Framing) -> Result<FieldScalar> {
        match framing {
            Framing::Symbolic => Ok(FieldScalar::RatFunc(s.parse()?)),
            Framing::Fixed(_) => Ok(FieldScalar::Rational(s.parse()?)),
        }
    }
}

/// Exact arithmetic on scalars of the same framing mode.
pub fn field_arith(a: &FieldScalar, b: &FieldScalar, op: ArithOp) -> Result<FieldScalar> {
    fn apply<F: Field>(a: &F, b: &F, op: ArithOp) -> Result<F> {
        Ok(match op {
            ArithOp::Add => a.add(b),
            ArithOp::Sub => a.sub(b),
            ArithOp::Mul => a.mul(b),
            ArithOp::Div => a.div(b)?,
        })
    }
    match (a, b) {
        (FieldScalar::Rational(x), FieldScalar::Rational(y)) => {
            Ok(FieldScalar::Rational(apply(x, y, op)?))
        }
        (FieldScalar::RatFunc(x), FieldScalar::RatFunc(y)) => {
            Ok(FieldScalar::RatFunc(apply(x, y, op)?))
        }
        _ => Err(Error::ModeMismatch),
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => write!(f, "{r}"),
            FieldScalar::RatFunc(r) => write!(f, "{r}"),
        }
    }
}

impl From<Rational> for FieldScalar {
    fn from(r: Rational) -> Self {
        FieldScalar::Rational(r)
    }
}

impl From<RatFunc> for FieldScalar {
    fn from(r: RatFunc) -> Self {
        FieldScalar::RatFunc(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    fn sym(s: &str) -> FieldScalar {
        FieldScalar::RatFunc(s.parse().unwrap())
    }

    #[test]
    fn rational_addition() {
        let r = field_arith(&q(1, 2).into(), &q(1, 3).into(), ArithOp::Add).unwrap();
        assert_eq!(r, q(5, 6).into());
    }

    #[test]
    fn inverse_pair() {
        let r = field_arith(&sym("f/(f+1)"), &sym("(f+1)/f"), ArithOp::Mul).unwrap();
        assert_eq!(r, sym("1"));
        assert_eq!(r.as_constant(), Some(q(1, 1)));
    }

    #[test]
    fn quotient_normalizes() {
        let r = field_arith(&sym("f^2-1"), &sym("f-1"), ArithOp::Div).unwrap();
        assert_eq!(r, sym("f+1"));
    }

    #[test]
    fn errors() {
        assert_eq!(
            field_arith(&q(1, 2).into(), &sym("f"), ArithOp::Add),
            Err(Error::ModeMismatch)
        );
        assert!(matches!(
            field_arith(&sym("f"), &sym("0"), ArithOp::Div),
            Err(Error::Arithmetic(_))
        ));
    }

    #[test]
    fn framing_evaluation() {
        assert_eq!(sym("f^2+f").evaluate_at_framing(&q(1, 1)).unwrap(), q(2, 1));
        assert!(sym("1/(f+1)").evaluate_at_framing(&q(-1, 1)).is_err());
        assert_eq!(sym("(f^2+f+1)/24").evaluate_at_framing(&q(-1, 2)).unwrap(), q(1, 32));
    }

    #[test]
    fn framing_parse_and_genericity() {
        assert_eq!("symbolic".parse::<Framing>().unwrap(), Framing::Symbolic);
        assert_eq!("-1/2".parse::<Framing>().unwrap(), Framing::Fixed(q(-1, 2)));
        assert!(matches!("0".parse::<Framing>(), Err(Error::Genericity(_))));
        assert!(matches!("-1".parse::<Framing>(), Err(Error::Genericity(_))));
    }

    #[test]
    fn reflection() {
        let s = sym("f^2+f+1");
        assert_eq!(s.reflect_framing().unwrap(), s);
        assert_eq!(sym("f").reflect_framing().unwrap(), sym("-f-1"));
    }
}
