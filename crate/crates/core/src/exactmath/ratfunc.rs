use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::poly::IntPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Rational function in the framing variable `f` over the rationals.
///
/// Stored as `num/den` with `num, den` in Z[f], coprime in Z[f] (so the
/// integer contents are coprime too) and `den` with a positive leading
/// coefficient. This form is unique, so equality is structural. Zero is 0/1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    /// The framing variable `f`.
    pub fn var() -> Self {
        RatFunc {
            num: IntPoly::x(),
            den: IntPoly::one(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        RatFunc {
            num: IntPoly::constant(r.numer().clone()),
            den: IntPoly::constant(r.denom().clone()),
        }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc {
            num: p,
            den: IntPoly::one(),
        }
    }

    /// Builds `num/den` and brings it to canonical form.
    pub fn from_parts(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        let g = num.gcd(&den);
        Ok(Self::fix_sign(
            num.div_exact(&g).expect("gcd divides"),
            den.div_exact(&g).expect("gcd divides"),
        ))
    }

    fn fix_sign(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.lc().is_some_and(|l| l.is_negative()) {
            RatFunc {
                num: num.neg(),
                den: den.neg(),
            }
        } else {
            RatFunc { num, den }
        }
    }

    pub fn numer(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not depend on `f`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// True when the denominator is a nonzero integer.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(Rational::new(self.num.constant_term(), self.den.constant_term()).expect("nonzero"))
    }

    /// Numerator and denominator over Q with a monic denominator.
    pub fn monic_parts(&self) -> (Vec<Rational>, Vec<Rational>) {
        let lc = self.den.lc().expect("nonzero denominator").clone();
        let conv = |p: &IntPoly| {
            p.coeffs()
                .iter()
                .map(|c| Rational::new(c.clone(), lc.clone()).expect("nonzero"))
                .collect()
        };
        (conv(&self.num), conv(&self.den))
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return RatFunc::from_poly(num);
            }
            return Self::reduce_against(num, self.den.clone(), &self.den);
        }
        let g = self.den.gcd(&other.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        let den = b1.mul(&other.den);
        Self::reduce_against(num, den, &g)
    }

    /// Reduces `num/den` knowing any common factor divides `probe`.
    fn reduce_against(num: IntPoly, den: IntPoly, probe: &IntPoly) -> RatFunc {
        if num.is_zero() {
            return Self::zero();
        }
        let h = num.gcd(probe);
        if h.is_one() {
            return Self::fix_sign(num, den);
        }
        Self::fix_sign(
            num.div_exact(&h).expect("gcd divides"),
            den.div_exact(&h).expect("gcd divides"),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&other.num));
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), other.den.clone())
        } else {
            (
                self.num.div_exact(&g1).expect("gcd divides"),
                other.den.div_exact(&g1).expect("gcd divides"),
            )
        };
        let (c, b) = if g2.is_one() {
            (other.num.clone(), self.den.clone())
        } else {
            (
                other.num.div_exact(&g2).expect("gcd divides"),
                self.den.div_exact(&g2).expect("gcd divides"),
            )
        };
        Self::fix_sign(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero rational function".into()));
        }
        Ok(Self::fix_sign(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale_int(&self, k: &BigInt) -> RatFunc {
        self.mul(&RatFunc::from_rational(&Rational::from_integer(k.clone())))
    }

    /// Exact substitution `f = f0`.
    pub fn evaluate(&self, f0: &Rational) -> Result<Rational> {
        let d = self.den.eval(f0);
        if d.is_zero() {
            return Err(Error::Evaluation(f0.to_string()));
        }
        self.num.eval(f0).checked_div(&d)
    }

    /// `self(p(f))` for a polynomial substitution `p`.
    pub fn substitute(&self, p: &IntPoly) -> Result<RatFunc> {
        RatFunc::from_parts(self.num.compose(p), self.den.compose(p))
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if let Some(r) = self.to_rational() {
            return r.to_string();
        }
        let mut num = self.num.to_string_in(var);
        if self.den.is_one() {
            return num;
        }
        if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            num = format!("({num})");
        }
        if self.den.is_constant() {
            format!("{num}/{}", self.den.constant_term())
        } else {
            format!("{num}/({})", self.den.to_string_in(var))
        }
    }

    pub fn parse_in(s: &str, var: &str) -> Result<RatFunc> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational function: {s:?}"));
        let strip = |t: &str| -> String {
            let t = t.trim();
            t.strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .unwrap_or(t)
                .to_string()
        };
        // Split at a top-level '/'.
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => split = Some(i),
                _ => {}
            }
        }
        let (n, d) = match split {
            Some(i) => (strip(&s[..i]), strip(&s[i + 1..])),
            None => (strip(s), "1".to_string()),
        };
        let num = IntPoly::parse_in(&n, var).ok_or_else(bad)?;
        let den = IntPoly::parse_in(&d, var).ok_or_else(bad)?;
        RatFunc::from_parts(num, den).map_err(|_| bad())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("f"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RatFunc::parse_in(s, "f")
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}
