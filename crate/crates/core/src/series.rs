//! Truncated Laurent series in one variable `u`.
//!
//! A series carries the exponent window it actually knows: coefficients for
//! `min_exp .. trunc_order`, everything from `u^trunc_order` on unknown.
//! Operations only ever report the precision their inputs justify, and
//! reading a coefficient outside the known window is a precision error.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::Field;

/// Truncation order standing in for "known exactly".
pub const EXACT: i64 = i64::MAX / 4;

/// Largest coefficient window an operation will materialize.
const MAX_WIDTH: i64 = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<F> {
    min_exp: i64,
    coeffs: Vec<F>,
    trunc: i64,
}

impl<F: Field> TruncatedSeries<F> {
    /// Series with coefficients for `min_exp, min_exp + 1, ...` known up to
    /// (excluding) `trunc`. Missing coefficients inside the window are zero.
    pub fn new(min_exp: i64, mut coeffs: Vec<F>, trunc: i64) -> Self {
        let width = (trunc - min_exp).max(0) as usize;
        coeffs.truncate(width);
        let mut s = TruncatedSeries {
            min_exp,
            coeffs,
            trunc,
        };
        s.normalize();
        s
    }

    /// A series known to vanish below `u^trunc`.
    pub fn zero(trunc: i64) -> Self {
        TruncatedSeries {
            min_exp: trunc,
            coeffs: Vec::new(),
            trunc,
        }
    }

    pub fn monomial(c: F, exp: i64, trunc: i64) -> Self {
        Self::new(exp, vec![c], trunc)
    }

    pub fn one(trunc: i64) -> Self {
        Self::monomial(F::one(), 0, trunc)
    }

    /// `c_0 + c_1 u + ...` from an exact coefficient list.
    pub fn from_poly(coeffs: Vec<F>, trunc: i64) -> Self {
        Self::new(0, coeffs, trunc)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.min_exp = self.trunc;
            return;
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
    }

    /// Lowest stored exponent; equals the valuation unless the series is
    /// zero to its known order.
    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc
    }

    /// Exponent of the first nonzero coefficient, or `None` when every known
    /// coefficient vanishes.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.min_exp)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> Option<&F> {
        self.coeffs.first()
    }

    pub fn coefficient(&self, k: i64) -> Result<F> {
        if k >= self.trunc {
            return Err(Error::Precision(format!(
                "coefficient of u^{k} requested from a series known below u^{}",
                self.trunc
            )));
        }
        Ok(self.coeff_ref(k).cloned().unwrap_or_else(F::zero))
    }

    fn coeff_ref(&self, k: i64) -> Option<&F> {
        if k < self.min_exp || k >= self.trunc {
            None
        } else {
            self.coeffs.get((k - self.min_exp) as usize)
        }
    }

    /// Coefficient of `u^{-1}`.
    pub fn residue(&self) -> Result<F> {
        self.coefficient(-1)
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// Forgets everything from `u^trunc` on.
    pub fn truncate(&self, trunc: i64) -> Self {
        if trunc >= self.trunc {
            return self.clone();
        }
        Self::new(self.min_exp, self.coeffs.clone(), trunc)
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        if self.is_zero() {
            return other.truncate(trunc);
        }
        if other.is_zero() {
            return self.truncate(trunc);
        }
        let end = |a: &Self| a.min_exp + a.coeffs.len() as i64;
        let lo = self.min_exp.min(other.min_exp).min(trunc);
        let hi = end(self).max(end(other)).min(trunc).max(lo);
        let mut c = vec![F::zero(); (hi - lo) as usize];
        for a in [self, other] {
            for (i, x) in a.coeffs.iter().enumerate() {
                let e = a.min_exp + i as i64;
                if e < trunc {
                    c[(e - lo) as usize].add_assign(x);
                }
            }
        }
        Self::new(lo, c, trunc)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(F::neg).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return Self::zero(self.trunc);
        }
        TruncatedSeries {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| c.mul(k)).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        TruncatedSeries {
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc + k,
        }
    }

    /// Product, known below `min(a.trunc + b.min_exp, b.trunc + a.min_exp)`.
    pub fn mul(&self, other: &Self) -> Self {
        let min_exp = self.min_exp.saturating_add(other.min_exp);
        let trunc = (self.trunc.saturating_add(other.min_exp))
            .min(other.trunc.saturating_add(self.min_exp));
        self.mul_to(other, min_exp, trunc)
    }

    /// Product, additionally truncated at `cap`.
    pub fn mul_capped(&self, other: &Self, cap: i64) -> Self {
        let min_exp = self.min_exp.saturating_add(other.min_exp);
        let trunc = (self.trunc.saturating_add(other.min_exp))
            .min(other.trunc.saturating_add(self.min_exp))
            .min(cap);
        self.mul_to(other, min_exp, trunc)
    }

    fn mul_to(&self, other: &Self, min_exp: i64, trunc: i64) -> Self {
        if trunc <= min_exp || self.is_zero() || other.is_zero() {
            return Self::zero(trunc);
        }
        let full = (self.coeffs.len() + other.coeffs.len()).saturating_sub(1) as i64;
        let width = (trunc - min_exp).min(full) as usize;
        let mut c = vec![F::zero(); width];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= width {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(width - i) {
                c[i + j].add_mul(a, b);
            }
        }
        Self::new(min_exp, c, trunc)
    }

    /// Coefficient of `u^e` in `self * other`, without forming the product.
    pub fn mul_coefficient(&self, other: &Self, e: i64) -> Result<F> {
        let trunc = (self.trunc.saturating_add(other.min_exp))
            .min(other.trunc.saturating_add(self.min_exp));
        if e >= trunc {
            return Err(Error::Precision(format!(
                "coefficient of u^{e} requested from a product known below u^{trunc}"
            )));
        }
        let mut acc = F::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            let j = e - self.min_exp - i as i64 - other.min_exp;
            if j < 0 {
                break;
            }
            if let Some(b) = other.coeffs.get(j as usize) {
                acc.add_mul(a, b);
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse; the leading coefficient must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::SingularSeries("series vanishes to its known order".into()))?;
        let rel = self.trunc - v;
        if rel > MAX_WIDTH {
            return Err(Error::Precision(
                "inverse of an untruncated series; truncate first".into(),
            ));
        }
        let n = rel as usize;
        let c0inv = self.coeffs[0].inv()?;
        let mut out: Vec<F> = Vec::with_capacity(n);
        out.push(c0inv.clone());
        for k in 1..n {
            let mut s = F::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s.add_mul(&self.coeffs[j], &out[k - j]);
            }
            out.push(s.mul(&c0inv).neg());
        }
        Ok(Self::new(-v, out, -v + n as i64))
    }

    /// Integer power (negative powers go through the inverse).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq),
                });
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc.unwrap_or_else(|| Self::one(EXACT)))
    }

    /// `outer(inner(u))`. The inner series must vanish at `u = 0`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        let w = match inner.valuation() {
            Some(w) if w >= 1 => w,
            Some(w) => {
                return Err(Error::Composition(format!(
                    "inner series has valuation {w}, need >= 1"
                )))
            }
            None => {
                return Err(Error::Composition(
                    "inner series vanishes to its known order".into(),
                ))
            }
        };
        let rel = inner.trunc - w;
        let mut trunc = w.saturating_mul(outer.trunc);
        for (e, _) in outer.terms() {
            if e != 0 {
                trunc = trunc.min(w * e + rel);
            }
        }
        let lo = outer.valuation().map(|v| w * v).unwrap_or(trunc).min(trunc);
        let mut acc = Self::new(lo, Vec::new(), trunc);
        let terms: Vec<(i64, F)> = outer.terms().map(|(e, c)| (e, c.clone())).collect();
        if terms.is_empty() {
            return Ok(acc);
        }
        let max_e = terms.iter().map(|(e, _)| *e).max().unwrap();
        let min_e = terms.iter().map(|(e, _)| *e).min().unwrap();
        // Non-negative powers, built up incrementally.
        if max_e >= 0 {
            let mut p = Self::one(trunc);
            let mut e = 0;
            for (te, c) in terms.iter().filter(|(e, _)| *e >= 0) {
                while e < *te {
                    p = p.mul_capped(inner, trunc);
                    e += 1;
                }
                acc = acc.add(&p.scale(c).truncate(trunc));
            }
        }
        if min_e < 0 {
            let inv = inner.inverse()?;
            let mut p = Self::one(EXACT);
            let mut e = 0;
            for (te, c) in terms.iter().rev().filter(|(e, _)| *e < 0) {
                while e > *te {
                    p = p.mul_capped(&inv, trunc);
                    e -= 1;
                }
                acc = acc.add(&p.scale(c).truncate(trunc));
            }
        }
        Ok(acc)
    }

    /// Compositional inverse `b` with `a(b(u)) = u`, via Lagrange inversion:
    /// `[u^n] b = [u^{n-1}] (u / a(u))^n / n`.
    pub fn reversion(&self) -> Result<Self> {
        if self.valuation() != Some(1) {
            return Err(Error::Reversion(format!(
                "need valuation exactly 1, got {:?}",
                self.valuation()
            )));
        }
        let t = self.trunc;
        if t > MAX_WIDTH {
            return Err(Error::Precision("reversion of an untruncated series".into()));
        }
        let phi = self.shift(-1).inverse()?; // u / a(u), a unit
        let mut out = vec![F::zero(); (t - 1).max(0) as usize];
        let mut p = Self::one(t);
        for n in 1..t {
            p = p.mul(&phi);
            let c = p.coefficient(n - 1)?;
            out[(n - 1) as usize] = c.mul(&F::from_int(n).inv()?);
        }
        Ok(Self::new(1, out, t))
    }

    pub fn differentiate(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale_int(self.min_exp + i as i64))
            .collect();
        Self::new(self.min_exp - 1, c, self.trunc - 1)
    }

    /// Termwise primitive with zero constant term.
    pub fn antiderivative(&self) -> Result<Self> {
        if self.trunc > -1 {
            let r = self.residue()?;
            if !r.is_zero() {
                return Err(Error::LogarithmicTerm(r.to_string()));
            }
        }
        let mut c = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            let e = self.min_exp + i as i64;
            if e == -1 {
                c.push(F::zero());
            } else {
                c.push(a.mul(&F::from_int(e + 1).inv()?));
            }
        }
        Ok(Self::new(self.min_exp + 1, c, self.trunc + 1))
    }

    /// `log(1 + a)` for `a` vanishing at the origin.
    pub fn log1p(&self) -> Result<Self> {
        match self.valuation() {
            Some(w) if w >= 1 => {}
            None if self.trunc >= 1 => return Ok(Self::zero(self.trunc)),
            v => {
                return Err(Error::Domain(format!(
                    "log1p needs positive valuation, got {v:?}"
                )))
            }
        }
        let one_plus = self.add(&Self::one(self.trunc));
        let density = self.differentiate().mul(&one_plus.inverse()?);
        density.antiderivative()
    }

    /// `sqrt(1 + h)` for `h` vanishing at the origin, with constant term 1.
    pub fn sqrt1p(&self) -> Result<Self> {
        if self.valuation().is_some_and(|w| w < 1) || (self.is_zero() && self.trunc < 1) {
            return Err(Error::Domain("sqrt1p needs positive valuation".into()));
        }
        let t = self.trunc;
        if t > MAX_WIDTH {
            return Err(Error::Precision("sqrt1p of an untruncated series".into()));
        }
        let n = t.max(0) as usize;
        let h: Vec<F> = (0..n as i64)
            .map(|k| self.coefficient(k))
            .collect::<Result<_>>()?;
        let half = F::from_int(2).inv()?;
        let mut r: Vec<F> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                r.push(F::one());
                continue;
            }
            let mut s = h[k].clone();
            for j in 1..k {
                s = s.sub(&r[j].mul(&r[k - j]));
            }
            r.push(s.mul(&half));
        }
        Ok(Self::new(0, r, t))
    }

    /// Debug view: known coefficients keyed by exponent.
    pub fn to_debug_json(&self) -> SeriesJson {
        SeriesJson {
            min_exp: self.min_exp,
            trunc_order: self.trunc,
            coeffs: self
                .terms()
                .map(|(e, c)| (e.to_string(), c.to_string()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesJson {
    pub min_exp: i64,
    pub trunc_order: i64,
    pub coeffs: BTreeMap<String, String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{q, Rational};

    type S = TruncatedSeries<Rational>;

    fn s(min: i64, cs: &[(i64, i64)], trunc: i64) -> S {
        S::new(min, cs.iter().map(|&(n, d)| q(n, d)).collect(), trunc)
    }

    fn ints(min: i64, cs: &[i64], trunc: i64) -> S {
        S::new(min, cs.iter().map(|&n| q(n, 1)).collect(), trunc)
    }

    #[test]
    fn difference_of_squares() {
        let a = ints(0, &[1, 1], 5);
        let b = ints(0, &[1, -1], 5);
        let p = a.mul(&b);
        assert_eq!(p, ints(0, &[1, 0, -1], 5));
    }

    #[test]
    fn monomial_product() {
        let p = S::monomial(q(1, 1), -2, 10).mul(&S::monomial(q(1, 1), 3, 10));
        assert_eq!(p.valuation(), Some(1));
        assert_eq!(p.coefficient(1).unwrap(), q(1, 1));
        assert_eq!(p.trunc_order(), 8);
    }

    #[test]
    fn geometric_series_times_one_minus_u() {
        let geo = ints(0, &[1; 6], 6);
        let p = geo.mul(&ints(0, &[1, -1], 6));
        assert_eq!(p, ints(0, &[1], 6));
    }

    #[test]
    fn inverses() {
        let inv = ints(0, &[1, -1], 5).inverse().unwrap();
        assert_eq!(inv, ints(0, &[1, 1, 1, 1, 1], 5));
        let inv = S::monomial(q(1, 1), 2, 10).inverse().unwrap();
        assert_eq!(inv.valuation(), Some(-2));
        let inv = ints(0, &[2, 1], 3).inverse().unwrap();
        assert_eq!(inv, s(0, &[(1, 2), (-1, 4), (1, 8)], 3));
        assert!(matches!(S::zero(4).inverse(), Err(Error::SingularSeries(_))));
    }

    #[test]
    fn compositions() {
        // u^2 after -u
        let r = S::compose(&S::monomial(q(1, 1), 2, 10), &ints(1, &[-1], 10)).unwrap();
        assert_eq!(r.coefficient(2).unwrap(), q(1, 1));
        assert_eq!(r.terms().count(), 1);
        // 1/(1-u) after u^2
        let r = S::compose(&ints(0, &[1, 1, 1], 3), &S::monomial(q(1, 1), 2, 50)).unwrap();
        assert_eq!(r, ints(0, &[1, 0, 1, 0, 1], 6));
        // 1/u after u + u^2 (exact inner)
        let r = S::compose(&S::monomial(q(1, 1), -1, 10), &ints(1, &[1, 1], 5)).unwrap();
        assert_eq!(r, ints(-1, &[1, -1, 1, -1], 3));
        assert!(matches!(
            S::compose(&ints(0, &[1], 5), &ints(0, &[1, 1], 5)),
            Err(Error::Composition(_))
        ));
    }

    #[test]
    fn reversions() {
        let id = ints(1, &[1], 8);
        assert_eq!(id.reversion().unwrap(), id);
        let r = ints(1, &[1, 1], 5).reversion().unwrap();
        assert_eq!(r, ints(1, &[1, -1, 2, -5], 5));
        let r = ints(1, &[2], 3).reversion().unwrap();
        assert_eq!(r, s(1, &[(1, 2)], 3));
        assert!(matches!(ints(2, &[1], 5).reversion(), Err(Error::Reversion(_))));
    }

    #[test]
    fn logarithms() {
        let l = ints(1, &[1], 4).log1p().unwrap();
        assert_eq!(l, s(1, &[(1, 1), (-1, 2), (1, 3)], 4));
        let l = ints(1, &[-1], 3).log1p().unwrap();
        assert_eq!(l, s(1, &[(-1, 1), (-1, 2)], 3));
        assert!(matches!(ints(0, &[1], 4).log1p(), Err(Error::Domain(_))));
    }

    #[test]
    fn log1p_inverted_by_exponential() {
        let a = ints(1, &[1, 1], 8);
        let l = a.log1p().unwrap();
        // exp(l) - 1 = sum l^k / k!
        let mut acc = S::zero(8);
        let mut p = S::one(8);
        let mut fact = q(1, 1);
        for k in 1..8 {
            p = p.mul(&l);
            fact = &fact * &q(k, 1);
            acc = acc.add(&p.scale(&fact.recip().unwrap()));
        }
        assert_eq!(acc, a);
    }

    #[test]
    fn calculus() {
        assert_eq!(ints(3, &[1], 10).differentiate(), ints(2, &[3], 9));
        assert_eq!(ints(-1, &[1, 5, 1], 4).residue().unwrap(), q(1, 1));
        let a = ints(-3, &[1, 2, 0, 4, 5], 6);
        assert!(a.differentiate().residue().unwrap().is_zero());
        assert!(matches!(ints(-1, &[1], 5).antiderivative(), Err(Error::LogarithmicTerm(_))));
        let b = ints(0, &[1, 2], 4).antiderivative().unwrap();
        assert_eq!(b.trunc_order(), 5);
        assert_eq!(b, ints(1, &[1, 1], 5));
    }

    #[test]
    fn residue_outside_window_is_a_precision_error() {
        let a = ints(-5, &[1], -2);
        assert!(matches!(a.residue(), Err(Error::Precision(_))));
    }

    #[test]
    fn square_root() {
        let h = ints(1, &[2, 1], 6); // (1+u)^2 - 1
        assert_eq!(h.sqrt1p().unwrap(), ints(0, &[1, 1], 6));
    }

    #[test]
    fn debug_json_has_window_fields() {
        let j = serde_json::to_value(ints(-1, &[1, 0, 3], 4).to_debug_json()).unwrap();
        assert_eq!(j["min_exp"], -1);
        assert_eq!(j["trunc_order"], 4);
        assert_eq!(j["coeffs"]["1"], "3");
    }
}
