//! The framed mirror curve of C^3 near its ramification point.
//!
//! Everything is expanded in `u = 1/t`, where `t` is the global coordinate
//! with `y(t) = (1/t + f)/(f + 1)`. The projection `x = y^f (1 - y)` is never
//! formed; only `G = log(x(u)/x(0))` enters, which is a genuine power series
//! for every rational framing.

use crate::error::{Error, Result};
use crate::exactmath::{Field, Framing};
use crate::series::{TruncatedSeries, EXACT};

type S<F> = TruncatedSeries<F>;

/// Polynomial in `t`, coefficients low degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct TPoly<F>(pub Vec<F>);

impl<F: Field> TPoly<F> {
    fn trimmed(mut v: Vec<F>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        TPoly(v)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, j: usize) -> F {
        self.0.get(j).cloned().unwrap_or_else(F::zero)
    }

    pub fn derivative(&self) -> Self {
        Self::trimmed(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale_int(j as i64))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return TPoly(Vec::new());
        }
        let mut out = vec![F::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j].add_mul(a, b);
            }
        }
        Self::trimmed(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::trimmed((0..n).map(|j| self.coeff(j).add(&other.coeff(j))).collect())
    }

    pub fn scale(&self, k: &F) -> Self {
        Self::trimmed(self.0.iter().map(|c| c.mul(k)).collect())
    }

    /// Re-expansion in `u = 1/t`: an exact finite Laurent series.
    pub fn in_u(&self) -> S<F> {
        let d = self.0.len() as i64;
        if d == 0 {
            return S::zero(EXACT);
        }
        let coeffs = self.0.iter().rev().cloned().collect();
        S::new(1 - d, coeffs, EXACT)
    }
}

/// The curve data at a fixed truncation order.
#[derive(Clone, Debug)]
pub struct MirrorCurve<F> {
    framing: Framing,
    f: F,
    order: i64,
    y: S<F>,
    g: S<F>,
    dg: S<F>,
    phi_m1: S<F>,
    omega: S<F>,
    big_phi: S<F>,
    deck: S<F>,
}

impl<F: Field> MirrorCurve<F> {
    pub fn build(framing: &Framing, order: i64) -> Result<Self> {
        if order < 8 {
            return Err(Error::Domain(format!("curve order must be >= 8, got {order}")));
        }
        if let Framing::Fixed(v) = framing {
            Framing::fixed(v.clone())?;
        }
        let f = F::framing_value(framing)?;
        let n = order;
        let one = F::one();
        let fp1 = f.add(&one);
        let y = S::from_poly(vec![f.div(&fp1)?, fp1.inv()?], EXACT);
        let u_over_f = S::monomial(f.inv()?, 1, n);
        // log(y/y0) = log1p(u/f), log((1-y)/(1-y0)) = log1p(-u)
        let log_y = u_over_f.log1p()?;
        let log_1my = S::monomial(one.neg(), 1, n).log1p()?;
        let g = log_y.scale(&f).add(&log_1my);
        let dg = g.differentiate();
        let phi_m1 = log_y.neg();
        let omega = phi_m1.neg().mul(&dg);
        let big_phi = omega.antiderivative()?;
        let deck = deck_from_potential(&g)?;
        Ok(MirrorCurve {
            framing: framing.clone(),
            f,
            order,
            y,
            g,
            dg,
            phi_m1,
            omega,
            big_phi,
            deck,
        })
    }

    pub fn framing(&self) -> &Framing {
        &self.framing
    }

    /// The framing parameter as a field element.
    pub fn f(&self) -> &F {
        &self.f
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// `y(u) = (u + f)/(f + 1)`, exact.
    pub fn y(&self) -> &S<F> {
        &self.y
    }

    /// `G(u) = log(x(u)/x(0))`.
    pub fn potential(&self) -> &S<F> {
        &self.g
    }

    /// Density of `dx/x` against `du`.
    pub fn dlog_x(&self) -> &S<F> {
        &self.dg
    }

    /// `phi_{-1}(u) = -log(1 + u/f)`.
    pub fn phi_minus1(&self) -> &S<F> {
        &self.phi_m1
    }

    /// Density of `omega = log y dx/x` with the constant part of `log y`
    /// dropped.
    pub fn omega(&self) -> &S<F> {
        &self.omega
    }

    /// Primitive of `omega` vanishing at `u = 0`.
    pub fn primitive(&self) -> &S<F> {
        &self.big_phi
    }

    /// The local deck map `s(u) = -u + O(u^2)` with `G(s(u)) = G(u)`.
    pub fn deck(&self) -> &S<F> {
        &self.deck
    }

    /// `phi_b(t)` for `b >= 0`.
    pub fn phi_b(&self, b: usize) -> Result<TPoly<F>> {
        let mut p = TPoly::trimmed(vec![
            self.f.add(&F::one()).inv()?.neg(),
            self.f.add(&F::one()).inv()?,
        ]);
        for _ in 0..b {
            p = self.apply_x_ddx(&p)?;
        }
        Ok(p)
    }

    /// `x d/dx = t(t-1)(ft+1)/(f+1) d/dt` on polynomials in `t`.
    pub fn apply_x_ddx(&self, p: &TPoly<F>) -> Result<TPoly<F>> {
        let fp1 = self.f.add(&F::one());
        let m = TPoly(vec![
            F::zero(),
            F::one().neg(),
            F::one().sub(&self.f),
            self.f.clone(),
        ]);
        Ok(m.mul(&p.derivative()).scale(&fp1.inv()?))
    }

    /// `zeta_b = d phi_b` as an exact density in `u`.
    pub fn zeta_b(&self, b: usize) -> Result<S<F>> {
        Ok(self.phi_b(b)?.in_u().differentiate())
    }

    /// `Res_{u=0} phi_{-1} zeta_{b-1}`, with `zeta_{-1} = d phi_{-1}`.
    pub fn residue_pairing(&self, b: usize) -> Result<F> {
        let z = if b == 0 {
            self.phi_m1.differentiate()
        } else {
            self.zeta_b(b - 1)?
        };
        self.phi_m1.mul(&z).residue()
    }
}

/// Solves `G(s) = G` via `G = c2 u^2 (1 + h)`, `r = u sqrt(1 + h)`,
/// `s = r^{-1}(-r)`.
fn deck_from_potential<F: Field>(g: &S<F>) -> Result<S<F>> {
    let c2 = g.coefficient(2)?;
    if c2.is_zero() || g.valuation() != Some(2) {
        return Err(Error::DegenerateRamification);
    }
    let h = g
        .shift(-2)
        .scale(&c2.inv()?)
        .sub(&S::one(EXACT));
    let r = h.sqrt1p()?.shift(1);
    let r_inv = r.reversion()?;
    S::compose(&r_inv, &r.neg())
}

/// Square-root half of the deck construction, exposed for testing:
/// `r(u)` with `r^2 = G / c2`.
pub fn sheet_coordinate<F: Field>(curve: &MirrorCurve<F>) -> Result<S<F>> {
    let g = curve.potential();
    let c2 = g.coefficient(2)?;
    let h = g.shift(-2).scale(&c2.inv()?).sub(&S::one(EXACT));
    Ok(h.sqrt1p()?.shift(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{q, RatFunc, Rational};

    fn sym() -> MirrorCurve<RatFunc> {
        MirrorCurve::build(&Framing::Symbolic, 14).unwrap()
    }

    fn fixed(p: i64, d: i64) -> MirrorCurve<Rational> {
        MirrorCurve::build(&Framing::fixed(q(p, d)).unwrap(), 16).unwrap()
    }

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn ramification_value_and_potential() {
        let c = sym();
        assert_eq!(c.y().coefficient(0).unwrap(), rf("f/(f+1)"));
        assert_eq!(c.potential().valuation(), Some(2));
        assert_eq!(c.potential().coefficient(2).unwrap(), rf("(-f-1)/(2*f)"));
    }

    #[test]
    fn potential_matches_closed_coefficients() {
        // [u^m] G = ((-1)^{m+1} f^{1-m} - 1)/m, checked at f = 3.
        let c = fixed(3, 1);
        for m in 1..16i64 {
            let sign = if m % 2 == 1 { 1 } else { -1 };
            let term = &q(sign, 1) * &q(3, 1).pow(1 - m as i32).unwrap();
            let expect = &(&term - &q(1, 1)) / &q(m, 1);
            assert_eq!(c.potential().coefficient(m).unwrap(), expect, "m = {m}");
        }
    }

    #[test]
    fn primitive_vanishes_at_origin() {
        let c = sym();
        assert_eq!(c.omega().valuation(), Some(2));
        assert!(c.primitive().valuation().unwrap() >= 2);
        assert!(c.primitive().coefficient(0).unwrap().is_zero());
    }

    #[test]
    fn deck_second_coefficient() {
        let c = sym();
        let s = c.deck();
        assert_eq!(s.coefficient(1).unwrap(), rf("-1"));
        assert_eq!(s.coefficient(2).unwrap(), rf("(2-2*f)/(3*f)"));
        let one = fixed(1, 1);
        assert_eq!(one.deck().coefficient(2).unwrap(), q(0, 1));
        let two = fixed(2, 1);
        assert_eq!(two.deck().coefficient(3).unwrap(), q(-1, 9));
        assert_eq!(two.deck().coefficient(4).unwrap(), q(-2, 27));
    }

    #[test]
    fn deck_is_an_involution_preserving_x() {
        for c in [fixed(1, 1), fixed(2, 1), fixed(-1, 2), fixed(5, 3)] {
            let s = c.deck();
            let ss = S::compose(s, s).unwrap();
            assert_eq!(ss, S::monomial(q(1, 1), 1, ss.trunc_order()));
            let gs = S::compose(c.potential(), s).unwrap();
            assert!(gs.sub(c.potential()).is_zero());
        }
        let c = sym();
        let gs = S::compose(c.potential(), c.deck()).unwrap();
        assert!(gs.sub(c.potential()).is_zero());
    }

    #[test]
    fn sheet_coordinate_squares_to_potential() {
        let c = fixed(2, 1);
        let r = sheet_coordinate(&c).unwrap();
        let c2 = c.potential().coefficient(2).unwrap();
        let lhs = r.mul(&r).scale(&c2);
        assert!(lhs.sub(c.potential()).is_zero());
    }

    #[test]
    fn phi_polynomials() {
        let c = sym();
        let p0 = c.phi_b(0).unwrap();
        assert_eq!(p0.0, vec![rf("-1/(f+1)"), rf("1/(f+1)")]);
        // t(t-1)(ft+1)/(f+1)^2
        let p1 = c.phi_b(1).unwrap();
        let den = rf("1/(f^2+2*f+1)");
        assert_eq!(
            p1.0,
            vec![rf("0"), den.neg(), rf("1-f").mul(&den), rf("f").mul(&den)]
        );
        for b in 0..6 {
            assert_eq!(c.phi_b(b).unwrap().degree(), Some(2 * b + 1));
        }
    }

    #[test]
    fn zeta_expansions() {
        let c = sym();
        let z0 = c.zeta_b(0).unwrap();
        assert_eq!(z0.valuation(), Some(-2));
        assert_eq!(z0.coefficient(-2).unwrap(), rf("-1/(f+1)"));
        assert_eq!(z0.terms().count(), 1);
        for b in 0..8 {
            let z = c.zeta_b(b).unwrap();
            assert_eq!(z.valuation(), Some(-(2 * b as i64 + 2)));
            assert!(z.residue().unwrap().is_zero());
        }
    }

    #[test]
    fn phi_minus1_expansion_and_operator() {
        let c = sym();
        let p = c.phi_minus1();
        assert_eq!(p.valuation(), Some(1));
        assert_eq!(p.coefficient(1).unwrap(), rf("-1/f"));
        // x d/dx phi_{-1} = phi_0, checked as series: dphi_{-1}/(dx/x) = phi_0(u)
        let lhs = p.differentiate().mul(&c.dlog_x().inverse().unwrap());
        let phi0 = c.phi_b(0).unwrap().in_u();
        assert!(lhs.sub(&phi0).truncate(lhs.trunc_order()).is_zero());
    }

    #[test]
    fn residue_pairings() {
        let c = MirrorCurve::<RatFunc>::build(&Framing::Symbolic, 20).unwrap();
        assert!(c.residue_pairing(0).unwrap().is_zero());
        assert_eq!(c.residue_pairing(1).unwrap(), rf("1/(f^2+f)"));
        for b in 2..=6 {
            assert!(c.residue_pairing(b).unwrap().is_zero(), "b = {b}");
        }
    }

    #[test]
    fn rejects_degenerate_framings_and_low_order() {
        assert!(matches!(
            MirrorCurve::<Rational>::build(&Framing::Fixed(q(0, 1)), 10),
            Err(Error::Genericity(_))
        ));
        assert!(matches!(
            MirrorCurve::<Rational>::build(&Framing::Fixed(q(-1, 1)), 10),
            Err(Error::Genericity(_))
        ));
        assert!(matches!(
            MirrorCurve::<RatFunc>::build(&Framing::Symbolic, 7),
            Err(Error::Domain(_))
        ));
        assert_eq!(
            MirrorCurve::<RatFunc>::build(&Framing::Fixed(q(1, 1)), 10).unwrap_err(),
            Error::ModeMismatch
        );
    }
}
