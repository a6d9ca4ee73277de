//! The recursion kernel and the residue tables built from it.
//!
//! With `B(u0, q) = sum_k k q^{k-1} u0^{-k-1} du0 dq` for `|q| < |u0|`, the
//! kernel splits as `K(u0, q) = sum_{k0 >= 1} u0^{-k0-1} du0 K_{k0}(q) / dq`
//! where
//!
//! ```text
//! K_{k0}(q) = (s(q)^{k0} - q^{k0}) / (2 (phi_{-1}(s(q)) - phi_{-1}(q)) G'(q))
//! ```
//!
//! Every residue the recursion needs is then a single coefficient of a
//! product of `K_{k0}` with one of the two families
//! `sigma_b = s^{-b-1} s'` and `tau_v = s^{v-1} s'`.

use std::collections::HashMap;
use std::rc::Rc;

use crate::curve::MirrorCurve;
use crate::error::Result;
use crate::exactmath::Field;
use crate::series::{TruncatedSeries, EXACT};

type S<F> = TruncatedSeries<F>;

/// `(k0, v1, v2)` index of a three-point table entry.
pub type TripleIndex = (u32, u32, u32);

pub struct Kernel<F> {
    s: S<F>,
    s_inv: S<F>,
    s_prime: S<F>,
    /// `1 / (2 D)`.
    half_inv_den: S<F>,
    /// `K_{k0}` at index `k0` (index 0 unused and zero).
    k: Vec<S<F>>,
    s_pow: Vec<S<F>>,
    sigma: Vec<S<F>>,
    tau: Vec<S<F>>,
    c_tab: HashMap<(u32, u32), Rc<Vec<F>>>,
    b_tab: HashMap<(u32, u32), Rc<Vec<F>>>,
}

impl<F: Field> Kernel<F> {
    pub fn new(curve: &MirrorCurve<F>) -> Result<Self> {
        let s = curve.deck().clone();
        let s_prime = s.differentiate();
        let phi = curve.phi_minus1();
        let den = S::compose(phi, &s)?.sub(phi).mul(curve.dlog_x());
        let half_inv_den = den.inverse()?.scale(&F::from_int(2).inv()?);
        let s_inv = s.inverse()?;
        Ok(Kernel {
            sigma: vec![s_inv.mul(&s_prime)],
            tau: vec![S::zero(EXACT), s_prime.clone()],
            s_pow: vec![S::one(EXACT)],
            k: vec![S::zero(EXACT)],
            s,
            s_inv,
            s_prime,
            half_inv_den,
            c_tab: HashMap::new(),
            b_tab: HashMap::new(),
        })
    }

    /// `K_{k0}(q)`.
    pub fn k(&mut self, k0: u32) -> &S<F> {
        while self.k.len() <= k0 as usize {
            let j = self.k.len();
            while self.s_pow.len() <= j {
                let next = self.s_pow.last().unwrap().mul(&self.s);
                self.s_pow.push(next);
            }
            let num = self.s_pow[j].sub(&S::monomial(F::one(), j as i64, EXACT));
            let kj = num.mul(&self.half_inv_den);
            self.k.push(kj);
        }
        &self.k[k0 as usize]
    }

    /// `sigma_b = s^{-b-1} s'`.
    pub fn sigma(&mut self, b: u32) -> &S<F> {
        while self.sigma.len() <= b as usize {
            let next = self.sigma.last().unwrap().mul(&self.s_inv);
            self.sigma.push(next);
        }
        &self.sigma[b as usize]
    }

    /// `tau_v = s^{v-1} s'` for `v >= 1`.
    pub fn tau(&mut self, v: u32) -> &S<F> {
        while self.tau.len() <= v as usize {
            let next = self.tau.last().unwrap().mul(&self.s);
            self.tau.push(next);
        }
        &self.tau[v as usize]
    }

    /// `Res_q K_{k0} q^{-a-1} sigma_b` for `k0 = 1 ..= a + b + 3`, indexed
    /// by `k0 - 1`. Larger `k0` vanish by valuation.
    pub fn c(&mut self, a: u32, b: u32) -> Result<Rc<Vec<F>>> {
        if let Some(v) = self.c_tab.get(&(a, b)) {
            return Ok(v.clone());
        }
        let top = a + b + 3;
        self.k(top);
        self.sigma(b);
        let sig = &self.sigma[b as usize];
        let mut col = Vec::with_capacity(top as usize);
        for k0 in 1..=top {
            col.push(self.k[k0 as usize].mul_coefficient(sig, a as i64)?);
        }
        let col = Rc::new(col);
        self.c_tab.insert((a, b), col.clone());
        Ok(col)
    }

    /// Bergman-insertion residues: for a new spectator index `v` and an
    /// active index `a`,
    /// `v (Res K_{k0} q^{v-1} sigma_a + Res K_{k0} q^{-a-1} tau_v)`
    /// for `k0 = 1 ..= a + 3 - v` (empty when `v > a + 2`).
    pub fn bergman(&mut self, v: u32, a: u32) -> Result<Rc<Vec<F>>> {
        if let Some(t) = self.b_tab.get(&(v, a)) {
            return Ok(t.clone());
        }
        let top = (a + 3).saturating_sub(v);
        let mut col = Vec::with_capacity(top as usize);
        if top >= 1 {
            self.k(top);
            self.sigma(a);
            self.tau(v);
            let sig = &self.sigma[a as usize];
            let tau = &self.tau[v as usize];
            let vf = F::from_int(v as i64);
            for k0 in 1..=top {
                let kk = &self.k[k0 as usize];
                let r = kk
                    .mul_coefficient(sig, -(v as i64))?
                    .add(&kk.mul_coefficient(tau, a as i64)?);
                col.push(r.mul(&vf));
            }
        }
        let col = Rc::new(col);
        self.b_tab.insert((v, a), col.clone());
        Ok(col)
    }

    /// Two Bergman factors, the only input of the three-point genus-zero
    /// correlator: entries `(k0, v1, v2)` with `k0 + v1 + v2 <= 3`
    /// (larger indices vanish by valuation).
    pub fn three_point(&mut self) -> Result<Vec<(TripleIndex, F)>> {
        let mut out = Vec::new();
        for k0 in 1..=3u32 {
            for v1 in 1..=3u32 {
                for v2 in 1..=3u32 {
                    if k0 + v1 + v2 > 5 {
                        continue;
                    }
                    self.k(k0);
                    self.tau(v1);
                    self.tau(v2);
                    let kk = &self.k[k0 as usize];
                    let r = kk
                        .mul_coefficient(&self.tau[v2 as usize], -(v1 as i64))?
                        .add(&kk.mul_coefficient(&self.tau[v1 as usize], -(v2 as i64))?)
                        .mul(&F::from_int((v1 * v2) as i64));
                    if !r.is_zero() {
                        out.push(((k0, v1, v2), r));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Res_q K_{k0} s' / (q - s)^2`: the Bergman kernel evaluated on both
    /// sheets, the only input of the genus-one one-point correlator.
    pub fn diagonal(&mut self, k_max: u32) -> Result<Vec<F>> {
        let q_minus_s = S::monomial(F::one(), 1, EXACT).sub(&self.s);
        let d = self.s_prime.mul(&q_minus_s.mul(&q_minus_s).inverse()?);
        self.k(k_max);
        (1..=k_max)
            .map(|k0| self.k[k0 as usize].mul_coefficient(&d, -1))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{q, Framing, RatFunc, Rational};

    #[test]
    fn kernel_valuations() {
        let c = MirrorCurve::<RatFunc>::build(&Framing::Symbolic, 16).unwrap();
        let mut k = Kernel::new(&c).unwrap();
        assert_eq!(k.half_inv_den.valuation(), Some(-2));
        // odd k0: the numerator starts at -2 q^{k0}; even: at q^{k0+1}
        assert_eq!(k.k(1).valuation(), Some(-1));
        assert_eq!(k.k(2).valuation(), Some(1));
        assert_eq!(k.k(3).valuation(), Some(1));
    }

    #[test]
    fn denominator_is_odd_dominated() {
        // replacing s by -u changes D only from order u^3 on
        let c = MirrorCurve::<Rational>::build(&Framing::fixed(q(2, 1)).unwrap(), 16).unwrap();
        let phi = c.phi_minus1();
        let d = S::compose(phi, c.deck()).unwrap().sub(phi).mul(c.dlog_x());
        let minus_u = S::monomial(q(-1, 1), 1, EXACT);
        let d0 = S::compose(phi, &minus_u).unwrap().sub(phi).mul(c.dlog_x());
        assert_eq!(d.valuation(), Some(2));
        assert_eq!(d.sub(&d0).valuation(), Some(3));
    }

    #[test]
    fn three_point_has_a_single_entry() {
        let c = MirrorCurve::<RatFunc>::build(&Framing::Symbolic, 12).unwrap();
        let mut k = Kernel::new(&c).unwrap();
        let tp = k.three_point().unwrap();
        assert_eq!(tp.len(), 1);
        assert_eq!(tp[0].0, (1, 1, 1));
        assert_eq!(tp[0].1, "-f^2/(f+1)".parse::<RatFunc>().unwrap());
    }

    #[test]
    fn diagonal_terms_stop_at_three() {
        let c = MirrorCurve::<Rational>::build(&Framing::fixed(q(2, 1)).unwrap(), 14).unwrap();
        let mut k = Kernel::new(&c).unwrap();
        let d = k.diagonal(6).unwrap();
        assert_eq!(&d[..3], &[q(1, 8), q(1, 18), q(-1, 6)]);
        assert!(d[3..].iter().all(|x| x.is_zero()));
    }
}
