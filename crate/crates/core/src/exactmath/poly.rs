//! Dense univariate polynomials over the integers, with the gcd machinery
//! the rational-function field needs.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Polynomial in one variable with integer coefficients, stored low degree
/// first with no trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut c = long.coeffs.clone();
        for (a, b) in c.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPoly::from_coeffs(c)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i] += a;
        }
        for (i, b) in other.coeffs.iter().enumerate() {
            c[i] -= b;
        }
        IntPoly::from_coeffs(c)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(c)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Divides every coefficient by `k`; `k` must divide all of them.
    pub fn div_scalar_exact(&self, k: &BigInt) -> IntPoly {
        if k.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / k).collect(),
        }
    }

    /// Non-negative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Content-free part with a positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Multiplicity of the root at zero.
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: c }
    }

    /// Exact quotient in Z[x], or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let n = self.degree()?;
        if n < dd {
            return None;
        }
        let lc = d.lc()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &qc * dc;
            }
            quot[i] = qc;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPoly::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder of `self` by `d`.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("nonzero divisor");
        let lc = d.lc().expect("nonzero divisor").clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let top = r.lc().unwrap().clone();
            let scaled = r.scale(&lc);
            let sub = d.shift_up(rd - dd).scale(&top);
            r = scaled.sub(&sub);
        }
        r
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner on numerator/denominator to avoid a gcd per step.
        let p = x.numer();
        let q = x.denom();
        let n = self.coeffs.len();
        if n == 0 {
            return Rational::zero();
        }
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        // acc / q^(n-1); qpow is now q^n
        let denom = qpow / q;
        Rational::new(acc, denom).expect("nonzero")
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&IntPoly::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Greatest common divisor in Z[x], including the integer content, with a
    /// positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_sign();
        }
        if other.is_zero() {
            return self.primitive_sign();
        }
        let ca = self.content();
        let cb = other.content();
        let c = ca.gcd(&cb);
        if self.is_constant() || other.is_constant() {
            return IntPoly::constant(c);
        }
        let pa = self.div_scalar_exact(&ca);
        let pb = other.div_scalar_exact(&cb);
        let va = pa.x_valuation();
        let vb = pb.x_valuation();
        let v = va.min(vb);
        let pa = pa.shift_down(va);
        let pb = pb.shift_down(vb);
        let core = if pa.is_constant() || pb.is_constant() {
            IntPoly::one()
        } else {
            primitive_gcd(&pa.primitive_part(), &pb.primitive_part())
        };
        core.shift_up(v).scale(&c)
    }

    fn primitive_sign(&self) -> IntPoly {
        if self.lc().is_some_and(|l| l.is_negative()) {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Canonical string with explicit integer coefficients in decreasing
    /// degree, e.g. `3*f^2-1*f+1`.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.sign() == Sign::Minus {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            s.push_str(&c.abs().to_string());
            match i {
                0 => {}
                1 => {
                    s.push('*');
                    s.push_str(var);
                }
                _ => {
                    s.push('*');
                    s.push_str(var);
                    s.push('^');
                    s.push_str(&i.to_string());
                }
            }
        }
        s
    }

    /// Parses the output of [`IntPoly::to_string_in`]; bare variables and
    /// omitted unit coefficients are accepted as well.
    pub fn parse_in(s: &str, var: &str) -> Option<IntPoly> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return None;
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && i == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        terms.push((neg, cur));
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (neg, t) in terms {
            if t.is_empty() {
                return None;
            }
            let (coef, deg) = match t.find(var) {
                None => (t.parse::<BigInt>().ok()?, 0usize),
                Some(pos) => {
                    let head = t[..pos].trim_end_matches('*');
                    let coef = if head.is_empty() {
                        BigInt::one()
                    } else {
                        head.parse::<BigInt>().ok()?
                    };
                    let tail = &t[pos + var.len()..];
                    let deg = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')?.parse::<usize>().ok()?
                    };
                    (coef, deg)
                }
            };
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, BigInt::zero());
            }
            if neg {
                coeffs[deg] -= coef;
            } else {
                coeffs[deg] += coef;
            }
        }
        Some(IntPoly::from_coeffs(coeffs))
    }
}

/// Symmetric base-`x` digits of `h`, as polynomial coefficients.
fn interpolate(mut h: BigInt, x: &BigInt) -> IntPoly {
    let half = x / 2;
    let mut coeffs = Vec::new();
    while !h.is_zero() {
        let mut g = h.mod_floor(x);
        if g > half {
            g -= x;
        }
        h = (h - &g) / x;
        coeffs.push(g);
    }
    IntPoly::from_coeffs(coeffs)
}

/// gcd of two primitive polynomials of positive degree.
fn primitive_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a == b {
        return a.clone();
    }
    if let Some(g) = heuristic_gcd(a, b) {
        return g;
    }
    prs_gcd(a, b)
}

/// Heuristic gcd by evaluation at a large integer and interpolation of the
/// integer gcd; every candidate is confirmed by exact division.
fn heuristic_gcd(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let an = a.max_norm();
    let bn = b.max_norm();
    let bound: BigInt = BigInt::from(2) * an.clone().min(bn.clone()) + 29;
    let alc = a.lc().unwrap().abs();
    let blc = b.lc().unwrap().abs();
    let lower: BigInt = BigInt::from(2) * (&an / &alc).min(&bn / &blc) + 2;
    let mut x = bound.clone().min(BigInt::from(99) * bound.sqrt()).max(lower);
    for _ in 0..6 {
        let av = a.eval_int(&x);
        let bv = b.eval_int(&x);
        if !av.is_zero() && !bv.is_zero() {
            let h = av.gcd(&bv);
            let cand = interpolate(h.clone(), &x).primitive_part();
            if !cand.is_zero() && a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return Some(cand);
            }
            let cofa = interpolate(&av / &h, &x);
            if !cofa.is_zero() {
                if let Some(g) = a.div_exact(&cofa) {
                    let g = g.primitive_part();
                    if b.div_exact(&g).is_some() {
                        return Some(g);
                    }
                }
            }
        }
        x = BigInt::from(73794) * &x * x.sqrt().sqrt() / BigInt::from(27011);
    }
    None
}

/// Primitive polynomial remainder sequence.
fn prs_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (mut p, mut r) = match a.degree().cmp(&b.degree()) {
        Ordering::Less => (b.clone(), a.clone()),
        _ => (a.clone(), b.clone()),
    };
    while !r.is_zero() {
        let rem = p.pseudo_rem(&r).primitive_part();
        p = r;
        r = rem;
    }
    p.primitive_part()
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}
