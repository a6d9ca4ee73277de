use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::kernel::Kernel;
use super::tensor::{insert_sorted, merge_sorted, remove_sorted, CorrelatorTensor};
use crate::curve::MirrorCurve;
use crate::error::{Error, Result};
use crate::exactmath::Field;
use crate::series::{TruncatedSeries, EXACT};

type Slices<F> = BTreeMap<Vec<u32>, Vec<(u32, F)>>;

/// Partial output of one recursion step: for each sorted multiset `K` of
/// spectator indices, the coefficients indexed by `k0 - 1` of the new slot.
type Raw<F> = HashMap<Vec<u32>, Vec<F>>;

pub fn is_stable(g: u32, n: u32) -> bool {
    2 * g + n > 2
}

/// Memoized recursion on one curve.
pub struct Recursion<F> {
    curve: MirrorCurve<F>,
    kernel: Kernel<F>,
    memo: HashMap<(u32, u32), Rc<CorrelatorTensor<F>>>,
    slices: HashMap<(u32, u32), Rc<Slices<F>>>,
}

impl<F: Field> Recursion<F> {
    pub fn new(curve: MirrorCurve<F>) -> Result<Self> {
        let kernel = Kernel::new(&curve)?;
        Ok(Recursion {
            curve,
            kernel,
            memo: HashMap::new(),
            slices: HashMap::new(),
        })
    }

    pub fn curve(&self) -> &MirrorCurve<F> {
        &self.curve
    }

    /// Every tensor computed so far, keyed by `(g, n)`.
    pub fn computed(&self) -> impl Iterator<Item = (&(u32, u32), &Rc<CorrelatorTensor<F>>)> {
        self.memo.iter()
    }

    pub fn correlator(&mut self, g: u32, n: u32) -> Result<Rc<CorrelatorTensor<F>>> {
        if n == 0 || !is_stable(g, n) {
            return Err(Error::Domain(format!(
                "W^{g}_{n} is not a stable correlator (need 2g - 2 + n > 0, n >= 1)"
            )));
        }
        if let Some(t) = self.memo.get(&(g, n)) {
            return Ok(t.clone());
        }
        let t = Rc::new(self.compute(g, n)?);
        self.memo.insert((g, n), t.clone());
        Ok(t)
    }

    fn slices_of(&mut self, g: u32, n: u32) -> Result<Rc<Slices<F>>> {
        if let Some(s) = self.slices.get(&(g, n)) {
            return Ok(s.clone());
        }
        let s = Rc::new(self.correlator(g, n)?.slices());
        self.slices.insert((g, n), s.clone());
        Ok(s)
    }

    fn compute(&mut self, g: u32, n: u32) -> Result<CorrelatorTensor<F>> {
        let spect = n - 1;
        let mut raw: Raw<F> = HashMap::new();

        if (g, n) == (0, 3) {
            for ((k0, v1, v2), r) in self.kernel.three_point()? {
                if v1 <= v2 {
                    add_at(&mut raw, vec![v1, v2], k0, &r);
                }
            }
        }

        // W^{g-1}_{n+1}(q, s(q), S)
        if g >= 1 {
            if (g, n) == (1, 1) {
                let d = self.kernel.diagonal(4)?;
                add_scaled(&mut raw, Vec::new(), &d, &F::one());
            } else {
                let w = self.correlator(g - 1, n + 1)?;
                for (t, val) in w.entries() {
                    for (i, &a) in t.iter().enumerate() {
                        if i > 0 && t[i - 1] == a {
                            continue;
                        }
                        let rest = remove_sorted(t, a);
                        for (j, &b) in rest.iter().enumerate() {
                            if j > 0 && rest[j - 1] == b {
                                continue;
                            }
                            let k = remove_sorted(&rest, b);
                            let col = self.kernel.c(a, b)?;
                            add_scaled(&mut raw, k, &col, val);
                        }
                    }
                }
            }
        }

        // W^{g1}(q, I) W^{g2}(s(q), J), both stable
        for g1 in 0..=g {
            let g2 = g - g1;
            for i in 0..=spect {
                let (n1, n2) = (i + 1, spect - i + 1);
                if !is_stable(g1, n1) || !is_stable(g2, n2) {
                    continue;
                }
                self.split_term(&mut raw, (g1, n1), (g2, n2))?;
            }
        }

        // Bergman kernel against one spectator, on either sheet.
        if spect >= 1 && is_stable(g, n - 1) {
            let sl = self.slices_of(g, n - 1)?;
            for (kp, x) in sl.iter() {
                let mut by_v: BTreeMap<u32, Vec<F>> = BTreeMap::new();
                for (a, val) in x {
                    for v in 1..=a + 2 {
                        let col = self.kernel.bergman(v, *a)?;
                        let row = by_v.entry(v).or_default();
                        axpy(row, &col, val);
                    }
                }
                for (v, row) in by_v {
                    let k = insert_sorted(kp, v);
                    let mult = k.iter().filter(|&&y| y == v).count() as i64;
                    add_scaled(&mut raw, k, &row, &F::from_int(mult));
                }
            }
        }

        let entries = symmetrize(g, n, &raw)?;
        Ok(CorrelatorTensor::new(
            g,
            n,
            self.curve.framing().clone(),
            entries,
        ))
    }

    fn split_term(&mut self, raw: &mut Raw<F>, first: (u32, u32), second: (u32, u32)) -> Result<()> {
        let s1 = self.slices_of(first.0, first.1)?;
        let s2 = self.slices_of(second.0, second.1)?;
        let a_values: Vec<u32> = {
            let mut v: Vec<u32> = s1.values().flatten().map(|(a, _)| *a).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        for (jset, y) in s2.iter() {
            // z[a][k0 - 1] = sum_b C(k0, a, b) y_b
            let mut z: HashMap<u32, Vec<F>> = HashMap::with_capacity(a_values.len());
            for &a in &a_values {
                let mut row = Vec::new();
                for (b, yb) in y {
                    let col = self.kernel.c(a, *b)?;
                    axpy(&mut row, &col, yb);
                }
                z.insert(a, row);
            }
            for (iset, x) in s1.iter() {
                let mut row = Vec::new();
                for (a, xa) in x {
                    axpy(&mut row, &z[a], xa);
                }
                if row.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let k = merge_sorted(iset, jset);
                let mult = sub_multiset_count(&k, iset);
                add_scaled(raw, k, &row, &F::from_int(mult));
            }
        }
        Ok(())
    }

    /// `F_g = (-1)^g/(2 - 2g) Res Phi W^g_1`.
    pub fn free_energy(&mut self, g: u32) -> Result<F> {
        self.free_energy_with_base_shift(g, &F::zero())
    }

    /// The free energy with the primitive replaced by `Phi + shift`.
    pub fn free_energy_with_base_shift(&mut self, g: u32, shift: &F) -> Result<F> {
        if g < 2 {
            return Err(Error::Domain(format!("F_g is defined for g >= 2, got {g}")));
        }
        let w = self.correlator(g, 1)?.as_series()?;
        let phi = self
            .curve
            .primitive()
            .add(&TruncatedSeries::monomial(shift.clone(), 0, EXACT));
        let r = phi.mul(&w).residue()?;
        let sign = if g.is_multiple_of(2) { 1 } else { -1 };
        r.mul(&F::from_int(sign)).div(&F::from_int(2 - 2 * g as i64))
    }
}

/// `row += x * col`, growing `row` as needed.
fn axpy<F: Field>(row: &mut Vec<F>, col: &[F], x: &F) {
    if x.is_zero() {
        return;
    }
    if row.len() < col.len() {
        row.resize(col.len(), F::zero());
    }
    for (r, c) in row.iter_mut().zip(col) {
        r.add_mul(c, x);
    }
}

fn add_scaled<F: Field>(raw: &mut Raw<F>, k: Vec<u32>, col: &[F], x: &F) {
    if col.iter().all(|c| c.is_zero()) || x.is_zero() {
        return;
    }
    axpy(raw.entry(k).or_default(), col, x);
}

fn add_at<F: Field>(raw: &mut Raw<F>, k: Vec<u32>, k0: u32, x: &F) {
    let row = raw.entry(k).or_default();
    if row.len() < k0 as usize {
        row.resize(k0 as usize, F::zero());
    }
    row[k0 as usize - 1].add_assign(x);
}

/// Number of ways to pick the labelled slots of the sub-multiset `sub`
/// inside `whole`: `prod_v C(m_v(whole), m_v(sub))`.
fn sub_multiset_count(whole: &[u32], sub: &[u32]) -> i64 {
    let mut m: BTreeMap<u32, (i64, i64)> = BTreeMap::new();
    for &x in whole {
        m.entry(x).or_default().0 += 1;
    }
    for &x in sub {
        m.entry(x).or_default().1 += 1;
    }
    m.values().map(|&(n, k)| binomial(n, k)).product()
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Folds the per-slot output into one symmetric tensor, failing if the value
/// computed with the new slot in different positions disagrees.
fn symmetrize<F: Field>(g: u32, n: u32, raw: &Raw<F>) -> Result<BTreeMap<Vec<u32>, F>> {
    let mut out: BTreeMap<Vec<u32>, F> = BTreeMap::new();
    for (k, row) in raw {
        for (i, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let key = insert_sorted(k, i as u32 + 1);
            out.entry(key).or_insert_with(|| c.clone());
        }
    }
    let zero = F::zero();
    for (key, v) in &out {
        for (i, &k0) in key.iter().enumerate() {
            if i > 0 && key[i - 1] == k0 {
                continue;
            }
            let rest = remove_sorted(key, k0);
            let other = raw
                .get(&rest)
                .and_then(|row| row.get(k0 as usize - 1))
                .unwrap_or(&zero);
            if other != v {
                return Err(Error::Symmetry(format!(
                    "W^{g}_{n} at {key:?}: slot value {other} differs from {v}"
                )));
            }
        }
    }
    Ok(out)
}
