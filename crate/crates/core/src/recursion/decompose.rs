use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::tensor::{CorrelatorTensor, EntryJson};
use crate::curve::MirrorCurve;
use crate::error::{Error, Result};
use crate::exactmath::{Field, Framing};

/// `<tau_{b_1} ... tau_{b_n} Gamma_g(f)>` keyed by sorted `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct HodgeCoefficientTable<F> {
    pub g: u32,
    pub n: u32,
    pub framing: Framing,
    pub entries: BTreeMap<Vec<u32>, F>,
}

impl<F: Field> HodgeCoefficientTable<F> {
    pub fn get(&self, b: &[u32]) -> F {
        let mut key = b.to_vec();
        key.sort_unstable();
        self.entries.get(&key).cloned().unwrap_or_else(F::zero)
    }

    pub fn to_json(&self) -> HodgeJson {
        HodgeJson {
            g: self.g,
            n: self.n,
            framing: self.framing.to_string(),
            basis: "zeta".into(),
            entries: self
                .entries
                .iter()
                .map(|(b, v)| EntryJson {
                    b: b.clone(),
                    coeff: v.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HodgeJson {
    pub g: u32,
    pub n: u32,
    pub framing: String,
    pub basis: String,
    pub entries: Vec<EntryJson>,
}

/// Expansion of `zeta_b` in the `u^{-k-1} du` basis: `zeta[b][k]`.
fn zeta_table<F: Field>(curve: &MirrorCurve<F>, b_max: u32) -> Result<Vec<BTreeMap<u32, F>>> {
    (0..=b_max)
        .map(|b| {
            let z = curve.zeta_b(b as usize)?;
            Ok(z.terms()
                .map(|(e, c)| ((-e - 1) as u32, c.clone()))
                .collect())
        })
        .collect()
}

/// Solves `w = sum_b c_b zeta_b` from the top index down.
fn solve_slot<F: Field>(
    mut w: BTreeMap<u32, F>,
    zeta: &[BTreeMap<u32, F>],
) -> Result<BTreeMap<u32, F>> {
    let mut c = BTreeMap::new();
    while let Some((&k, top)) = w.iter().next_back() {
        let top = top.clone();
        if k % 2 == 0 || (k as usize - 1) / 2 >= zeta.len() {
            return Err(Error::Decomposition(format!(
                "remainder {top} at u^-{} is outside the span of zeta_b",
                k + 1
            )));
        }
        let b = (k - 1) / 2;
        let zb = &zeta[b as usize];
        let lead = zb
            .get(&k)
            .ok_or_else(|| Error::Decomposition(format!("zeta_{b} has no u^-{} term", k + 1)))?;
        let cb = top.div(lead)?;
        for (kk, z) in zb {
            let e = w.entry(*kk).or_insert_with(F::zero);
            *e = e.sub(&cb.mul(z));
            if e.is_zero() {
                w.remove(kk);
            }
        }
        c.insert(b, cb);
    }
    Ok(c)
}

/// Coefficients `c` with `W = sum_b c_b zeta_{b_1} ... zeta_{b_n}`, keyed by
/// sorted `b`.
pub fn zeta_coefficients<F: Field>(
    curve: &MirrorCurve<F>,
    tensor: &CorrelatorTensor<F>,
) -> Result<BTreeMap<Vec<u32>, F>> {
    let b_max = tensor.max_index() / 2 + 1;
    let zeta = zeta_table(curve, b_max)?;
    let n = tensor.n as usize;
    let mut cur: HashMap<Vec<u32>, F> = tensor.ordered();
    for slot in 0..n {
        let mut groups: HashMap<Vec<u32>, BTreeMap<u32, F>> = HashMap::new();
        for (key, v) in cur {
            let mut rest = key.clone();
            let k = rest.remove(slot);
            groups.entry(rest).or_default().insert(k, v);
        }
        let mut next = HashMap::new();
        for (rest, w) in groups {
            for (b, c) in solve_slot(w, &zeta)? {
                let mut key = rest.clone();
                key.insert(slot, b);
                next.insert(key, c);
            }
        }
        cur = next;
    }
    let mut out = BTreeMap::new();
    for (mut key, v) in cur {
        key.sort_unstable();
        if let Some(prev) = out.insert(key.clone(), v.clone()) {
            if prev != v {
                return Err(Error::Symmetry(format!(
                    "zeta coefficients of W^{}_{} at {key:?} are not symmetric",
                    tensor.g, tensor.n
                )));
            }
        }
    }
    Ok(out)
}

/// Rebuilds the `u`-basis tensor from `zeta` coefficients.
pub fn reconstruct<F: Field>(
    curve: &MirrorCurve<F>,
    g: u32,
    n: u32,
    coeffs: &BTreeMap<Vec<u32>, F>,
) -> Result<CorrelatorTensor<F>> {
    let b_max = coeffs.keys().flatten().copied().max().unwrap_or(0);
    let zeta = zeta_table(curve, b_max)?;
    let mut acc: BTreeMap<Vec<u32>, F> = BTreeMap::new();
    for (bs, c) in coeffs {
        for perm in super::tensor::distinct_permutations(bs) {
            // expand prod_i zeta_{perm_i}, keeping ordered k tuples
            let mut partial: Vec<(Vec<u32>, F)> = vec![(Vec::new(), c.clone())];
            for b in &perm {
                let mut next = Vec::new();
                for (ks, v) in &partial {
                    for (k, z) in &zeta[*b as usize] {
                        let mut kk = ks.clone();
                        kk.push(*k);
                        next.push((kk, v.mul(z)));
                    }
                }
                partial = next;
            }
            for (ks, v) in partial {
                // each ordered tuple lands on its sorted key once per
                // ordering; only count the ordering that is already sorted
                if ks.windows(2).all(|w| w[0] <= w[1]) {
                    let e = acc.entry(ks).or_insert_with(F::zero);
                    *e = e.add(&v);
                }
            }
        }
    }
    acc.retain(|_, v| !v.is_zero());
    Ok(CorrelatorTensor::new(g, n, curve.framing().clone(), acc))
}

/// `<tau_b Gamma_g(f)> = (-1)^g (f(f+1))^{1-n} c_b`.
pub fn decompose_in_zeta_basis<F: Field>(
    curve: &MirrorCurve<F>,
    tensor: &CorrelatorTensor<F>,
) -> Result<HodgeCoefficientTable<F>> {
    let c = zeta_coefficients(curve, tensor)?;
    let f = curve.f();
    let ff1 = f.mul(&f.add(&F::one()));
    let mut factor = ff1.inv()?.pow(tensor.n - 1);
    if tensor.g % 2 == 1 {
        factor = factor.neg();
    }
    let entries = c.into_iter().map(|(b, v)| (b, v.mul(&factor))).collect();
    Ok(HodgeCoefficientTable {
        g: tensor.g,
        n: tensor.n,
        framing: curve.framing().clone(),
        entries,
    })
}
