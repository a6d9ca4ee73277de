use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Field, Framing};
use crate::series::{TruncatedSeries, EXACT};

/// `W^g_n = sum_k coeff[k] prod_i u_i^{-k_i - 1} du_i`, stored once per
/// multiset of indices (sorted ascending); the value for any ordering of the
/// slots is the same.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelatorTensor<F> {
    pub g: u32,
    pub n: u32,
    pub framing: Framing,
    entries: BTreeMap<Vec<u32>, F>,
}

impl<F: Field> CorrelatorTensor<F> {
    pub fn new(g: u32, n: u32, framing: Framing, entries: BTreeMap<Vec<u32>, F>) -> Self {
        CorrelatorTensor {
            g,
            n,
            framing,
            entries,
        }
    }

    /// Coefficient for an index tuple in any order.
    pub fn get(&self, k: &[u32]) -> F {
        let mut key = k.to_vec();
        key.sort_unstable();
        self.entries.get(&key).cloned().unwrap_or_else(F::zero)
    }

    pub fn entries(&self) -> &BTreeMap<Vec<u32>, F> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest index in any slot.
    pub fn max_index(&self) -> u32 {
        self.entries.keys().filter_map(|k| k.last().copied()).max().unwrap_or(0)
    }

    /// Every ordered index tuple with its coefficient.
    pub fn ordered(&self) -> HashMap<Vec<u32>, F> {
        let mut out = HashMap::new();
        for (k, v) in &self.entries {
            for p in distinct_permutations(k) {
                out.insert(p, v.clone());
            }
        }
        out
    }

    /// Groups entries by the multiset left after removing one slot:
    /// `slice[K][a] = W[K + a]`.
    pub fn slices(&self) -> BTreeMap<Vec<u32>, Vec<(u32, F)>> {
        let mut out: BTreeMap<Vec<u32>, Vec<(u32, F)>> = BTreeMap::new();
        for (key, v) in &self.entries {
            for (i, &a) in key.iter().enumerate() {
                if i > 0 && key[i - 1] == a {
                    continue;
                }
                let mut rest = key.clone();
                rest.remove(i);
                out.entry(rest).or_default().push((a, v.clone()));
            }
        }
        out
    }

    /// The one-point tensor as a Laurent density in `u`.
    pub fn as_series(&self) -> Result<TruncatedSeries<F>> {
        if self.n != 1 {
            return Err(Error::Domain(format!("expected a one-point tensor, got n = {}", self.n)));
        }
        let mut s = TruncatedSeries::zero(EXACT);
        for (k, v) in &self.entries {
            s = s.add(&TruncatedSeries::monomial(v.clone(), -(k[0] as i64) - 1, EXACT));
        }
        Ok(s)
    }

    pub fn to_json(&self) -> TensorJson {
        TensorJson {
            g: self.g,
            n: self.n,
            framing: self.framing.to_string(),
            basis: "u",
            entries: self
                .entries
                .iter()
                .map(|(k, v)| EntryJson {
                    b: k.clone(),
                    coeff: v.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TensorJson {
    pub g: u32,
    pub n: u32,
    pub framing: String,
    pub basis: &'static str,
    pub entries: Vec<EntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryJson {
    pub b: Vec<u32>,
    pub coeff: String,
}

/// All distinct orderings of a multiset given in sorted order.
pub fn distinct_permutations(sorted: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    loop {
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Inserts `x` into a sorted vector.
pub fn insert_sorted(v: &[u32], x: u32) -> Vec<u32> {
    let pos = v.partition_point(|&y| y < x);
    let mut out = Vec::with_capacity(v.len() + 1);
    out.extend_from_slice(&v[..pos]);
    out.push(x);
    out.extend_from_slice(&v[pos..]);
    out
}

/// Removes one copy of `x` from a sorted vector.
pub fn remove_sorted(v: &[u32], x: u32) -> Vec<u32> {
    let pos = v.partition_point(|&y| y < x);
    debug_assert_eq!(v.get(pos), Some(&x));
    let mut out = v.to_vec();
    out.remove(pos);
    out
}

/// Merges two sorted vectors.
pub fn merge_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{q, Rational};

    #[test]
    fn permutations_of_multisets() {
        assert_eq!(distinct_permutations(&[1, 1, 2]).len(), 3);
        assert_eq!(distinct_permutations(&[1, 2, 3]).len(), 6);
        assert_eq!(distinct_permutations(&[]), vec![Vec::<u32>::new()]);
        assert_eq!(distinct_permutations(&[4, 4, 4, 4]).len(), 1);
    }

    #[test]
    fn sorted_helpers() {
        assert_eq!(insert_sorted(&[1, 3], 2), vec![1, 2, 3]);
        assert_eq!(remove_sorted(&[1, 2, 2, 3], 2), vec![1, 2, 3]);
        assert_eq!(merge_sorted(&[1, 4], &[2, 3, 5]), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn slices_and_ordering() {
        let mut e = BTreeMap::new();
        e.insert(vec![1, 1, 2], q(3, 1));
        e.insert(vec![1, 2, 3], q(5, 1));
        let t = CorrelatorTensor::<Rational>::new(0, 3, Framing::Symbolic, e);
        assert_eq!(t.get(&[2, 1, 1]), q(3, 1));
        assert_eq!(t.get(&[3, 1, 2]), q(5, 1));
        assert_eq!(t.ordered().len(), 9);
        let s = t.slices();
        assert_eq!(s[&vec![1, 1]], vec![(2, q(3, 1))]);
        assert_eq!(s[&vec![1, 2]], vec![(1, q(3, 1)), (3, q(5, 1))]);
    }
}
