//! The topological recursion on the mirror curve: kernel residue tables,
//! the memoized correlator engine, free energies and the zeta-basis
//! decomposition.

mod decompose;
mod engine;
mod kernel;
mod tensor;

pub use decompose::{
    decompose_in_zeta_basis, reconstruct, zeta_coefficients, HodgeCoefficientTable, HodgeJson,
};
pub use engine::{is_stable, Recursion};
pub use kernel::Kernel;
pub use tensor::{distinct_permutations, CorrelatorTensor, EntryJson, TensorJson};

use crate::curve::MirrorCurve;
use crate::error::Result;
use crate::exactmath::{Field, Framing};

/// Default series order for genus `g` and `n` points: `6g + 2n + margin`.
pub fn default_order(g: u32, n: u32, margin: i64) -> i64 {
    6 * g as i64 + 2 * n as i64 + margin
}

/// Runs `job` at `order`; on a precision failure, once more at `order + 4`.
pub fn with_retry<T>(order: i64, mut job: impl FnMut(i64) -> Result<T>) -> Result<T> {
    match job(order) {
        Err(e) if e.is_precision() => job(order + 4),
        other => other,
    }
}

/// A recursion engine on a freshly built curve.
pub fn engine<F: Field>(framing: &Framing, order: i64) -> Result<Recursion<F>> {
    Recursion::new(MirrorCurve::build(framing, order)?)
}

/// `F_2, ..., F_{g_max}` from one engine, with the precision retry.
pub fn free_energies<F: Field>(framing: &Framing, g_max: u32, margin: i64) -> Result<Vec<F>> {
    with_retry(default_order(g_max, 1, margin), |order| {
        let mut r = engine::<F>(framing, order)?;
        (2..=g_max).map(|g| r.free_energy(g)).collect()
    })
}

/// The zeta-basis table of `W^g_n`, with the precision retry.
pub fn hodge_table<F: Field>(
    framing: &Framing,
    g: u32,
    n: u32,
    margin: i64,
) -> Result<HodgeCoefficientTable<F>> {
    with_retry(default_order(g, n, margin), |order| {
        let mut r = engine::<F>(framing, order)?;
        let t = r.correlator(g, n)?;
        decompose_in_zeta_basis(r.curve(), &t)
    })
}
