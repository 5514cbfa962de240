//! Partial transposition in the occupation-number tensor factorization and the
//! resulting entanglement negativity.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

use super::{mode_bit, FockDensityMatrix};

/// Eigenvalues of the partial transpose above `-τ` count as nonnegative.
pub const NEGATIVITY_THRESHOLD: f64 = 1e-12;

/// Off-block entries below this are treated as exact zeros when splitting the
/// partial transpose into charge sectors.
const BLOCK_LEAKAGE: f64 = 1e-13;

fn partition_mask(m: usize, b_modes: &[usize]) -> Result<usize> {
    if b_modes.is_empty() || b_modes.len() >= m {
        return Err(Error::InvalidPartition(format!(
            "subsystem B must contain between 1 and {} of the {m} modes, got {}",
            m.saturating_sub(1),
            b_modes.len()
        )));
    }
    let mut mask = 0usize;
    for &mode in b_modes {
        if mode >= m {
            return Err(Error::ModeOutOfRange { index: mode, modes: m });
        }
        let bit = mode_bit(mode, m);
        if mask & bit != 0 {
            return Err(Error::DuplicateMode(mode));
        }
        mask |= bit;
    }
    Ok(mask)
}

/// `ρ^{T_B}`: transposes the indices of the modes in `b_modes`.
///
/// For `b_modes = 1..m` this is the 2×2 block form `[[γ₀₀ᵀ, γ₀₁ᵀ], [γ₁₀ᵀ, γ₁₁ᵀ]]`
/// with system blocks `γ` of size `2^{m-1}`.
pub fn partial_transpose(rho: &FockDensityMatrix, b_modes: &[usize]) -> Result<CMatrix> {
    let mask = partition_mask(rho.mode_count(), b_modes)?;
    Ok(transpose_with_mask(rho.matrix(), mask))
}

fn transpose_with_mask(a: &CMatrix, mask: usize) -> CMatrix {
    let keep = !mask;
    CMatrix::from_fn(a.nrows(), a.ncols(), |r, c| {
        let rr = (r & keep) | (c & mask);
        let cc = (c & keep) | (r & mask);
        a[(rr, cc)]
    })
}

/// `Σ_{λ < −τ} |λ|`.
pub fn negativity_from_eigenvalues(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&x| x < -NEGATIVITY_THRESHOLD)
        .fold(0.0, |acc, x| acc - x)
}

/// Negativity between the system (mode 0) and all remaining modes.
pub fn negativity(rho: &FockDensityMatrix) -> f64 {
    let m = rho.mode_count();
    if m < 2 {
        return 0.0;
    }
    let bath: Vec<usize> = (1..m).collect();
    negativity_with_partition(rho, &bath).expect("system/bath partition is always valid")
}

/// Negativity for an arbitrary bipartition with `b_modes` as subsystem B.
///
/// For number-conserving states the partial transpose conserves
/// `N_A − N_B`, so it is diagonalized sector by sector when that structure is
/// present.
pub fn negativity_with_partition(rho: &FockDensityMatrix, b_modes: &[usize]) -> Result<f64> {
    let mask = partition_mask(rho.mode_count(), b_modes)?;
    let pt = transpose_with_mask(rho.matrix(), mask);
    Ok(negativity_from_eigenvalues(&pt_eigenvalues(&pt, mask)))
}

fn pt_eigenvalues(pt: &CMatrix, mask: usize) -> Vec<f64> {
    let charge = |s: usize| (s & !mask).count_ones() as i64 - (s & mask).count_ones() as i64;
    let mut blocks: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for s in 0..pt.nrows() {
        blocks.entry(charge(s)).or_default().push(s);
    }
    let mut leak = 0.0_f64;
    for r in 0..pt.nrows() {
        for c in 0..pt.ncols() {
            if charge(r) != charge(c) {
                leak = leak.max(pt[(r, c)].norm());
            }
        }
    }
    if leak > BLOCK_LEAKAGE {
        return linalg::hermitian_eigenvalues(pt);
    }
    let mut values = Vec::with_capacity(pt.nrows());
    for states in blocks.values() {
        let block = CMatrix::from_fn(states.len(), states.len(), |a, b| pt[(states[a], states[b])]);
        values.extend(linalg::hermitian_eigenvalues(&block));
    }
    values.sort_by(f64::total_cmp);
    values
}
