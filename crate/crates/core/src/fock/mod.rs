//! Many-body layer on the `2^m`-dimensional occupation-number space.
//!
//! Basis states are bitstrings with mode 0 as the most significant bit, so the
//! system is the leftmost tensor factor and a density matrix splits into 2×2
//! blocks of bath operators. Creation operators carry the Jordan-Wigner string
//! over all modes with a smaller index, which makes
//! `|n⟩ = c_{i1}† c_{i2}† ⋯ |0⟩` (with `i1 < i2 < ⋯`) sign-free.

mod gaussian_state;
mod pipeline;
mod thermal;
mod transpose;

pub use gaussian_state::{density_matrix_from_correlations, EIGENVALUE_CLAMP};
pub use pipeline::{chain_negativities, full_negativity, partial_negativities, partial_negativity, MAX_CUTOFF};
pub use thermal::{canonical_gibbs, grand_canonical_gibbs_fock, ManyBodySpectrum, SlaterSector};
pub use transpose::{
    negativity, negativity_from_eigenvalues, negativity_with_partition, partial_transpose, NEGATIVITY_THRESHOLD,
};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};
use crate::model::ModeLabel;

/// Largest mode count accepted by Fock-space constructions (dimension 16384).
pub const MAX_FOCK_MODES: usize = 14;

pub(crate) fn check_mode_count(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::DimensionMismatch("at least one mode is required".into()));
    }
    if m > MAX_FOCK_MODES {
        return Err(Error::TooManyModes {
            modes: m,
            limit: MAX_FOCK_MODES,
        });
    }
    Ok(())
}

#[inline]
pub(crate) fn mode_bit(mode: usize, m: usize) -> usize {
    1 << (m - 1 - mode)
}

/// Whether `mode` is occupied in basis state `state` of an `m`-mode space.
#[inline]
pub fn occupied(state: usize, mode: usize, m: usize) -> bool {
    state & mode_bit(mode, m) != 0
}

/// Number of occupied modes with index below `mode`.
#[inline]
fn occupied_before(state: usize, mode: usize, m: usize) -> u32 {
    (state >> (m - mode)).count_ones()
}

/// `c_i† c_j |state⟩ = sign |target⟩`, or `None` if the result vanishes.
pub(crate) fn hop(state: usize, i: usize, j: usize, m: usize) -> Option<(usize, f64)> {
    let bj = mode_bit(j, m);
    if state & bj == 0 {
        return None;
    }
    let removed = state ^ bj;
    let bi = mode_bit(i, m);
    if removed & bi != 0 {
        return None;
    }
    let flips = occupied_before(state, j, m) + occupied_before(removed, i, m);
    let sign = if flips.is_multiple_of(2) { 1.0 } else { -1.0 };
    Some((removed | bi, sign))
}

/// Basis states of `m` modes grouped by particle number, ascending within each
/// group.
pub(crate) fn sectors(m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); m + 1];
    for state in 0..1usize << m {
        out[state.count_ones() as usize].push(state);
    }
    out
}

/// Dense density matrix on the occupation-number space of `m` modes.
#[derive(Clone, Debug, PartialEq)]
pub struct FockDensityMatrix {
    matrix: CMatrix,
    modes: Vec<ModeLabel>,
}

impl FockDensityMatrix {
    pub fn new(matrix: CMatrix, modes: Vec<ModeLabel>) -> Result<Self> {
        check_mode_count(modes.len())?;
        let dim = 1usize << modes.len();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} density matrix for {} modes (expected {dim})",
                matrix.nrows(),
                matrix.ncols(),
                modes.len()
            )));
        }
        let residual = linalg::hermiticity_residual(&matrix);
        if residual > 1e-10 {
            return Err(Error::NotHermitian { residual });
        }
        Ok(Self { matrix, modes })
    }

    pub(crate) fn from_parts_unchecked(matrix: CMatrix, modes: Vec<ModeLabel>) -> Self {
        Self { matrix, modes }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.modes
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::hermitian_eigenvalues(&self.matrix)[0]
    }

    /// Two-point functions `Tr(ρ c_i† c_j)`.
    pub fn correlations(&self) -> CMatrix {
        let m = self.mode_count();
        let mut c = CMatrix::zeros(m, m);
        for state in 0..self.dim() {
            for i in 0..m {
                for j in 0..m {
                    if let Some((target, sign)) = hop(state, i, j, m) {
                        // Tr(ρ O) = Σ_n ρ[n', n] ⟨n'|O|n⟩.
                        c[(i, j)] += self.matrix[(state, target)] * sign;
                    }
                }
            }
        }
        c
    }

    /// `⟨c_i† c_i⟩`.
    pub fn occupation(&self, mode: usize) -> f64 {
        let m = self.mode_count();
        (0..self.dim())
            .filter(|&s| occupied(s, mode, m))
            .map(|s| self.matrix[(s, s)].re)
            .sum()
    }

    /// `max |[ρ, N̂]|`; zero for states with a definite particle-number structure.
    pub fn number_commutator_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for j in 0..n {
            for i in 0..n {
                let dn = j.count_ones() as f64 - i.count_ones() as f64;
                worst = worst.max((self.matrix[(i, j)] * C64::new(dn, 0.0)).norm());
            }
        }
        worst
    }
}
