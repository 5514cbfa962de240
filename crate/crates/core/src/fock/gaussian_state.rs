use crate::error::{Error, Result};
use crate::gaussian::{CorrelationMatrix, SPECTRUM_TOLERANCE};
use crate::linalg::{self, CMatrix, RMatrix, C64};

use super::{check_mode_count, hop, sectors, FockDensityMatrix};

/// Correlation eigenvalues are clamped into `[ε, 1 − ε]` before the logarithm.
pub const EIGENVALUE_CLAMP: f64 = 1e-12;

/// Gaussian state `ρ ∝ exp(−Σ_ij h_ij c_i† c_j)` with `Tr(ρ c_i† c_j) = C_ij`.
///
/// With `C_ij = ⟨c_i† c_j⟩` the one-body matrix is `h = ln[(𝟙 − Cᵀ)(Cᵀ)⁻¹]`,
/// built spectrally from the eigen-decomposition of `Cᵀ` with clamped
/// eigenvalues. The quadratic form is assembled in each particle-number sector,
/// diagonalized there, and exponentiated.
pub fn density_matrix_from_correlations(c: &CorrelationMatrix) -> Result<FockDensityMatrix> {
    let m = c.dim();
    check_mode_count(m)?;

    let (occupations, vectors) = linalg::hermitian_eigen(&c.matrix().transpose());
    for &value in occupations.iter() {
        if !(-SPECTRUM_TOLERANCE..=1.0 + SPECTRUM_TOLERANCE).contains(&value) {
            return Err(Error::EigenvalueOutOfRange { value });
        }
    }
    let log_ratio = occupations.map(|n| {
        let n = n.clamp(EIGENVALUE_CLAMP, 1.0 - EIGENVALUE_CLAMP);
        ((1.0 - n) / n).ln()
    });
    let h = &vectors * linalg::to_complex(&RMatrix::from_diagonal(&log_ratio)) * vectors.adjoint();

    let dim = 1usize << m;
    let mut position = vec![0usize; dim];
    let blocks = sectors(m);
    let mut diagonalized = Vec::with_capacity(blocks.len());
    for states in &blocks {
        for (p, &s) in states.iter().enumerate() {
            position[s] = p;
        }
        let size = states.len();
        let mut q = CMatrix::zeros(size, size);
        for (col, &state) in states.iter().enumerate() {
            for i in 0..m {
                for j in 0..m {
                    if let Some((target, sign)) = hop(state, i, j, m) {
                        q[(position[target], col)] += h[(i, j)] * sign;
                    }
                }
            }
        }
        diagonalized.push(linalg::hermitian_eigen(&q));
    }

    let lowest = diagonalized
        .iter()
        .map(|(values, _)| values[0])
        .fold(f64::INFINITY, f64::min);
    let mut rho = CMatrix::zeros(dim, dim);
    let mut partition = 0.0;
    for (states, (values, vecs)) in blocks.iter().zip(&diagonalized) {
        let weights = values.map(|q| (lowest - q).exp());
        partition += weights.sum();
        let scaled = CMatrix::from_fn(vecs.nrows(), vecs.ncols(), |r, k| vecs[(r, k)] * weights[k]);
        let block = scaled * vecs.adjoint();
        for (a, &sa) in states.iter().enumerate() {
            for (b, &sb) in states.iter().enumerate() {
                rho[(sa, sb)] = block[(a, b)];
            }
        }
    }
    rho /= C64::new(partition, 0.0);
    Ok(FockDensityMatrix::from_parts_unchecked(rho, c.modes().to_vec()))
}
