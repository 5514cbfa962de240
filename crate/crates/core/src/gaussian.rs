//! Free-fermion (Gaussian) states described by their correlation matrix
//! `C_ij = Tr(ρ c_i† c_j)`: unitary dynamics, grand-canonical equilibrium, and
//! restriction to a subset of modes.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, RMatrix, C64};
use crate::model::{fermi_dirac, ModeLabel, SingleParticleHamiltonian};

/// Eigenvalues of a valid correlation matrix must lie in `[-TOL, 1 + TOL]`.
pub const SPECTRUM_TOLERANCE: f64 = 1e-10;

/// Hermitian correlation matrix with per-mode labels.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationMatrix {
    matrix: CMatrix,
    modes: Vec<ModeLabel>,
}

impl CorrelationMatrix {
    pub fn new(matrix: CMatrix, modes: Vec<ModeLabel>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() != modes.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} correlation matrix with {} mode labels",
                matrix.nrows(),
                matrix.ncols(),
                modes.len()
            )));
        }
        let residual = linalg::hermiticity_residual(&matrix);
        if residual > 1e-8 {
            return Err(Error::NotHermitian { residual });
        }
        Ok(Self { matrix, modes })
    }

    /// Labels modes as anonymous sites `0..m`.
    pub fn from_matrix(matrix: CMatrix) -> Result<Self> {
        let modes = (0..matrix.nrows()).map(ModeLabel::Site).collect();
        Self::new(matrix, modes)
    }

    pub fn diagonal(occupations: &[f64], modes: Vec<ModeLabel>) -> Result<Self> {
        let m = occupations.len();
        let matrix = CMatrix::from_fn(m, m, |i, j| {
            if i == j {
                C64::new(occupations[i], 0.0)
            } else {
                linalg::ZERO
            }
        });
        Self::new(matrix, modes)
    }

    pub(crate) fn from_parts_unchecked(matrix: CMatrix, modes: Vec<ModeLabel>) -> Self {
        Self { matrix, modes }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.modes
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Mean total particle number `Tr C`.
    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    /// Errors if any eigenvalue lies outside `[0, 1]` beyond [`SPECTRUM_TOLERANCE`].
    pub fn check_spectrum(&self) -> Result<()> {
        for value in self.eigenvalues() {
            if !(-SPECTRUM_TOLERANCE..=1.0 + SPECTRUM_TOLERANCE).contains(&value) {
                return Err(Error::EigenvalueOutOfRange { value });
            }
        }
        Ok(())
    }
}

/// `H = P diag(h) P^T` with ascending `h` and orthogonal `P`.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub energies: DVector<f64>,
    pub vectors: RMatrix,
}

impl SpectralDecomposition {
    pub fn of(h: &SingleParticleHamiltonian) -> Self {
        let (energies, vectors) = linalg::symmetric_eigen(h.matrix());
        Self { energies, vectors }
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn reconstruct(&self) -> RMatrix {
        &self.vectors * RMatrix::from_diagonal(&self.energies) * self.vectors.transpose()
    }
}

/// Exact evolution `C(t) = e^{iHt} C(0) e^{-iHt}` from a single diagonalization
/// of `H`. The initial state is stored in the eigenbasis of `H` so every time
/// point costs only a phase multiplication and one congruence.
#[derive(Clone, Debug)]
pub struct Evolution {
    spectrum: SpectralDecomposition,
    initial_re: RMatrix,
    initial_im: RMatrix,
    modes: Vec<ModeLabel>,
}

impl Evolution {
    pub fn new(initial: &CorrelationMatrix, h: &SingleParticleHamiltonian) -> Result<Self> {
        Self::with_spectrum(initial, SpectralDecomposition::of(h))
    }

    pub fn with_spectrum(initial: &CorrelationMatrix, spectrum: SpectralDecomposition) -> Result<Self> {
        if initial.dim() != spectrum.dim() {
            return Err(Error::DimensionMismatch(format!(
                "correlation matrix has {} modes, Hamiltonian has {}",
                initial.dim(),
                spectrum.dim()
            )));
        }
        let p = &spectrum.vectors;
        let pt = p.transpose();
        let c = initial.matrix();
        let re = c.map(|z| z.re);
        let im = c.map(|z| z.im);
        Ok(Self {
            initial_re: &pt * re * p,
            initial_im: &pt * im * p,
            spectrum,
            modes: initial.modes().to_vec(),
        })
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn at(&self, t: f64) -> CorrelationMatrix {
        let d = &self.spectrum.energies;
        let n = d.len();
        let mut re = RMatrix::zeros(n, n);
        let mut im = RMatrix::zeros(n, n);
        for b in 0..n {
            for a in 0..n {
                let (s, c) = ((d[a] - d[b]) * t).sin_cos();
                let (xr, xi) = (self.initial_re[(a, b)], self.initial_im[(a, b)]);
                re[(a, b)] = c * xr - s * xi;
                im[(a, b)] = s * xr + c * xi;
            }
        }
        let mut matrix = linalg::real_congruence(&self.spectrum.vectors, &re, &im);
        hermitize(&mut matrix);
        CorrelationMatrix::from_parts_unchecked(matrix, self.modes.clone())
    }
}

fn hermitize(a: &mut CMatrix) {
    let n = a.nrows();
    for j in 0..n {
        a[(j, j)].im = 0.0;
        for i in 0..j {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
}

/// One-shot `e^{iHt} C(0) e^{-iHt}`. Use [`Evolution`] for a time grid.
pub fn evolve(initial: &CorrelationMatrix, h: &SingleParticleHamiltonian, t: f64) -> Result<CorrelationMatrix> {
    if t == 0.0 {
        if initial.dim() != h.dim() {
            return Err(Error::DimensionMismatch(format!(
                "correlation matrix has {} modes, Hamiltonian has {}",
                initial.dim(),
                h.dim()
            )));
        }
        return Ok(initial.clone());
    }
    Ok(Evolution::new(initial, h)?.at(t))
}

/// Correlation matrix of `e^{-β(Ĥ - μN̂)}/Z`, i.e. `P diag[f(h_k)] P^T`.
///
/// `β = 0` is accepted and gives the infinite-temperature state `𝟙/2`.
pub fn gibbs_correlation_matrix(h: &SingleParticleHamiltonian, beta: f64, mu: f64) -> Result<CorrelationMatrix> {
    gibbs_from_spectrum(&SpectralDecomposition::of(h), h.modes().to_vec(), beta, mu)
}

pub fn gibbs_from_spectrum(
    spectrum: &SpectralDecomposition,
    modes: Vec<ModeLabel>,
    beta: f64,
    mu: f64,
) -> Result<CorrelationMatrix> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::param("beta", format!("β must be finite and ≥ 0, got {beta}")));
    }
    let occupations = spectrum.energies.map(|e| fermi_dirac(e, beta, mu));
    let p = &spectrum.vectors;
    let real = p * RMatrix::from_diagonal(&occupations) * p.transpose();
    let mut matrix = linalg::to_complex(&real);
    hermitize(&mut matrix);
    Ok(CorrelationMatrix::from_parts_unchecked(matrix, modes))
}

/// Principal submatrix on `indices` (in the given order). For a Gaussian state
/// this is the correlation matrix of the reduced state.
pub fn reduce_modes(c: &CorrelationMatrix, indices: &[usize]) -> Result<CorrelationMatrix> {
    let m = c.dim();
    let mut seen = vec![false; m];
    for &i in indices {
        if i >= m {
            return Err(Error::ModeOutOfRange { index: i, modes: m });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::DuplicateMode(i));
        }
    }
    let n = indices.len();
    let matrix = DMatrix::from_fn(n, n, |a, b| c.matrix()[(indices[a], indices[b])]);
    let modes = indices.iter().map(|&i| c.modes()[i]).collect();
    Ok(CorrelationMatrix::from_parts_unchecked(matrix, modes))
}

/// `Re C_ii` clamped to `[0, 1]`. Panics if `i` is out of range.
pub fn mean_occupation(c: &CorrelationMatrix, i: usize) -> f64 {
    c.matrix()[(i, i)].re.clamp(0.0, 1.0)
}
