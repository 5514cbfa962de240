//! Discretized boxcar baths and the star-geometry single-particle Hamiltonians
//! of the resonant level model (one bath) and the voltage-biased junction
//! (two baths).
//!
//! Units: `ħ = k_B = 1`. Energies are usually quoted in units of `k_B T`
//! (so `β = 1`) but nothing here assumes that.
//!
//! A bath of `K` levels spans `[-W/2, W/2]` with both endpoints included, so the
//! spacing is `W/(K-1)`. Every level couples to the impurity with the same
//! positive real amplitude `t = sqrt(Γ W / (2π (K-1)))`, which reproduces a flat
//! spectral density of height `Γ` in the continuum limit.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::gaussian::CorrelationMatrix;
use crate::linalg::RMatrix;

/// Which reservoir a bath mode belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reservoir {
    Single,
    Left,
    Right,
}

/// Identity of a single-particle mode. Index 0 of every model is the system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModeLabel {
    System,
    /// Bare bath level `level` (0-based, ascending energy) of `reservoir`.
    Bath {
        reservoir: Reservoir,
        level: usize,
    },
    /// `n`-th site of the chain obtained by tridiagonalizing the bath.
    Chain(usize),
    /// Anonymous mode, used for matrices not built from a model.
    Site(usize),
}

/// Fermi-Dirac occupation `1/(1 + exp(β(ε − μ)))`, evaluated without overflow.
pub fn fermi_dirac(energy: f64, beta: f64, mu: f64) -> f64 {
    let x = beta * (energy - mu);
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BathSpec {
    pub bandwidth: f64,
    pub levels: usize,
    pub coupling: f64,
    pub beta: f64,
    pub mu: f64,
}

impl BathSpec {
    pub fn new(bandwidth: f64, levels: usize, coupling: f64, beta: f64, mu: f64) -> Result<Self> {
        let spec = Self {
            bandwidth,
            levels,
            coupling,
            beta,
            mu,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        validate_grid(self.bandwidth, self.levels)?;
        if !(self.coupling >= 0.0 && self.coupling.is_finite()) {
            return Err(Error::param(
                "coupling",
                format!("Γ must be finite and ≥ 0, got {}", self.coupling),
            ));
        }
        validate_beta(self.beta)?;
        if !self.mu.is_finite() {
            return Err(Error::param("mu", "chemical potential must be finite"));
        }
        Ok(())
    }

    pub fn level_energies(&self) -> Vec<f64> {
        level_grid(self.bandwidth, self.levels)
    }

    pub fn tunnel_amplitude(&self) -> f64 {
        tunnel_amplitude(self.coupling, self.bandwidth, self.levels)
    }

    pub fn occupation(&self, energy: f64) -> f64 {
        fermi_dirac(energy, self.beta, self.mu)
    }
}

fn validate_grid(bandwidth: f64, levels: usize) -> Result<()> {
    if !(bandwidth > 0.0 && bandwidth.is_finite()) {
        return Err(Error::param(
            "bandwidth",
            format!("W must be finite and > 0, got {bandwidth}"),
        ));
    }
    if levels < 2 {
        return Err(Error::param("levels", format!("K must be at least 2, got {levels}")));
    }
    Ok(())
}

fn validate_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::param("beta", format!("β must be finite and > 0, got {beta}")));
    }
    Ok(())
}

/// Endpoint-inclusive uniform grid on `[-W/2, W/2]`.
pub fn level_grid(bandwidth: f64, levels: usize) -> Vec<f64> {
    let last = (levels - 1) as f64;
    (0..levels)
        .map(|k| bandwidth * (k as f64 / last) - 0.5 * bandwidth)
        .collect()
}

/// Amplitude `t` solving `Γ = 2π t² (K−1) / W`.
pub fn tunnel_amplitude(coupling: f64, bandwidth: f64, levels: usize) -> f64 {
    (coupling * bandwidth / (2.0 * PI * (levels - 1) as f64)).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImpuritySpec {
    pub epsilon0: f64,
    pub n0_initial: f64,
}

impl ImpuritySpec {
    pub fn new(epsilon0: f64, n0_initial: f64) -> Result<Self> {
        let spec = Self { epsilon0, n0_initial };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.epsilon0.is_finite() {
            return Err(Error::param("epsilon0", "level energy must be finite"));
        }
        if !(0.0..=1.0).contains(&self.n0_initial) {
            return Err(Error::param(
                "n0_initial",
                format!("initial occupation must lie in [0, 1], got {}", self.n0_initial),
            ));
        }
        Ok(())
    }
}

/// Impurity between a left and a right bath with `μ_{L,R} = μ̄ ± V/2` and
/// `Γ_{L,R} = (1 ± a) Γ`. Both baths share the same level grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JunctionSpec {
    pub impurity: ImpuritySpec,
    pub mu_bar: f64,
    pub voltage: f64,
    pub asymmetry: f64,
    pub gamma: f64,
    pub bandwidth: f64,
    pub levels_per_bath: usize,
    pub beta: f64,
}

impl JunctionSpec {
    pub fn validate(&self) -> Result<()> {
        self.impurity.validate()?;
        validate_grid(self.bandwidth, self.levels_per_bath)?;
        validate_beta(self.beta)?;
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::param(
                "gamma",
                format!("Γ must be finite and ≥ 0, got {}", self.gamma),
            ));
        }
        if self.asymmetry.is_nan() || self.asymmetry.abs() > 1.0 {
            return Err(Error::param(
                "asymmetry",
                format!("coupling asymmetry must satisfy |a| ≤ 1, got {}", self.asymmetry),
            ));
        }
        if !(self.mu_bar.is_finite() && self.voltage.is_finite()) {
            return Err(Error::param("voltage", "μ̄ and V must be finite"));
        }
        Ok(())
    }

    pub fn mu_left(&self) -> f64 {
        self.mu_bar + 0.5 * self.voltage
    }

    pub fn mu_right(&self) -> f64 {
        self.mu_bar - 0.5 * self.voltage
    }

    pub fn gamma_left(&self) -> f64 {
        ((1.0 + self.asymmetry) * self.gamma).max(0.0)
    }

    pub fn gamma_right(&self) -> f64 {
        ((1.0 - self.asymmetry) * self.gamma).max(0.0)
    }

    pub fn level_energies(&self) -> Vec<f64> {
        level_grid(self.bandwidth, self.levels_per_bath)
    }
}

/// Real symmetric single-particle Hamiltonian in star geometry: the system
/// (mode 0) couples to every bath mode, bath modes are mutually uncoupled.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleParticleHamiltonian {
    matrix: RMatrix,
    modes: Vec<ModeLabel>,
}

impl SingleParticleHamiltonian {
    /// Wraps an arbitrary real symmetric matrix. Star geometry is not enforced.
    pub fn from_matrix(matrix: RMatrix, modes: Vec<ModeLabel>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() != modes.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} Hamiltonian with {} mode labels",
                matrix.nrows(),
                matrix.ncols(),
                modes.len()
            )));
        }
        let residual = (&matrix - matrix.transpose()).amax();
        if residual > 1e-12 * matrix.amax().max(1.0) {
            return Err(Error::NotHermitian { residual });
        }
        Ok(Self { matrix, modes })
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.modes
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// Single bath: `(1+K)×(1+K)` with `H_00 = ε_0`, `H_kk = ε_k`, `H_0k = t`.
pub fn build_single_bath(impurity: &ImpuritySpec, bath: &BathSpec) -> Result<SingleParticleHamiltonian> {
    impurity.validate()?;
    bath.validate()?;
    let energies = bath.level_energies();
    let t = bath.tunnel_amplitude();
    let dim = 1 + bath.levels;
    let mut h = DMatrix::zeros(dim, dim);
    h[(0, 0)] = impurity.epsilon0;
    for (k, &e) in energies.iter().enumerate() {
        h[(k + 1, k + 1)] = e;
        h[(0, k + 1)] = t;
        h[(k + 1, 0)] = t;
    }
    let modes = std::iter::once(ModeLabel::System)
        .chain((0..bath.levels).map(|level| ModeLabel::Bath {
            reservoir: Reservoir::Single,
            level,
        }))
        .collect();
    Ok(SingleParticleHamiltonian { matrix: h, modes })
}

/// Two baths: modes `1..=K` are the left bath, `K+1..=2K` the right bath.
pub fn build_junction(spec: &JunctionSpec) -> Result<SingleParticleHamiltonian> {
    spec.validate()?;
    let k = spec.levels_per_bath;
    let energies = spec.level_energies();
    let t_left = tunnel_amplitude(spec.gamma_left(), spec.bandwidth, k);
    let t_right = tunnel_amplitude(spec.gamma_right(), spec.bandwidth, k);
    let dim = 1 + 2 * k;
    let mut h = DMatrix::zeros(dim, dim);
    h[(0, 0)] = spec.impurity.epsilon0;
    for (level, &e) in energies.iter().enumerate() {
        for (offset, t) in [(1, t_left), (1 + k, t_right)] {
            let i = offset + level;
            h[(i, i)] = e;
            h[(0, i)] = t;
            h[(i, 0)] = t;
        }
    }
    Ok(SingleParticleHamiltonian {
        matrix: h,
        modes: junction_modes(k),
    })
}

fn junction_modes(k: usize) -> Vec<ModeLabel> {
    let bath = |reservoir| (0..k).map(move |level| ModeLabel::Bath { reservoir, level });
    std::iter::once(ModeLabel::System)
        .chain(bath(Reservoir::Left))
        .chain(bath(Reservoir::Right))
        .collect()
}

/// `diag[n_0(0), f(ε_1), …, f(ε_K)]`: product of the prepared impurity and a
/// thermal bath.
pub fn initial_correlation_matrix_single(impurity: &ImpuritySpec, bath: &BathSpec) -> Result<CorrelationMatrix> {
    impurity.validate()?;
    bath.validate()?;
    let diag: Vec<f64> = std::iter::once(impurity.n0_initial)
        .chain(bath.level_energies().into_iter().map(|e| bath.occupation(e)))
        .collect();
    let modes = std::iter::once(ModeLabel::System)
        .chain((0..bath.levels).map(|level| ModeLabel::Bath {
            reservoir: Reservoir::Single,
            level,
        }))
        .collect();
    CorrelationMatrix::diagonal(&diag, modes)
}

/// `diag[n_0(0), f_L(ε_1..K), f_R(ε_1..K)]`.
pub fn initial_correlation_matrix_junction(spec: &JunctionSpec) -> Result<CorrelationMatrix> {
    spec.validate()?;
    let energies = spec.level_energies();
    let (mu_l, mu_r) = (spec.mu_left(), spec.mu_right());
    let diag: Vec<f64> = std::iter::once(spec.impurity.n0_initial)
        .chain(energies.iter().map(|&e| fermi_dirac(e, spec.beta, mu_l)))
        .chain(energies.iter().map(|&e| fermi_dirac(e, spec.beta, mu_r)))
        .collect();
    CorrelationMatrix::diagonal(&diag, junction_modes(spec.levels_per_bath))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bath(gamma: f64, w_over_gamma: f64, k: usize) -> BathSpec {
        BathSpec::new(w_over_gamma * gamma, k, gamma, 1.0, 0.0).unwrap()
    }

    #[test]
    fn coupling_for_wide_band_example() {
        // W = 50Γ, K = 400 at Γ = 1: t = sqrt(50 / (2π·399)).
        let b = bath(1.0, 50.0, 400);
        let h = build_single_bath(&ImpuritySpec::new(0.0, 0.0).unwrap(), &b).unwrap();
        let expected = (50.0 / (2.0 * PI * 399.0)).sqrt();
        assert!((expected - 0.141224).abs() < 1e-6);
        for k in 1..=400 {
            assert!((h.matrix()[(0, k)] - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn coupling_formula_consistency() {
        for &(gamma, w, k) in &[(0.01, 0.5, 400), (3.0, 15.0, 7), (0.2, 10.0, 2)] {
            let b = BathSpec::new(w, k, gamma, 1.0, 0.0).unwrap();
            let t = b.tunnel_amplitude();
            let back = 2.0 * PI * t * t * (k - 1) as f64 / w;
            assert!(((back - gamma) / gamma).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_coupling_is_diagonal() {
        let b = BathSpec::new(10.0, 9, 0.0, 1.0, 0.0).unwrap();
        let h = build_single_bath(&ImpuritySpec::new(0.3, 0.0).unwrap(), &b).unwrap();
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                if i != j {
                    assert_eq!(h.matrix()[(i, j)], 0.0);
                }
            }
        }
    }

    #[test]
    fn two_level_grid_hits_endpoints() {
        assert_eq!(level_grid(2.0, 2), vec![-1.0, 1.0]);
        let g = level_grid(50.0, 400);
        assert_eq!(g[0], -25.0);
        assert_eq!(g[399], 25.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let spacing = 50.0 / 399.0;
        assert!(g.windows(2).all(|w| (w[1] - w[0] - spacing).abs() < 1e-12));
    }

    #[test]
    fn rejects_bad_bath() {
        assert!(BathSpec::new(1.0, 1, 1.0, 1.0, 0.0).is_err());
        assert!(BathSpec::new(0.0, 4, 1.0, 1.0, 0.0).is_err());
        assert!(BathSpec::new(-1.0, 4, 1.0, 1.0, 0.0).is_err());
        assert!(BathSpec::new(1.0, 4, 1.0, 0.0, 0.0).is_err());
        assert!(BathSpec::new(1.0, 4, -1.0, 1.0, 0.0).is_err());
        assert!(ImpuritySpec::new(0.0, 1.2).is_err());
    }

    fn junction(a: f64, v: f64) -> JunctionSpec {
        JunctionSpec {
            impurity: ImpuritySpec::new(0.0, 0.5).unwrap(),
            mu_bar: 0.0,
            voltage: v,
            asymmetry: a,
            gamma: 0.5,
            bandwidth: 5.0,
            levels_per_bath: 6,
            beta: 1.0,
        }
    }

    #[test]
    fn symmetric_junction_columns_match() {
        let h = build_junction(&junction(0.0, 2.0)).unwrap();
        for k in 1..=6 {
            assert_eq!(h.matrix()[(0, k)], h.matrix()[(0, k + 6)]);
            assert_eq!(h.matrix()[(k, k)], h.matrix()[(k + 6, k + 6)]);
        }
        assert_eq!(h.dim(), 13);
    }

    #[test]
    fn fully_asymmetric_junction_decouples_right_bath() {
        let h = build_junction(&junction(1.0, 2.0)).unwrap();
        for k in 7..=12 {
            assert_eq!(h.matrix()[(0, k)], 0.0);
        }
        assert!(h.matrix()[(0, 1)] > 0.0);
    }

    #[test]
    fn rejects_excess_asymmetry() {
        let err = build_junction(&junction(1.5, 0.0)).unwrap_err();
        assert!(err.to_string().contains("asymmetry"));
    }

    #[test]
    fn chemical_potentials_split_by_voltage() {
        let j = junction(0.0, 2.0);
        assert_eq!(j.mu_left(), 1.0);
        assert_eq!(j.mu_right(), -1.0);
    }

    #[test]
    fn initial_single_bath_limits() {
        let imp = ImpuritySpec::new(0.0, 0.0).unwrap();
        let hot = BathSpec::new(50.0, 40, 1.0, 1e-9, 0.0).unwrap();
        let c = initial_correlation_matrix_single(&imp, &hot).unwrap();
        for k in 1..=40 {
            assert!((c.matrix()[(k, k)].re - 0.5).abs() < 1e-7);
        }
        let filled = BathSpec::new(50.0, 40, 1.0, 1.0, 1e6).unwrap();
        let c = initial_correlation_matrix_single(&imp, &filled).unwrap();
        for k in 1..=40 {
            assert!((c.matrix()[(k, k)].re - 1.0).abs() < 1e-12);
        }
        let imp = ImpuritySpec::new(0.235, 0.1).unwrap();
        let fig5 = BathSpec::new(0.5, 400, 0.01, 1.0, 1.235).unwrap();
        let c = initial_correlation_matrix_single(&imp, &fig5).unwrap();
        assert_eq!(c.matrix()[(0, 0)].re, 0.1);
    }

    #[test]
    fn initial_junction_blocks() {
        let c = initial_correlation_matrix_junction(&junction(0.0, 0.0)).unwrap();
        for k in 1..=6 {
            assert_eq!(c.matrix()[(k, k)], c.matrix()[(k + 6, k + 6)]);
        }
        assert_eq!(c.matrix()[(0, 0)].re, 0.5);

        // f_L(0) at μ_L = +1: 1/(1 + e^{-1}).
        let mut j = junction(0.0, 2.0);
        j.levels_per_bath = 3;
        let c = initial_correlation_matrix_junction(&j).unwrap();
        let expected = 1.0 / (1.0 + (-1.0_f64).exp());
        assert!((c.matrix()[(2, 2)].re - expected).abs() < 1e-15);
        assert!((expected - 0.7311).abs() < 1e-4);
    }

    #[test]
    fn fermi_is_stable_at_extremes() {
        assert_eq!(fermi_dirac(1e6, 1.0, 0.0), 0.0);
        assert_eq!(fermi_dirac(-1e6, 1.0, 0.0), 1.0);
        assert_eq!(fermi_dirac(3.0, 0.0, 0.0), 0.5);
        assert!((fermi_dirac(1.0, 1.0, 0.0) + fermi_dirac(-1.0, 1.0, 0.0) - 1.0).abs() < 1e-15);
    }
}
