//! Experiment runners for the three physical regimes.
//!
//! Every runner evaluates one grid (a parameter sweep, or a time grid for the
//! dynamic scenarios) and returns a [`ScenarioResult`] whose rows hold the grid
//! value, the negativities and a few diagnostics. Times are in units of `Γ⁻¹`.

mod config;
mod sweep;

pub use config::{
    linear_grid, log_grid, validate_grid, BathParams, ChemicalPotential, JunctionParams, LevelPlacement, ModelParams,
    PointSpec, ReservoirParams, ScenarioConfig, ScenarioKind, Sweep, SweepVariable, TimeParams, DEFAULT_BETA,
    DEFAULT_CUTOFF, DEFAULT_EVALUATION_TIME, DEFAULT_MU_OFFSET, MAX_CANONICAL_LEVELS,
};
pub use sweep::{Progress, SweepEngine, WORKERS_ENV};

use crate::error::Result;
use crate::fock::{self, canonical_gibbs, grand_canonical_gibbs_fock, partial_negativities};
use crate::gaussian::{evolve, gibbs_correlation_matrix, mean_occupation, CorrelationMatrix, Evolution};
use crate::model::{
    build_junction, build_single_bath, initial_correlation_matrix_junction, initial_correlation_matrix_single,
    SingleParticleHamiltonian,
};

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioRow {
    /// Sweep value, or time in units of `Γ⁻¹`.
    pub x: f64,
    pub negativities: Vec<f64>,
    pub diagnostics: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioResult {
    /// The resolved configuration that produced the rows.
    pub config: ScenarioConfig,
    pub variable: SweepVariable,
    pub negativity_columns: Vec<String>,
    pub diagnostic_columns: Vec<String>,
    pub rows: Vec<ScenarioRow>,
}

impl ScenarioResult {
    pub fn headers(&self) -> Vec<String> {
        std::iter::once(self.variable.name().to_string())
            .chain(self.negativity_columns.iter().cloned())
            .chain(self.diagnostic_columns.iter().cloned())
            .collect()
    }

    pub fn xs(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.x).collect()
    }

    /// Values of the named negativity or diagnostic column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        if let Some(j) = self.negativity_columns.iter().position(|c| c == name) {
            return Some(self.rows.iter().map(|r| r.negativities[j]).collect());
        }
        let j = self.diagnostic_columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r.diagnostics[j]).collect())
    }
}

const DIAGNOSTICS: [&str; 2] = ["n_0", "particles"];

fn chain_columns(cutoff: usize) -> Vec<String> {
    (1..=cutoff).map(|j| format!("N_{j}")).collect()
}

fn diagnostics(c: &CorrelationMatrix) -> Vec<f64> {
    vec![mean_occupation(c, 0), c.trace()]
}

fn hamiltonian(spec: &PointSpec) -> Result<SingleParticleHamiltonian> {
    match spec {
        PointSpec::Single { impurity, bath } => build_single_bath(impurity, bath),
        PointSpec::Junction(j) => build_junction(j),
    }
}

fn initial_state(spec: &PointSpec) -> Result<CorrelationMatrix> {
    match spec {
        PointSpec::Single { impurity, bath } => initial_correlation_matrix_single(impurity, bath),
        PointSpec::Junction(j) => initial_correlation_matrix_junction(j),
    }
}

/// Validates `config` and dispatches on its kind.
pub fn run(config: &ScenarioConfig, engine: &SweepEngine, progress: Option<Progress<'_>>) -> Result<ScenarioResult> {
    config.validate()?;
    match config.kind {
        ScenarioKind::EquilibriumGc => equilibrium_gc(config, engine, progress),
        ScenarioKind::EquilibriumCanonical => equilibrium_canonical(config, engine, progress),
        ScenarioKind::Relaxation | ScenarioKind::Junction => dynamics(config, engine, progress),
    }
}

/// `N_1…N_M` of the grand-canonical Gibbs state at every sweep point.
pub fn run_equilibrium_gc(config: &ScenarioConfig) -> Result<ScenarioResult> {
    run(config, &SweepEngine::from_env(), None)
}

/// Full negativity of the canonical state (and optionally the
/// grand-canonical one on the same Hamiltonian) at every sweep point.
pub fn run_equilibrium_canonical(config: &ScenarioConfig) -> Result<ScenarioResult> {
    run(config, &SweepEngine::from_env(), None)
}

/// Impurity relaxation after coupling to a thermal bath.
pub fn run_relaxation(config: &ScenarioConfig) -> Result<ScenarioResult> {
    run(config, &SweepEngine::from_env(), None)
}

/// Voltage-driven junction, as a time series or at the evaluation time.
pub fn run_junction(config: &ScenarioConfig) -> Result<ScenarioResult> {
    run(config, &SweepEngine::from_env(), None)
}

fn equilibrium_gc(
    config: &ScenarioConfig,
    engine: &SweepEngine,
    progress: Option<Progress<'_>>,
) -> Result<ScenarioResult> {
    let (variable, grid) = config.grid();
    let cutoff = config.model.cutoff;
    let rows = engine.run(
        variable.name(),
        grid,
        |_, x| {
            let point = config.with_value(variable, x)?;
            let spec = point.point_spec()?;
            let PointSpec::Single { bath, .. } = &spec else {
                unreachable!("validated as single bath")
            };
            let c = gibbs_correlation_matrix(&hamiltonian(&spec)?, bath.beta, bath.mu)?;
            Ok(ScenarioRow {
                x,
                negativities: partial_negativities(&c, cutoff)?,
                diagnostics: diagnostics(&c),
            })
        },
        progress,
    )?;
    Ok(ScenarioResult {
        config: config.clone(),
        variable,
        negativity_columns: chain_columns(cutoff),
        diagnostic_columns: DIAGNOSTICS.map(String::from).to_vec(),
        rows,
    })
}

fn equilibrium_canonical(
    config: &ScenarioConfig,
    engine: &SweepEngine,
    progress: Option<Progress<'_>>,
) -> Result<ScenarioResult> {
    let (variable, grid) = config.grid();
    let particles = config.canonical_particles();
    let compare = config.model.compare_grand_canonical;
    let rows = engine.run(
        variable.name(),
        grid,
        |_, x| {
            let point = config.with_value(variable, x)?;
            let spec = point.point_spec()?;
            let PointSpec::Single { bath, .. } = &spec else {
                unreachable!("validated as single bath")
            };
            let h = hamiltonian(&spec)?;
            let rho = canonical_gibbs(&h, bath.beta, particles)?;
            let mut negativities = vec![fock::negativity(&rho)];
            if compare {
                negativities.push(fock::negativity(&grand_canonical_gibbs_fock(&h, bath.beta, bath.mu)?));
            }
            Ok(ScenarioRow {
                x,
                negativities,
                diagnostics: vec![rho.occupation(0), particles as f64],
            })
        },
        progress,
    )?;
    let mut negativity_columns = vec!["N_can".to_string()];
    if compare {
        negativity_columns.push("N_gc".to_string());
    }
    Ok(ScenarioResult {
        config: config.clone(),
        variable,
        negativity_columns,
        diagnostic_columns: DIAGNOSTICS.map(String::from).to_vec(),
        rows,
    })
}

fn dynamics(config: &ScenarioConfig, engine: &SweepEngine, progress: Option<Progress<'_>>) -> Result<ScenarioResult> {
    let (variable, grid) = config.grid();
    let cutoff = config.model.cutoff;
    let point_row = |x: f64, c: &CorrelationMatrix| -> Result<ScenarioRow> {
        Ok(ScenarioRow {
            x,
            negativities: partial_negativities(c, cutoff)?,
            diagnostics: diagnostics(c),
        })
    };

    let rows = if variable == crate::scenarios::SweepVariable::Time {
        // One eigendecomposition serves the whole time grid.
        let spec = config.point_spec()?;
        let gamma = spec.gamma();
        let initial = initial_state(&spec)?;
        let evolution = Evolution::new(&initial, &hamiltonian(&spec)?)?;
        engine.run(
            variable.name(),
            grid,
            |_, tau| {
                let c = if tau == 0.0 {
                    initial.clone()
                } else {
                    evolution.at(tau / gamma)
                };
                point_row(tau, &c)
            },
            progress,
        )?
    } else {
        engine.run(
            variable.name(),
            grid,
            |_, x| {
                let point = config.with_value(variable, x)?;
                let spec = point.point_spec()?;
                let t = point.time.evaluate_at / spec.gamma();
                let c = evolve(&initial_state(&spec)?, &hamiltonian(&spec)?, t)?;
                point_row(x, &c)
            },
            progress,
        )?
    };
    Ok(ScenarioResult {
        config: config.clone(),
        variable,
        negativity_columns: chain_columns(cutoff),
        diagnostic_columns: DIAGNOSTICS.map(String::from).to_vec(),
        rows,
    })
}
