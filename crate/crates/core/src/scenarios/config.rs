//! Resolved (validated, defaults applied) scenario configuration.
//!
//! All energies are in units of `k_B T` at `β = 1`; bandwidths are given in
//! units of the coupling `Γ` (so `W = bandwidth · Γ`), and times in units of
//! `Γ⁻¹`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{BathSpec, ImpuritySpec, JunctionSpec};

pub const DEFAULT_CUTOFF: usize = 4;
pub const DEFAULT_BETA: f64 = 1.0;
/// Fixed evaluation time (units of `Γ⁻¹`) standing in for the steady state.
pub const DEFAULT_EVALUATION_TIME: f64 = 10.0;
/// Default relaxation offset `μ − ε_0` in units of `k_B T`.
pub const DEFAULT_MU_OFFSET: f64 = 1.0;
/// Canonical states are built in Fock space; `1 + K` modes must stay within this.
pub const MAX_CANONICAL_LEVELS: usize = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    EquilibriumGc,
    EquilibriumCanonical,
    Relaxation,
    Junction,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::EquilibriumGc => "equilibrium_gc",
            ScenarioKind::EquilibriumCanonical => "equilibrium_canonical",
            ScenarioKind::Relaxation => "relaxation",
            ScenarioKind::Junction => "junction",
        }
    }

    pub fn is_dynamic(self) -> bool {
        matches!(self, ScenarioKind::Relaxation | ScenarioKind::Junction)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    Gamma,
    Mu,
    MuOffset,
    Epsilon0,
    Delta,
    Bandwidth,
    Beta,
    N0Initial,
    MuBar,
    Voltage,
    Asymmetry,
    Time,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::Gamma => "gamma",
            SweepVariable::Mu => "mu",
            SweepVariable::MuOffset => "mu_offset",
            SweepVariable::Epsilon0 => "epsilon0",
            SweepVariable::Delta => "delta",
            SweepVariable::Bandwidth => "bandwidth",
            SweepVariable::Beta => "beta",
            SweepVariable::N0Initial => "n0_initial",
            SweepVariable::MuBar => "mu_bar",
            SweepVariable::Voltage => "voltage",
            SweepVariable::Asymmetry => "asymmetry",
            SweepVariable::Time => "time",
        }
    }
}

/// Impurity level: absolute, or at distance `δ·Γ` below the upper band edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LevelPlacement {
    Absolute(f64),
    BelowBandEdge(f64),
}

/// Bath chemical potential: absolute, or offset from the impurity level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChemicalPotential {
    Absolute(f64),
    AboveLevel(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelParams {
    pub beta: f64,
    pub level: LevelPlacement,
    pub n0_initial: f64,
    pub cutoff: usize,
    pub canonical_n: Option<usize>,
    pub compare_grand_canonical: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BathParams {
    pub gamma: f64,
    /// `W / Γ`.
    pub bandwidth: f64,
    pub levels: usize,
    pub mu: ChemicalPotential,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JunctionParams {
    pub gamma: f64,
    /// `W / Γ`.
    pub bandwidth: f64,
    pub levels: usize,
    pub mu_bar: f64,
    pub voltage: f64,
    pub asymmetry: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ReservoirParams {
    Single(BathParams),
    Junction(JunctionParams),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimeParams {
    /// Time grid in units of `Γ⁻¹`.
    pub values: Vec<f64>,
    pub evaluate_at: f64,
}

impl Default for TimeParams {
    fn default() -> Self {
        Self {
            values: log_grid(1e-2, 20.0, 60),
            evaluate_at: DEFAULT_EVALUATION_TIME,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub model: ModelParams,
    pub reservoir: ReservoirParams,
    pub sweep: Option<Sweep>,
    pub time: TimeParams,
    pub output: Option<String>,
}

pub fn linear_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let step = (stop - start) / (count - 1) as f64;
    (0..count)
        .map(|i| if i + 1 == count { stop } else { start + step * i as f64 })
        .collect()
}

pub fn log_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    let (a, b) = (start.ln(), stop.ln());
    linear_grid(a, b, count)
        .into_iter()
        .enumerate()
        .map(|(i, x)| match i {
            0 => start,
            _ if i + 1 == count => stop,
            _ => x.exp(),
        })
        .collect()
}

/// Nonempty, finite, strictly increasing.
pub fn validate_grid(what: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidGrid(format!("{what} grid is empty")));
    }
    if let Some(x) = values.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid(format!("{what} grid contains non-finite value {x}")));
    }
    if let Some(i) = (1..values.len()).find(|&i| values[i] <= values[i - 1]) {
        return Err(Error::InvalidGrid(format!(
            "{what} grid must be strictly increasing ({} then {})",
            values[i - 1],
            values[i]
        )));
    }
    Ok(())
}

/// Everything needed to evaluate one grid point.
#[derive(Clone, Debug, PartialEq)]
pub enum PointSpec {
    Single { impurity: ImpuritySpec, bath: BathSpec },
    Junction(JunctionSpec),
}

impl PointSpec {
    /// Coupling `Γ` that sets the time unit.
    pub fn gamma(&self) -> f64 {
        match self {
            PointSpec::Single { bath, .. } => bath.coupling,
            PointSpec::Junction(j) => j.gamma,
        }
    }
}

impl ScenarioConfig {
    /// Variable and values driving the rows of the result.
    pub fn grid(&self) -> (SweepVariable, &[f64]) {
        match &self.sweep {
            Some(s) => (s.variable, &s.values),
            None => (SweepVariable::Time, &self.time.values),
        }
    }

    /// Configuration with `variable` set to `value`.
    pub fn with_value(&self, variable: SweepVariable, value: f64) -> Result<ScenarioConfig> {
        let mut c = self.clone();
        let wrong = |reservoir: &str| {
            Error::config(
                "sweep.variable",
                format!("`{}` cannot be swept for a {reservoir} model", variable.name()),
            )
        };
        match (&mut c.reservoir, variable) {
            (_, SweepVariable::Time) => c.time.evaluate_at = value,
            (_, SweepVariable::Beta) => c.model.beta = value,
            (_, SweepVariable::N0Initial) => c.model.n0_initial = value,
            (_, SweepVariable::Epsilon0) => c.model.level = LevelPlacement::Absolute(value),
            (ReservoirParams::Single(b), SweepVariable::Gamma) => b.gamma = value,
            (ReservoirParams::Single(b), SweepVariable::Bandwidth) => b.bandwidth = value,
            (ReservoirParams::Single(b), SweepVariable::Mu) => b.mu = ChemicalPotential::Absolute(value),
            (ReservoirParams::Single(b), SweepVariable::MuOffset) => b.mu = ChemicalPotential::AboveLevel(value),
            (ReservoirParams::Single(_), SweepVariable::Delta) => c.model.level = LevelPlacement::BelowBandEdge(value),
            (ReservoirParams::Single(_), _) => return Err(wrong("single-bath")),
            (ReservoirParams::Junction(j), SweepVariable::Gamma) => j.gamma = value,
            (ReservoirParams::Junction(j), SweepVariable::Bandwidth) => j.bandwidth = value,
            (ReservoirParams::Junction(j), SweepVariable::MuBar) => j.mu_bar = value,
            (ReservoirParams::Junction(j), SweepVariable::Voltage) => j.voltage = value,
            (ReservoirParams::Junction(j), SweepVariable::Asymmetry) => j.asymmetry = value,
            (ReservoirParams::Junction(_), _) => return Err(wrong("junction")),
        }
        Ok(c)
    }

    /// Physical specs for this configuration (no sweep applied).
    pub fn point_spec(&self) -> Result<PointSpec> {
        let beta = self.model.beta;
        match &self.reservoir {
            ReservoirParams::Single(b) => {
                check_gamma(b.gamma)?;
                let w = b.bandwidth * b.gamma;
                let epsilon0 = match self.model.level {
                    LevelPlacement::Absolute(e) => e,
                    LevelPlacement::BelowBandEdge(delta) => 0.5 * w - delta * b.gamma,
                };
                let mu = match b.mu {
                    ChemicalPotential::Absolute(mu) => mu,
                    ChemicalPotential::AboveLevel(offset) => epsilon0 + offset,
                };
                Ok(PointSpec::Single {
                    impurity: ImpuritySpec::new(epsilon0, self.model.n0_initial)?,
                    bath: BathSpec::new(w, b.levels, b.gamma, beta, mu)?,
                })
            }
            ReservoirParams::Junction(j) => {
                check_gamma(j.gamma)?;
                let epsilon0 = match self.model.level {
                    LevelPlacement::Absolute(e) => e,
                    LevelPlacement::BelowBandEdge(_) => {
                        return Err(Error::config(
                            "bath.delta",
                            "band-edge placement requires a single bath",
                        ))
                    }
                };
                let spec = JunctionSpec {
                    impurity: ImpuritySpec::new(epsilon0, self.model.n0_initial)?,
                    mu_bar: j.mu_bar,
                    voltage: j.voltage,
                    asymmetry: j.asymmetry,
                    gamma: j.gamma,
                    bandwidth: j.bandwidth * j.gamma,
                    levels_per_bath: j.levels,
                    beta,
                };
                spec.validate()?;
                Ok(PointSpec::Junction(spec))
            }
        }
    }

    /// Half filling `round((K+1)/2)` unless overridden.
    pub fn canonical_particles(&self) -> usize {
        let modes = match &self.reservoir {
            ReservoirParams::Single(b) => b.levels + 1,
            ReservoirParams::Junction(j) => 2 * j.levels + 1,
        };
        self.model.canonical_n.unwrap_or(modes.div_ceil(2))
    }

    /// Checks structure, grids, and the physical invariants of every point.
    pub fn validate(&self) -> Result<()> {
        let kind = self.kind;
        match (&self.reservoir, kind) {
            (ReservoirParams::Junction(_), ScenarioKind::Junction) => {}
            (ReservoirParams::Single(_), ScenarioKind::Junction) => {
                return Err(Error::config(
                    "junction",
                    "junction scenario needs a [junction] section",
                ))
            }
            (ReservoirParams::Junction(_), _) => {
                return Err(Error::config(
                    "bath",
                    format!("{} scenario needs a [bath] section", kind.name()),
                ))
            }
            (ReservoirParams::Single(_), _) => {}
        }
        if self.model.cutoff == 0 || self.model.cutoff > crate::fock::MAX_CUTOFF {
            return Err(Error::config(
                "model.cutoff",
                format!(
                    "cutoff M must lie in 1..={}, got {}",
                    crate::fock::MAX_CUTOFF,
                    self.model.cutoff
                ),
            ));
        }
        if kind == ScenarioKind::EquilibriumCanonical {
            if let ReservoirParams::Single(b) = &self.reservoir {
                if b.levels > MAX_CANONICAL_LEVELS {
                    return Err(Error::config(
                        "bath.levels",
                        format!("canonical states need K ≤ {MAX_CANONICAL_LEVELS}, got {}", b.levels),
                    ));
                }
                if self.canonical_particles() > b.levels + 1 {
                    return Err(Error::config(
                        "model.canonical_n",
                        format!("particle number exceeds the {} modes", b.levels + 1),
                    ));
                }
            }
        }
        if let ReservoirParams::Single(b) = &self.reservoir {
            if !kind.is_dynamic() && b.levels < self.model.cutoff {
                return Err(Error::config(
                    "bath.levels",
                    format!("K = {} is smaller than the cutoff M = {}", b.levels, self.model.cutoff),
                ));
            }
        }

        validate_grid("time", &self.time.values).map_err(|e| Error::config("time.values", e.to_string()))?;
        if self.time.values[0] < 0.0 {
            return Err(Error::config("time.values", "times must be nonnegative"));
        }
        if !(self.time.evaluate_at >= 0.0 && self.time.evaluate_at.is_finite()) {
            return Err(Error::config(
                "time.evaluate_at",
                "evaluation time must be finite and ≥ 0",
            ));
        }

        match &self.sweep {
            None if !kind.is_dynamic() => {
                return Err(Error::config(
                    "sweep",
                    format!("{} scenario requires a [sweep] section", kind.name()),
                ))
            }
            None => {}
            Some(s) => {
                validate_grid("sweep", &s.values).map_err(|e| Error::config("sweep.values", e.to_string()))?;
                if s.variable == SweepVariable::Time {
                    if !kind.is_dynamic() {
                        return Err(Error::config(
                            "sweep.variable",
                            "time sweeps require a dynamic scenario",
                        ));
                    }
                    if s.values[0] < 0.0 {
                        return Err(Error::config("sweep.values", "times must be nonnegative"));
                    }
                }
            }
        }

        self.point_spec()?;
        let (variable, values) = self.grid();
        if self.sweep.is_some() && variable != SweepVariable::Time {
            for &x in values {
                self.with_value(variable, x)?.point_spec().map_err(|e| match e {
                    Error::InvalidParameter { name, reason } => Error::config(
                        format!("sweep.values ({} = {x})", variable.name()),
                        format!("{name}: {reason}"),
                    ),
                    other => other,
                })?;
            }
        }
        Ok(())
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::param(
            "gamma",
            format!("Γ sets the energy and time units of a scenario and must be > 0, got {gamma}"),
        ));
    }
    Ok(())
}
