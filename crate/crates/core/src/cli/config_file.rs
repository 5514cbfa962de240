//! TOML config files.
//!
//! ```toml
//! scenario = "junction"          # equilibrium_gc | equilibrium_canonical | relaxation | junction
//!
//! [model]
//! beta = 1.0                     # default 1
//! epsilon0 = 0.0                 # default 0; exclusive with bath.delta
//! n0_initial = 0.5               # default 0
//! cutoff = 4                     # M, default 4
//! canonical_n = 4                # default round((K+1)/2)
//! compare_grand_canonical = true # canonical scenario only, default false
//!
//! [bath]                         # single-bath scenarios
//! gamma = 0.01
//! bandwidth = 50.0               # W in units of gamma
//! levels = 400                   # K
//! mu = 0.0                       # or mu_offset = 1.0 (mu = epsilon0 + offset)
//! delta = 1.5                    # epsilon0 = W/2 - delta*gamma
//!
//! [junction]                     # junction scenario
//! gamma = 0.01
//! bandwidth = 50.0
//! levels = 300                   # per bath
//! mu_bar = 0.0
//! voltage = 2.0
//! asymmetry = 0.0
//!
//! [sweep]
//! variable = "voltage"
//! values = [0.0, 1.0, 2.0]       # or start/stop/count with spacing = "linear" | "log"
//!
//! [time]                         # units of 1/gamma
//! start = 0.01
//! stop = 20.0
//! count = 60
//! spacing = "log"
//! evaluate_at = 10.0
//!
//! [output]
//! path = "out.csv"
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenarios::{
    linear_grid, log_grid, BathParams, ChemicalPotential, JunctionParams, LevelPlacement, ModelParams, ReservoirParams,
    ScenarioConfig, ScenarioKind, Sweep, SweepVariable, TimeParams, DEFAULT_BETA, DEFAULT_CUTOFF, DEFAULT_MU_OFFSET,
};

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    scenario: Option<ScenarioKind>,
    #[serde(default)]
    model: RawModel,
    #[serde(skip_serializing_if = "Option::is_none")]
    bath: Option<RawBath>,
    #[serde(skip_serializing_if = "Option::is_none")]
    junction: Option<RawJunction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<RawSweep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    time: Option<RawTime>,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<RawOutput>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n0_initial: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cutoff: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    canonical_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    compare_grand_canonical: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBath {
    gamma: f64,
    bandwidth: f64,
    levels: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu_offset: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJunction {
    gamma: f64,
    bandwidth: f64,
    levels: usize,
    #[serde(default)]
    mu_bar: f64,
    #[serde(default)]
    voltage: f64,
    #[serde(default)]
    asymmetry: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    start: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stop: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spacing: Option<Spacing>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    variable: SweepVariable,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    start: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stop: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spacing: Option<Spacing>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTime {
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    start: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stop: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spacing: Option<Spacing>,
    #[serde(skip_serializing_if = "Option::is_none")]
    evaluate_at: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<String>,
}

/// Short names accepted by `--set` in addition to dotted key paths.
/// `{reservoir}` expands to `bath` or `junction`, whichever the config uses.
pub const OVERRIDE_ALIASES: &[(&str, &str)] = &[
    ("Gamma", "{reservoir}.gamma"),
    ("gamma", "{reservoir}.gamma"),
    ("W", "{reservoir}.bandwidth"),
    ("bandwidth", "{reservoir}.bandwidth"),
    ("K", "{reservoir}.levels"),
    ("levels", "{reservoir}.levels"),
    ("V", "junction.voltage"),
    ("voltage", "junction.voltage"),
    ("a", "junction.asymmetry"),
    ("asymmetry", "junction.asymmetry"),
    ("mu_bar", "junction.mu_bar"),
    ("mu", "bath.mu"),
    ("mu_offset", "bath.mu_offset"),
    ("delta", "bath.delta"),
    ("beta", "model.beta"),
    ("eps0", "model.epsilon0"),
    ("epsilon0", "model.epsilon0"),
    ("n0", "model.n0_initial"),
    ("n0_initial", "model.n0_initial"),
    ("M", "model.cutoff"),
    ("cutoff", "model.cutoff"),
    ("N", "model.canonical_n"),
    ("canonical_n", "model.canonical_n"),
    ("t_eval", "time.evaluate_at"),
    ("evaluate_at", "time.evaluate_at"),
];

/// Parses a config whose text names its scenario.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    parse_config_with(text, None, &[])
}

/// Parses `text`, applies `KEY=VALUE` overrides, and resolves defaults.
/// `kind` (from a subcommand) must agree with the text's `scenario` if both
/// are present.
pub fn parse_config_with(text: &str, kind: Option<ScenarioKind>, overrides: &[String]) -> Result<ScenarioConfig> {
    let mut table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| Error::config("<document>", e.to_string().trim_end().to_string()))?;
    for item in overrides {
        apply_override(&mut table, item)?;
    }
    let raw: RawConfig = serde_path_to_error::deserialize(table).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "<document>".to_string() } else { path };
        Error::config(path, e.into_inner().to_string())
    })?;
    let config = resolve(raw, kind)?;
    config.validate()?;
    Ok(config)
}

fn apply_override(table: &mut toml::Table, item: &str) -> Result<()> {
    let (key, value) = item
        .split_once('=')
        .ok_or_else(|| Error::config(item, "override must have the form KEY=VALUE"))?;
    let (key, value) = (key.trim(), value.trim());
    let reservoir = if table.contains_key("junction") {
        "junction"
    } else {
        "bath"
    };
    let path = OVERRIDE_ALIASES
        .iter()
        .find(|(alias, _)| *alias == key)
        .map(|(_, path)| path.replace("{reservoir}", reservoir))
        .unwrap_or_else(|| key.to_string());

    let value = match format!("v = {value}").parse::<toml::Table>() {
        Ok(mut t) => t.remove("v").expect("single key"),
        Err(_) => toml::Value::String(value.to_string()),
    };

    let parts: Vec<&str> = path.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::config(path, "empty key segment"));
    }
    let mut node = table;
    for part in &parts[..parts.len() - 1] {
        let entry = node
            .entry(part.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        node = entry
            .as_table_mut()
            .ok_or_else(|| Error::config(path.clone(), format!("`{part}` is not a section")))?;
    }
    node.insert(parts[parts.len() - 1].to_string(), value);
    Ok(())
}

fn resolve_grid(path: &str, grid: RawGrid) -> Result<Option<Vec<f64>>> {
    match grid {
        RawGrid {
            values: Some(values),
            start: None,
            stop: None,
            count: None,
            spacing: None,
        } => Ok(Some(values)),
        RawGrid { values: Some(_), .. } => Err(Error::config(
            path,
            "give either `values` or `start`/`stop`/`count`, not both",
        )),
        RawGrid {
            values: None,
            start: Some(start),
            stop: Some(stop),
            count: Some(count),
            spacing,
        } => {
            if count == 0 {
                return Err(Error::config(
                    format!("{path}.count"),
                    "grid must have at least one point",
                ));
            }
            if count > 1 && stop <= start {
                return Err(Error::config(format!("{path}.stop"), "stop must exceed start"));
            }
            match spacing.unwrap_or_default() {
                Spacing::Linear => Ok(Some(linear_grid(start, stop, count))),
                Spacing::Log if start > 0.0 => Ok(Some(log_grid(start, stop, count))),
                Spacing::Log => Err(Error::config(format!("{path}.start"), "log spacing needs start > 0")),
            }
        }
        RawGrid {
            values: None,
            start: None,
            stop: None,
            count: None,
            spacing: None,
        } => Ok(None),
        _ => Err(Error::config(
            path,
            "`start`, `stop` and `count` must be given together",
        )),
    }
}

fn resolve(raw: RawConfig, kind: Option<ScenarioKind>) -> Result<ScenarioConfig> {
    let kind = match (raw.scenario, kind) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::config(
                "scenario",
                format!("config declares `{}` but `{}` was requested", a.name(), b.name()),
            ))
        }
        (Some(k), _) | (None, Some(k)) => k,
        (None, None) => return Err(Error::config("scenario", "missing scenario kind")),
    };

    let model = raw.model;
    let (reservoir, delta) = match (raw.bath, raw.junction) {
        (Some(_), Some(_)) => return Err(Error::config("junction", "give either [bath] or [junction], not both")),
        (None, None) => return Err(Error::config("bath", "missing [bath] or [junction] section")),
        (Some(b), None) => {
            if b.mu.is_some() && b.mu_offset.is_some() {
                return Err(Error::config(
                    "bath.mu_offset",
                    "`mu` and `mu_offset` are mutually exclusive",
                ));
            }
            let mu = match (b.mu, b.mu_offset) {
                (Some(mu), _) => ChemicalPotential::Absolute(mu),
                (None, Some(offset)) => ChemicalPotential::AboveLevel(offset),
                (None, None) if kind == ScenarioKind::Relaxation => ChemicalPotential::AboveLevel(DEFAULT_MU_OFFSET),
                (None, None) => ChemicalPotential::Absolute(0.0),
            };
            if b.delta.is_some() && model.epsilon0.is_some() {
                return Err(Error::config(
                    "bath.delta",
                    "`bath.delta` and `model.epsilon0` are mutually exclusive",
                ));
            }
            let bath = BathParams {
                gamma: b.gamma,
                bandwidth: b.bandwidth,
                levels: b.levels,
                mu,
            };
            (ReservoirParams::Single(bath), b.delta)
        }
        (None, Some(j)) => {
            let junction = JunctionParams {
                gamma: j.gamma,
                bandwidth: j.bandwidth,
                levels: j.levels,
                mu_bar: j.mu_bar,
                voltage: j.voltage,
                asymmetry: j.asymmetry,
            };
            (ReservoirParams::Junction(junction), None)
        }
    };
    let level = match delta {
        Some(d) => LevelPlacement::BelowBandEdge(d),
        None => LevelPlacement::Absolute(model.epsilon0.unwrap_or(0.0)),
    };

    let sweep = match raw.sweep {
        None => None,
        Some(s) => {
            let grid = RawGrid {
                values: s.values,
                start: s.start,
                stop: s.stop,
                count: s.count,
                spacing: s.spacing,
            };
            let values = resolve_grid("sweep", grid)?
                .ok_or_else(|| Error::config("sweep.values", "sweep needs `values` or `start`/`stop`/`count`"))?;
            Some(Sweep {
                variable: s.variable,
                values,
            })
        }
    };

    let mut time = TimeParams::default();
    if let Some(t) = raw.time {
        if let Some(at) = t.evaluate_at {
            time.evaluate_at = at;
        }
        let grid = RawGrid {
            values: t.values,
            start: t.start,
            stop: t.stop,
            count: t.count,
            spacing: t.spacing,
        };
        if let Some(values) = resolve_grid("time", grid)? {
            time.values = values;
        }
    }

    Ok(ScenarioConfig {
        kind,
        model: ModelParams {
            beta: model.beta.unwrap_or(DEFAULT_BETA),
            level,
            n0_initial: model.n0_initial.unwrap_or(0.0),
            cutoff: model.cutoff.unwrap_or(DEFAULT_CUTOFF),
            canonical_n: model.canonical_n,
            compare_grand_canonical: model.compare_grand_canonical.unwrap_or(false),
        },
        reservoir,
        sweep,
        time,
        output: raw.output.and_then(|o| o.path),
    })
}

/// TOML text that parses back to exactly `config`.
pub fn echo_config(config: &ScenarioConfig) -> String {
    let (epsilon0, delta) = match config.model.level {
        LevelPlacement::Absolute(e) => (Some(e), None),
        LevelPlacement::BelowBandEdge(d) => (None, Some(d)),
    };
    let (bath, junction) = match &config.reservoir {
        ReservoirParams::Single(b) => {
            let (mu, mu_offset) = match b.mu {
                ChemicalPotential::Absolute(mu) => (Some(mu), None),
                ChemicalPotential::AboveLevel(offset) => (None, Some(offset)),
            };
            let bath = RawBath {
                gamma: b.gamma,
                bandwidth: b.bandwidth,
                levels: b.levels,
                mu,
                mu_offset,
                delta,
            };
            (Some(bath), None)
        }
        ReservoirParams::Junction(j) => {
            let junction = RawJunction {
                gamma: j.gamma,
                bandwidth: j.bandwidth,
                levels: j.levels,
                mu_bar: j.mu_bar,
                voltage: j.voltage,
                asymmetry: j.asymmetry,
            };
            (None, Some(junction))
        }
    };
    let time = (config.kind.is_dynamic() || config.time != TimeParams::default()).then(|| RawTime {
        values: Some(config.time.values.clone()),
        evaluate_at: Some(config.time.evaluate_at),
        ..RawTime::default()
    });
    let raw = RawConfig {
        scenario: Some(config.kind),
        model: RawModel {
            beta: Some(config.model.beta),
            epsilon0,
            n0_initial: Some(config.model.n0_initial),
            cutoff: Some(config.model.cutoff),
            canonical_n: config.model.canonical_n,
            compare_grand_canonical: Some(config.model.compare_grand_canonical),
        },
        bath,
        junction,
        sweep: config.sweep.as_ref().map(|s| RawSweep {
            variable: s.variable,
            values: Some(s.values.clone()),
            start: None,
            stop: None,
            count: None,
            spacing: None,
        }),
        time,
        output: config.output.as_ref().map(|p| RawOutput { path: Some(p.clone()) }),
    };
    toml::to_string(&raw).expect("config is always serializable")
}
