//! Runs a config through the sweep engine and writes the self-describing CSV.
//!
//!     cargo run --release --example sweep_to_csv [out.csv]

use impurity_negativity::cli::{emit_csv, parse_config_with, preset, write_csv_file};
use impurity_negativity::scenarios::{self, SweepEngine};

fn main() -> impurity_negativity::Result<()> {
    // The junction threshold preset on a coarser voltage grid and smaller baths.
    let overrides = ["sweep.count=16".to_string(), "levels=150".to_string()];
    let config = parse_config_with(preset("fig7a").unwrap().text, None, &overrides)?;
    let report = |_: usize, done: usize, total: usize| eprintln!("[{done}/{total}]");
    let result = scenarios::run(&config, &SweepEngine::from_env(), Some(&report))?;
    match std::env::args().nth(1) {
        Some(path) => write_csv_file(&result, None, path.as_ref()),
        None => emit_csv(&result, None, std::io::stdout()),
    }
}
