//! N_4 of a biased junction at Γt = 10 versus voltage; entanglement appears
//! above V ≈ 1.8 even at weak coupling.
//!
//!     cargo run --release --example junction_voltage_threshold

use impurity_negativity::fock::partial_negativities;
use impurity_negativity::gaussian::evolve;
use impurity_negativity::model::{build_junction, initial_correlation_matrix_junction, ImpuritySpec, JunctionSpec};

fn main() -> impurity_negativity::Result<()> {
    let gamma = 0.01;
    println!("{:>6} {:>10}", "V", "N_4");
    for voltage in [0.0, 1.0, 1.5, 1.75, 2.0, 2.5, 4.0, 8.0, 15.0] {
        let spec = JunctionSpec {
            impurity: ImpuritySpec::new(0.0, 0.5)?,
            mu_bar: 0.0,
            voltage,
            asymmetry: 0.0,
            gamma,
            bandwidth: 50.0 * gamma,
            levels_per_bath: 300,
            beta: 1.0,
        };
        let c = evolve(
            &initial_correlation_matrix_junction(&spec)?,
            &build_junction(&spec)?,
            10.0 / gamma,
        )?;
        println!("{voltage:>6} {:>10.6}", partial_negativities(&c, 4)?[3]);
    }
    Ok(())
}
