//! Impurity relaxation with a level near the band edge. For δ = 1.5 the
//! negativity dies out; for δ = 0.5 a bound state keeps it alive.
//!
//!     cargo run --release --example bound_state_relaxation

use impurity_negativity::fock::partial_negativities;
use impurity_negativity::gaussian::{mean_occupation, Evolution};
use impurity_negativity::model::{build_single_bath, initial_correlation_matrix_single, BathSpec, ImpuritySpec};

fn main() -> impurity_negativity::Result<()> {
    let (gamma, w) = (0.01, 50.0 * 0.01);
    for delta in [1.5, 0.5] {
        let eps0 = w / 2.0 - delta * gamma;
        let impurity = ImpuritySpec::new(eps0, 0.1)?;
        let bath = BathSpec::new(w, 400, gamma, 1.0, eps0 + 1.0)?;
        let evolution = Evolution::new(
            &initial_correlation_matrix_single(&impurity, &bath)?,
            &build_single_bath(&impurity, &bath)?,
        )?;
        println!("δ = {delta}Γ");
        println!("{:>8} {:>10} {:>10}", "Γt", "n_0", "N_4");
        for tau in [0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0] {
            let c = evolution.at(tau / gamma);
            let n4 = partial_negativities(&c, 4)?[3];
            println!("{tau:>8} {:>10.6} {n4:>10.6}", mean_occupation(&c, 0));
        }
    }
    Ok(())
}
