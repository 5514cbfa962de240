//! Partial negativities N_1..N_4 of the grand-canonical Gibbs state versus Γ.
//!
//!     cargo run --release --example gibbs_negativity_vs_coupling

use impurity_negativity::fock::partial_negativities;
use impurity_negativity::gaussian::gibbs_correlation_matrix;
use impurity_negativity::model::{build_single_bath, BathSpec, ImpuritySpec};

fn main() -> impurity_negativity::Result<()> {
    let impurity = ImpuritySpec::new(0.0, 0.0)?;
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "Γ", "N_1", "N_2", "N_3", "N_4");
    for gamma in [0.1, 0.2, 0.3, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
        // W = 50Γ, K = 400, β = 1, μ = 0.
        let bath = BathSpec::new(50.0 * gamma, 400, gamma, 1.0, 0.0)?;
        let h = build_single_bath(&impurity, &bath)?;
        let c = gibbs_correlation_matrix(&h, bath.beta, bath.mu)?;
        let n = partial_negativities(&c, 4)?;
        println!("{gamma:>6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}", n[0], n[1], n[2], n[3]);
    }
    Ok(())
}
