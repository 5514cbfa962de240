//! Full negativity of the canonical and grand-canonical Gibbs states of a
//! seven-level bath, from exact Fock-space density matrices.
//!
//!     cargo run --release --example canonical_vs_grand_canonical

use impurity_negativity::fock::{canonical_gibbs, grand_canonical_gibbs_fock, negativity};
use impurity_negativity::model::{build_single_bath, BathSpec, ImpuritySpec};

fn main() -> impurity_negativity::Result<()> {
    let impurity = ImpuritySpec::new(0.0, 0.0)?;
    println!("{:>8} {:>12} {:>12}", "Γ", "canonical", "grand-can.");
    for gamma in [0.001, 0.01, 0.1, 0.5, 1.0, 5.0, 50.0] {
        let bath = BathSpec::new(5.0 * gamma, 7, gamma, 1.0, 0.0)?;
        let h = build_single_bath(&impurity, &bath)?;
        // Half filling of the eight modes.
        let can = negativity(&canonical_gibbs(&h, bath.beta, 4)?);
        let gc = negativity(&grand_canonical_gibbs_fock(&h, bath.beta, bath.mu)?);
        println!("{gamma:>8} {can:>12.6} {gc:>12.6}");
    }
    Ok(())
}
