//! Householder tridiagonalization of a Gibbs correlation matrix: the system
//! row is untouched and the bath becomes a chain ordered by distance.
//!
//!     cargo run --release --example householder_chain

use impurity_negativity::gaussian::gibbs_correlation_matrix;
use impurity_negativity::model::{build_single_bath, BathSpec, ImpuritySpec};
use impurity_negativity::tridiag::householder_tridiagonalize;

fn main() -> impurity_negativity::Result<()> {
    let bath = BathSpec::new(50.0, 100, 1.0, 1.0, 0.0)?;
    let h = build_single_bath(&ImpuritySpec::new(0.0, 0.0)?, &bath)?;
    let c = gibbs_correlation_matrix(&h, bath.beta, bath.mu)?;
    let t = householder_tridiagonalize(&c)?;
    let chain = t.chain.matrix();
    println!("{:>4} {:>12} {:>12}", "j", "C_jj", "C_j,j+1");
    for j in 0..8 {
        println!("{j:>4} {:>12.6} {:>12.6}", chain[(j, j)].re, chain[(j, j + 1)].re);
    }
    let err = (t.reconstruct() - c.matrix())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    println!("max |U C_chain U† − C| = {err:.2e}");
    Ok(())
}
