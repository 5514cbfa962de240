//! Negativity of a two-mode state (|10⟩ + |01⟩)/√2 mixed with white noise.
//!
//!     cargo run --release --example partial_transpose_bell

use impurity_negativity::fock::{negativity, partial_transpose, FockDensityMatrix};
use impurity_negativity::linalg::{hermitian_eigenvalues, CMatrix, C64};
use impurity_negativity::ModeLabel;

fn main() -> impurity_negativity::Result<()> {
    // Basis |n_0 n_1⟩ with mode 0 as the most significant bit.
    let mut bell = CMatrix::zeros(4, 4);
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        bell[(i, j)] = C64::new(0.5, 0.0);
    }
    println!("{:>6} {:>10}", "p", "N");
    for p in [1.0, 0.8, 0.5, 1.0 / 3.0, 0.2, 0.0] {
        let rho = bell.clone() * C64::new(p, 0.0) + CMatrix::identity(4, 4) * C64::new((1.0 - p) / 4.0, 0.0);
        let state = FockDensityMatrix::new(rho, vec![ModeLabel::System, ModeLabel::Site(1)])?;
        println!("{p:>6.3} {:>10.6}", negativity(&state));
    }
    let pure = FockDensityMatrix::new(bell, vec![ModeLabel::System, ModeLabel::Site(1)])?;
    println!(
        "spectrum of ρ^T_B: {:?}",
        hermitian_eigenvalues(&partial_transpose(&pure, &[1])?)
    );
    Ok(())
}
