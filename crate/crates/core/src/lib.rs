//! Entanglement between a single noninteracting fermionic level and discretized
//! fermionic baths.
//!
//! The crate covers three regimes of the resonant level model:
//!
//! - **equilibrium**: grand-canonical Gibbs states through correlation
//!   matrices, canonical (fixed particle number) states in Fock space;
//! - **relaxation**: a prepared impurity coupled to a thermal bath, including
//!   bound states near the band edge;
//! - **voltage-driven junctions**: an impurity between two baths with
//!   different chemical potentials, evaluated at a fixed late time.
//!
//! Entanglement is witnessed by the negativity of the partially transposed
//! single-spin density matrix. For large baths the correlation matrix is
//! brought to chain form by Householder reflections and the negativity
//! `N_M` between the system and the first `M` chain modes is computed as a
//! lower bound on the full value.
//!
//! ```
//! use impurity_negativity::{fock, gaussian, model};
//!
//! let impurity = model::ImpuritySpec::new(0.0, 0.0)?;
//! let bath = model::BathSpec::new(50.0 * 5.0, 200, 5.0, 1.0, 0.0)?;
//! let h = model::build_single_bath(&impurity, &bath)?;
//! let c = gaussian::gibbs_correlation_matrix(&h, 1.0, 0.0)?;
//! let n4 = fock::partial_negativity(&c, 4)?;
//! assert!(n4 > 0.0);
//! # Ok::<(), impurity_negativity::Error>(())
//! ```
//!
//! See the `examples/` directory for one runnable program per capability and
//! the `impneg` binary for config-driven sweeps that write CSV.

pub mod cli;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod linalg;
pub mod model;
pub mod scenarios;
pub mod tridiag;

pub use error::{Error, Result};
pub use fock::{FockDensityMatrix, ManyBodySpectrum};
pub use gaussian::{CorrelationMatrix, Evolution, SpectralDecomposition};
pub use model::{BathSpec, ImpuritySpec, JunctionSpec, ModeLabel, Reservoir, SingleParticleHamiltonian};
pub use scenarios::{ScenarioConfig, ScenarioKind, ScenarioResult};
pub use tridiag::Tridiagonalization;
