use crate::error::{Error, Result};
use crate::gaussian::{reduce_modes, CorrelationMatrix};
use crate::tridiag::householder_leading;

use super::{density_matrix_from_correlations, negativity};

/// Largest chain cutoff `M` (the reduced state then has `M + 1` modes).
pub const MAX_CUTOFF: usize = 12;

/// `N_M`: negativity between the system and the first `M` chain modes of the
/// tridiagonalized bath.
pub fn partial_negativity(c: &CorrelationMatrix, cutoff: usize) -> Result<f64> {
    Ok(*partial_negativities(c, cutoff)?.last().expect("cutoff ≥ 1"))
}

/// `[N_1, …, N_M]` from a single tridiagonalization.
pub fn partial_negativities(c: &CorrelationMatrix, cutoff: usize) -> Result<Vec<f64>> {
    check_cutoff(c.dim(), cutoff)?;
    let chain = householder_leading(c, cutoff)?;
    chain_negativities(&chain, cutoff)
}

/// `[N_1, …, N_M]` from a correlation matrix already in chain form.
pub fn chain_negativities(chain: &CorrelationMatrix, cutoff: usize) -> Result<Vec<f64>> {
    check_cutoff(chain.dim(), cutoff)?;
    (1..=cutoff)
        .map(|j| {
            let modes: Vec<usize> = (0..=j).collect();
            let reduced = reduce_modes(chain, &modes)?;
            Ok(negativity(&density_matrix_from_correlations(&reduced)?))
        })
        .collect()
}

/// Negativity of the full Gaussian state (all modes kept).
pub fn full_negativity(c: &CorrelationMatrix) -> Result<f64> {
    Ok(negativity(&density_matrix_from_correlations(c)?))
}

fn check_cutoff(dim: usize, cutoff: usize) -> Result<()> {
    if cutoff == 0 {
        return Err(Error::InvalidCutoff {
            cutoff,
            reason: "M must be at least 1".into(),
        });
    }
    if cutoff > MAX_CUTOFF {
        return Err(Error::InvalidCutoff {
            cutoff,
            reason: format!("M may not exceed {MAX_CUTOFF}"),
        });
    }
    if dim < cutoff + 1 {
        return Err(Error::InvalidCutoff {
            cutoff,
            reason: format!("needs at least M + 1 = {} modes, matrix has {dim}", cutoff + 1),
        });
    }
    Ok(())
}
