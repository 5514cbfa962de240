//! Householder reduction of a Hermitian correlation matrix to a chain.
//!
//! Mode 0 (the system) is never rotated. Step `j` takes the column
//! `b = (C_{j+1,j}, …, C_{m-1,j})` below the pivot, sets `s = (‖b‖, 0, …, 0)`,
//! and builds the reflector `R = 𝟙 − α v v†` with
//!
//! ```text
//! v   = (b − s) / ‖b − s‖
//! α_r = s†s − Re(b†s),   α_i = −Im(b†s)
//! α   = 2 α_r (α_r + i α_i) / (α_r² + α_i²)
//! ```
//!
//! which is unitary and maps `R b = s`. The trailing block becomes
//! `R C_B R†`. After `m − 2` steps the matrix is tridiagonal with nonnegative
//! real subdiagonal, and the leading `(j+1)×(j+1)` block is already final after
//! `j` steps, which is what [`householder_leading`] exploits.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::gaussian::CorrelationMatrix;
use crate::linalg::{self, CMatrix, C64};
use crate::model::ModeLabel;

const HERMITIAN_TOLERANCE: f64 = 1e-8;
const NEGLIGIBLE: f64 = 1e-14;

/// A single reflector `𝟙 − α v v†` acting on modes `offset..`.
#[derive(Clone, Debug)]
pub struct Reflector {
    pub offset: usize,
    pub v: DVector<C64>,
    pub alpha: C64,
}

#[derive(Clone, Debug)]
pub struct Tridiagonalization {
    /// `C̃ = (𝟙₁ ⊕ U)† C (𝟙₁ ⊕ U)`, labelled with chain modes.
    pub chain: CorrelationMatrix,
    /// Accumulated bath unitary `U`, `(m−1)×(m−1)`.
    pub unitary: CMatrix,
    pub reflectors: Vec<Reflector>,
}

impl Tridiagonalization {
    /// Rebuilds `(𝟙₁ ⊕ U) C̃ (𝟙₁ ⊕ U)†`.
    pub fn reconstruct(&self) -> CMatrix {
        let full = embed(&self.unitary);
        &full * self.chain.matrix() * full.adjoint()
    }

    /// `(𝟙₁ ⊕ U)† C (𝟙₁ ⊕ U)` computed with the accumulated unitary. An
    /// independent route to [`Tridiagonalization::chain`].
    pub fn congruence(&self, c: &CorrelationMatrix) -> CMatrix {
        let full = embed(&self.unitary);
        full.adjoint() * c.matrix() * &full
    }
}

fn embed(u: &CMatrix) -> CMatrix {
    let n = u.nrows() + 1;
    let mut full = CMatrix::zeros(n, n);
    full[(0, 0)] = linalg::ONE;
    full.view_mut((1, 1), (n - 1, n - 1)).copy_from(u);
    full
}

fn check_input(c: &CorrelationMatrix) -> Result<()> {
    if c.dim() < 2 {
        return Err(Error::DimensionMismatch(format!(
            "tridiagonalization needs at least 2 modes, got {}",
            c.dim()
        )));
    }
    let residual = linalg::hermiticity_residual(c.matrix());
    if residual > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { residual });
    }
    Ok(())
}

fn chain_modes(c: &CorrelationMatrix) -> Vec<ModeLabel> {
    std::iter::once(c.modes()[0])
        .chain((1..c.dim()).map(ModeLabel::Chain))
        .collect()
}

/// Full reduction to tridiagonal form, accumulating the bath unitary.
pub fn householder_tridiagonalize(c: &CorrelationMatrix) -> Result<Tridiagonalization> {
    check_input(c)?;
    let m = c.dim();
    let mut a = c.matrix().clone();
    let mut u = CMatrix::identity(m - 1, m - 1);
    let mut reflectors = Vec::new();
    for j in 0..m.saturating_sub(2) {
        if let Some(r) = reduce_column(&mut a, j) {
            // U ← U R† on bath columns j.. (bath index = mode − 1).
            let mut block = u.columns_mut(j, m - 1 - j);
            let uv = &block * &r.v;
            block -= uv * r.v.adjoint() * r.alpha.conj();
            reflectors.push(r);
        }
    }
    let phases = gauge_subdiagonal(&mut a);
    if let Some(phases) = phases {
        for (col, phase) in phases.iter().enumerate().skip(1) {
            let mut column = u.column_mut(col - 1);
            column *= *phase;
        }
    }
    Ok(Tridiagonalization {
        chain: CorrelationMatrix::from_parts_unchecked(a, chain_modes(c)),
        unitary: u,
        reflectors,
    })
}

/// Applies only the first `steps` reflectors. The leading `(steps+1)×(steps+1)`
/// block of the result coincides with the fully tridiagonalized matrix, at
/// `O(steps · m²)` cost instead of `O(m³)`.
pub fn householder_leading(c: &CorrelationMatrix, steps: usize) -> Result<CorrelationMatrix> {
    check_input(c)?;
    let m = c.dim();
    let mut a = c.matrix().clone();
    for j in 0..steps.min(m.saturating_sub(2)) {
        reduce_column(&mut a, j);
    }
    gauge_subdiagonal(&mut a);
    Ok(CorrelationMatrix::from_parts_unchecked(a, chain_modes(c)))
}

/// Eliminates column `j` below the subdiagonal in place. Returns the reflector
/// applied, or `None` when the column was already in the target form.
fn reduce_column(a: &mut CMatrix, j: usize) -> Option<Reflector> {
    let m = a.nrows();
    let offset = j + 1;
    let len = m - offset;
    let b: DVector<C64> = a.view((offset, j), (len, 1)).column(0).into_owned();
    let norm = b.norm();

    if norm < NEGLIGIBLE {
        for i in offset..m {
            a[(i, j)] = linalg::ZERO;
            a[(j, i)] = linalg::ZERO;
        }
        return None;
    }

    let mut diff = b.clone();
    diff[0] -= C64::new(norm, 0.0);
    let diff_norm = diff.norm();
    if diff_norm < NEGLIGIBLE * norm {
        return None;
    }

    let v = diff / C64::new(diff_norm, 0.0);
    // b†s = conj(b_0) ‖b‖, s†s = ‖b‖².
    let b_dag_s = b[0].conj() * norm;
    let alpha_r = norm * norm - b_dag_s.re;
    let alpha_i = -b_dag_s.im;
    let alpha = C64::new(alpha_r, alpha_i) * (2.0 * alpha_r / (alpha_r * alpha_r + alpha_i * alpha_i));

    // R C_B R† = C_B − α v w† − ᾱ w v† + |α|² (v†w) v v†,  w = C_B v.
    let mut block = a.view_mut((offset, offset), (len, len));
    let w = &block * &v;
    let gamma = v.dotc(&w).re;
    let vw = &v * w.adjoint();
    let vv = &v * v.adjoint();
    block -= &vw * alpha;
    block -= vw.adjoint() * alpha.conj();
    block += vv * C64::new(alpha.norm_sqr() * gamma, 0.0);
    for r in 0..len {
        block[(r, r)].im = 0.0;
    }

    a[(offset, j)] = C64::new(norm, 0.0);
    a[(j, offset)] = C64::new(norm, 0.0);
    for i in offset + 1..m {
        a[(i, j)] = linalg::ZERO;
        a[(j, i)] = linalg::ZERO;
    }
    Some(Reflector { offset, v, alpha })
}

/// Makes every subdiagonal entry nonnegative real with a diagonal phase
/// transformation. Returns the phases applied, or `None` if none were needed.
fn gauge_subdiagonal(a: &mut CMatrix) -> Option<Vec<C64>> {
    let m = a.nrows();
    let needs_gauge = (1..m).any(|i| a[(i, i - 1)].im != 0.0 || a[(i, i - 1)].re < 0.0);
    if !needs_gauge {
        return None;
    }
    let mut phases = vec![linalg::ONE; m];
    for i in 1..m {
        let z = a[(i, i - 1)] * phases[i - 1];
        phases[i] = if z.norm() > 0.0 { z / z.norm() } else { linalg::ONE };
    }
    // C'' = D† C D with D = diag(phases).
    for j in 0..m {
        for i in 0..m {
            a[(i, j)] = phases[i].conj() * a[(i, j)] * phases[j];
        }
    }
    for i in 1..m {
        a[(i, i - 1)] = C64::new(a[(i, i - 1)].norm(), 0.0);
        a[(i - 1, i)] = a[(i, i - 1)];
    }
    Some(phases)
}
