//! Independent reference implementations used as test oracles. Everything here
//! is built from Kronecker products and dense eigensolves and shares no code
//! with the crate's Fock layer.

#![allow(dead_code)]

use impurity_negativity::linalg::{CMatrix, RMatrix, C64};
use impurity_negativity::{CorrelationMatrix, ModeLabel, SingleParticleHamiltonian};
use nalgebra::DVector;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Jordan-Wigner annihilators with mode 0 as the leftmost tensor factor and
/// `|1⟩` (occupied) as the second basis vector of each factor.
pub fn annihilators(m: usize) -> Vec<CMatrix> {
    let lower = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
    let z = CMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0), c(-1.0)]));
    let id = CMatrix::identity(2, 2);
    (0..m)
        .map(|i| {
            let mut op = CMatrix::identity(1, 1);
            for k in 0..m {
                let f = match k.cmp(&i) {
                    std::cmp::Ordering::Less => &z,
                    std::cmp::Ordering::Equal => &lower,
                    std::cmp::Ordering::Greater => &id,
                };
                op = kron(&op, f);
            }
            op
        })
        .collect()
}

/// `Σ h_ij c_i† c_j`.
pub fn many_body(h: &CMatrix, cs: &[CMatrix]) -> CMatrix {
    let dim = cs[0].nrows();
    let mut out = CMatrix::zeros(dim, dim);
    for i in 0..cs.len() {
        for j in 0..cs.len() {
            if h[(i, j)] != c(0.0) {
                out += cs[i].adjoint() * &cs[j] * h[(i, j)];
            }
        }
    }
    out
}

pub fn number_operator(cs: &[CMatrix]) -> CMatrix {
    let dim = cs[0].nrows();
    cs.iter()
        .fold(CMatrix::zeros(dim, dim), |acc, ci| acc + ci.adjoint() * ci)
}

/// `exp(−A)/Tr exp(−A)` for Hermitian `A`, via an eigendecomposition.
pub fn normalized_exp_minus(a: &CMatrix) -> CMatrix {
    let eig = nalgebra::SymmetricEigen::new(a.clone());
    let lowest = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    let weights = eig.eigenvalues.map(|e| c((lowest - e).exp()));
    let rho = &eig.eigenvectors * CMatrix::from_diagonal(&weights) * eig.eigenvectors.adjoint();
    let tr: C64 = rho.trace();
    rho / tr
}

/// Exact grand-canonical Gibbs state `e^{−β(Ĥ−μN̂)}/Z`.
pub fn gibbs_oracle(h: &RMatrix, beta: f64, mu: f64) -> CMatrix {
    let cs = annihilators(h.nrows());
    let hc = h.map(c);
    let a = (many_body(&hc, &cs) - number_operator(&cs) * c(mu)) * c(beta);
    normalized_exp_minus(&a)
}

/// Exact canonical state restricted to `particles`, built by projecting the
/// full many-body Hamiltonian.
pub fn canonical_oracle(h: &RMatrix, beta: f64, particles: usize) -> CMatrix {
    let cs = annihilators(h.nrows());
    let hm = many_body(&h.map(c), &cs);
    let n_op = number_operator(&cs);
    let dim = hm.nrows();
    let states: Vec<usize> = (0..dim)
        .filter(|&s| (n_op[(s, s)].re.round() as usize) == particles)
        .collect();
    let block = CMatrix::from_fn(states.len(), states.len(), |a, b| hm[(states[a], states[b])] * c(beta));
    let rho_block = normalized_exp_minus(&block);
    let mut rho = CMatrix::zeros(dim, dim);
    for (a, &sa) in states.iter().enumerate() {
        for (b, &sb) in states.iter().enumerate() {
            rho[(sa, sb)] = rho_block[(a, b)];
        }
    }
    rho
}

/// `Tr(ρ c_i† c_j)`.
pub fn correlations_oracle(rho: &CMatrix) -> CMatrix {
    let m = rho.nrows().trailing_zeros() as usize;
    let cs = annihilators(m);
    CMatrix::from_fn(m, m, |i, j| (rho * cs[i].adjoint() * &cs[j]).trace())
}

/// Block-wise partial transpose: `ρ` as a 2×2 block matrix over the system
/// (mode 0) with every `2^{m−1}`-sized block transposed.
pub fn pt_blocks(rho: &CMatrix) -> CMatrix {
    let n = rho.nrows() / 2;
    let mut out = CMatrix::zeros(2 * n, 2 * n);
    for bi in 0..2 {
        for bj in 0..2 {
            let block = rho.view((bi * n, bj * n), (n, n)).transpose();
            out.view_mut((bi * n, bj * n), (n, n)).copy_from(&block);
        }
    }
    out
}

pub fn eigenvalues(a: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = nalgebra::SymmetricEigen::new(a.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// System-vs-rest negativity computed from the block definition.
pub fn negativity_oracle(rho: &CMatrix) -> f64 {
    eigenvalues(&pt_blocks(rho))
        .iter()
        .filter(|&&x| x < -1e-12)
        .map(|x| -x)
        .sum()
}

pub fn trace_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    0.5 * eigenvalues(&(a - b)).iter().map(|x| x.abs()).sum::<f64>()
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Haar-ish random unitary from the QR decomposition of a complex Gaussian matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| C64::new(gauss(rng), gauss(rng)));
    g.qr().q()
}

pub fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller.
    let u1: f64 = rng.random_range(1e-12..1.0);
    let u2: f64 = rng.random_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Random valid correlation matrix `U diag(λ) U†` with `λ ∈ [lo, hi]`.
pub fn random_correlation(rng: &mut ChaCha8Rng, m: usize, lo: f64, hi: f64) -> CorrelationMatrix {
    let u = random_unitary(rng, m);
    let lambda = DVector::from_fn(m, |_, _| c(rng.random_range(lo..=hi)));
    let mut mat = &u * CMatrix::from_diagonal(&lambda) * u.adjoint();
    for j in 0..m {
        mat[(j, j)].im = 0.0;
        for i in 0..j {
            mat[(j, i)] = mat[(i, j)].conj();
        }
    }
    CorrelationMatrix::from_matrix(mat).unwrap()
}

/// Random real symmetric star Hamiltonian-like matrix (dense, not star).
pub fn random_hamiltonian(rng: &mut ChaCha8Rng, m: usize, scale: f64) -> SingleParticleHamiltonian {
    let mut h = RMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let x = rng.random_range(-scale..scale);
            h[(i, j)] = x;
            h[(j, i)] = x;
        }
    }
    let modes = std::iter::once(ModeLabel::System)
        .chain((1..m).map(ModeLabel::Site))
        .collect();
    SingleParticleHamiltonian::from_matrix(h, modes).unwrap()
}

/// Random density matrix `A A† / Tr` on `dim` states.
pub fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    let a = CMatrix::from_fn(dim, dim, |_, _| C64::new(gauss(rng), gauss(rng)));
    let rho = &a * a.adjoint();
    let tr = rho.trace();
    rho / tr
}
