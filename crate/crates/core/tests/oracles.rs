mod common;

use common::*;
use impurity_negativity::fock::{
    canonical_gibbs, density_matrix_from_correlations, full_negativity, grand_canonical_gibbs_fock, negativity,
    partial_negativities,
};
use impurity_negativity::gaussian::{gibbs_correlation_matrix, mean_occupation, reduce_modes, Evolution};
use impurity_negativity::linalg::{CMatrix, C64};
use impurity_negativity::model::{
    build_junction, build_single_bath, fermi_dirac, initial_correlation_matrix_junction,
    initial_correlation_matrix_single, BathSpec, ImpuritySpec, JunctionSpec,
};
use impurity_negativity::tridiag::householder_tridiagonalize;
use impurity_negativity::{CorrelationMatrix, ModeLabel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bath_hamiltonian(
    k: usize,
    gamma: f64,
    w_over_gamma: f64,
    eps0: f64,
) -> impurity_negativity::SingleParticleHamiltonian {
    let imp = ImpuritySpec::new(eps0, 0.0).unwrap();
    let bath = BathSpec::new(w_over_gamma * gamma, k, gamma, 1.0, 0.0).unwrap();
    build_single_bath(&imp, &bath).unwrap()
}

#[test]
fn two_mode_gibbs_matches_explicit_fock_state() {
    let h = impurity_negativity::SingleParticleHamiltonian::from_matrix(
        impurity_negativity::linalg::RMatrix::from_row_slice(2, 2, &[0.3, 0.7, 0.7, -0.4]),
        vec![ModeLabel::System, ModeLabel::Site(1)],
    )
    .unwrap();
    for &(beta, mu) in &[(1.0, 0.0), (2.5, 0.4), (0.3, -1.0)] {
        let c = gibbs_correlation_matrix(&h, beta, mu).unwrap();
        let expected = correlations_oracle(&gibbs_oracle(h.matrix(), beta, mu));
        assert!(max_abs_diff(c.matrix(), &expected) < 1e-12);
    }
}

#[test]
fn grand_canonical_fock_state_matches_exact_exponential() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 2..=5 {
        let h = random_hamiltonian(&mut rng, m, 1.5);
        let beta = rng.random_range(0.2..3.0);
        let mu = rng.random_range(-1.0..1.0);
        let rho = grand_canonical_gibbs_fock(&h, beta, mu).unwrap();
        assert!(trace_distance(rho.matrix(), &gibbs_oracle(h.matrix(), beta, mu)) < 1e-10);
    }
}

#[test]
fn canonical_state_matches_projected_exponential() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for m in 2..=5 {
        let h = random_hamiltonian(&mut rng, m, 1.0);
        let n = rng.random_range(0..=m);
        let beta = rng.random_range(0.2..3.0);
        let rho = canonical_gibbs(&h, beta, n).unwrap();
        assert!(trace_distance(rho.matrix(), &canonical_oracle(h.matrix(), beta, n)) < 1e-10);
        assert!(rho.number_commutator_residual() < 1e-10);
    }
}

#[test]
fn gaussian_density_matrix_matches_gibbs_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for m in 1..=5 {
        let h = random_hamiltonian(&mut rng, m, 1.0);
        let c = gibbs_correlation_matrix(&h, 1.0, 0.2).unwrap();
        let rho = density_matrix_from_correlations(&c).unwrap();
        assert!(trace_distance(rho.matrix(), &gibbs_oracle(h.matrix(), 1.0, 0.2)) < 1e-9);
    }
}

#[test]
fn three_mode_gibbs_roundtrip() {
    let h = bath_hamiltonian(2, 0.8, 5.0, 0.1);
    let c = gibbs_correlation_matrix(&h, 1.0, 0.3).unwrap();
    let rho = density_matrix_from_correlations(&c).unwrap();
    assert!(max_abs_diff(&correlations_oracle(rho.matrix()), c.matrix()) < 1e-8);
    assert!(max_abs_diff(&rho.correlations(), c.matrix()) < 1e-8);
}

#[test]
fn partial_transpose_agrees_with_block_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for m in 2..=4 {
        let dim = 1 << m;
        let raw = random_density(&mut rng, dim);
        let modes = (0..m).map(ModeLabel::Site).collect();
        let rho = impurity_negativity::FockDensityMatrix::new(raw.clone(), modes).unwrap();
        let bath: Vec<usize> = (1..m).collect();
        let pt = impurity_negativity::fock::partial_transpose(&rho, &bath).unwrap();
        assert!(max_abs_diff(&pt, &pt_blocks(&raw)) == 0.0);
        assert!((negativity(&rho) - negativity_oracle(&raw)).abs() < 1e-12);
    }
}

/// For a pure Gaussian state two modes are entangled with the rest exactly
/// when their reduced state is mixed.
#[test]
fn pure_state_reduction_detects_entanglement_with_rest() {
    let purity = |orbital: [f64; 3]| {
        let norm = orbital.iter().map(|x| x * x).sum::<f64>().sqrt();
        let phi: Vec<f64> = orbital.iter().map(|x| x / norm).collect();
        let full = CMatrix::from_fn(3, 3, |i, j| c(phi[i] * phi[j]));
        let c3 = CorrelationMatrix::from_matrix(full).unwrap();
        let reduced = reduce_modes(&c3, &[0, 1]).unwrap();
        let inside = reduced.eigenvalues().iter().any(|&x| x > 1e-9 && x < 1.0 - 1e-9);

        // Fock oracle: |ψ⟩ = Σ φ_i c_i† |0⟩, trace out mode 2 by hand.
        let cs = annihilators(3);
        let mut vac = nalgebra::DVector::<C64>::zeros(8);
        vac[0] = c(1.0);
        let psi = (0..3).fold(nalgebra::DVector::<C64>::zeros(8), |acc, i| {
            acc + cs[i].adjoint() * &vac * c(phi[i])
        });
        let rho = &psi * psi.adjoint();
        let reduced_rho = CMatrix::from_fn(4, 4, |r, s| rho[(2 * r, 2 * s)] + rho[(2 * r + 1, 2 * s + 1)]);
        let p = (&reduced_rho * &reduced_rho).trace().re;
        (inside, p < 1.0 - 1e-9)
    };
    assert_eq!(purity([1.0, 0.5, 0.0]), (false, false));
    assert_eq!(purity([1.0, 0.5, 0.7]), (true, true));
    assert_eq!(purity([0.0, 0.0, 1.0]), (false, false));
}

#[test]
fn weak_coupling_relaxation_follows_rate_equation() {
    let gamma = 0.01;
    let (eps0, mu, n0) = (0.1, -0.8, 1.0);
    let imp = ImpuritySpec::new(eps0, n0).unwrap();
    let bath = BathSpec::new(50.0 * gamma, 400, gamma, 1.0, mu).unwrap();
    let h = build_single_bath(&imp, &bath).unwrap();
    let evolution = Evolution::new(&initial_correlation_matrix_single(&imp, &bath).unwrap(), &h).unwrap();
    let f = fermi_dirac(eps0, 1.0, mu);
    for tau in [0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
        let n = mean_occupation(&evolution.at(tau / gamma), 0);
        let rate = f + (n0 - f) * (-tau).exp();
        assert!((n - rate).abs() < 0.05, "τ = {tau}: {n} vs {rate}");
    }
}

#[test]
fn chain_negativities_bound_the_full_value_for_three_levels() {
    for &(gamma, mu) in &[(0.5, 0.0), (1.0, 0.0), (2.0, 0.5), (6.0, -0.3)] {
        let h = bath_hamiltonian(3, gamma, 5.0, 0.0);
        let c = gibbs_correlation_matrix(&h, 1.0, mu).unwrap();
        let n = partial_negativities(&c, 3).unwrap();
        let full = negativity_oracle(&gibbs_oracle(h.matrix(), 1.0, mu));
        assert!(n[0] <= n[1] + 1e-10 && n[1] <= n[2] + 1e-10, "{n:?}");
        assert!((n[2] - full).abs() < 1e-9, "{} vs {full}", n[2]);
    }
}

#[test]
fn accumulated_unitary_and_reflectors_give_the_same_chain_negativities() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..4 {
        let c = random_correlation(&mut rng, 8, 0.0, 1.0);
        let t = householder_tridiagonalize(&c).unwrap();
        let via_u = CorrelationMatrix::from_matrix(t.congruence(&c)).unwrap();
        for m in 1..=4 {
            let keep: Vec<usize> = (0..=m).collect();
            let a = full_negativity(&reduce_modes(&t.chain, &keep).unwrap()).unwrap();
            let b = full_negativity(&reduce_modes(&via_u, &keep).unwrap()).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn canonical_entanglement_at_any_finite_coupling() {
    for gamma in [0.01, 0.1, 1.0] {
        let h = bath_hamiltonian(5, gamma, 5.0, 0.0);
        let rho = canonical_gibbs(&h, 1.0, 3).unwrap();
        assert!(negativity(&rho) > 0.0, "Γ = {gamma}");
        assert!((negativity(&rho) - negativity_oracle(&canonical_oracle(h.matrix(), 1.0, 3))).abs() < 1e-10);
    }
}

#[test]
fn strong_coupling_approaches_one_half_in_both_ensembles() {
    let h = bath_hamiltonian(7, 50.0, 5.0, 0.0);
    let can = negativity(&canonical_gibbs(&h, 1.0, 4).unwrap());
    let gc = negativity(&grand_canonical_gibbs_fock(&h, 1.0, 0.0).unwrap());
    assert!((can - 0.5).abs() < 0.1 && (gc - 0.5).abs() < 0.1, "{can} {gc}");
}

#[test]
fn symmetric_unbiased_junction_matches_single_bath_with_double_coupling() {
    let gamma = 0.05;
    let imp = ImpuritySpec::new(0.2, 0.3).unwrap();
    let junction = JunctionSpec {
        impurity: imp,
        mu_bar: 0.4,
        voltage: 0.0,
        asymmetry: 0.0,
        gamma,
        bandwidth: 2.0,
        levels_per_bath: 80,
        beta: 1.0,
    };
    let single = BathSpec::new(2.0, 80, 2.0 * gamma, 1.0, 0.4).unwrap();
    let ej = Evolution::new(
        &initial_correlation_matrix_junction(&junction).unwrap(),
        &build_junction(&junction).unwrap(),
    )
    .unwrap();
    let es = Evolution::new(
        &initial_correlation_matrix_single(&imp, &single).unwrap(),
        &build_single_bath(&imp, &single).unwrap(),
    )
    .unwrap();
    for tau in [0.1, 1.0, 3.0, 10.0] {
        let t = tau / gamma;
        let (a, b) = (mean_occupation(&ej.at(t), 0), mean_occupation(&es.at(t), 0));
        assert!(((a - b) / b).abs() < 1e-6, "τ = {tau}: {a} vs {b}");
    }
}
