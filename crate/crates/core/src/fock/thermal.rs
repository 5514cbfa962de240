//! Thermal many-body states built from Slater determinants of the
//! single-particle eigenmodes.

use crate::error::{Error, Result};
use crate::gaussian::SpectralDecomposition;
use crate::linalg::{CMatrix, RMatrix, C64};
use crate::model::SingleParticleHamiltonian;

use super::{check_mode_count, mode_bit, sectors, FockDensityMatrix};

/// Eigenstates of `Ĥ` with a fixed particle number.
#[derive(Clone, Debug)]
pub struct SlaterSector {
    pub particles: usize,
    /// Occupation basis states of this sector, ascending.
    pub states: Vec<usize>,
    /// `E_S = Σ_{k∈S} h_k` for each filled orbital set `S`.
    pub energies: Vec<f64>,
    /// Column `S` holds `⟨n|S⟩` for the states in `states`.
    pub amplitudes: RMatrix,
}

/// Many-body eigenstates `|ψ_i⟩` of the quadratic Hamiltonian, grouped by
/// particle number.
#[derive(Clone, Debug)]
pub struct ManyBodySpectrum {
    mode_count: usize,
    sectors: Vec<SlaterSector>,
}

impl ManyBodySpectrum {
    /// All particle-number sectors.
    pub fn full(h: &SingleParticleHamiltonian) -> Result<Self> {
        Self::new(h, 0..=h.dim())
    }

    pub fn new(h: &SingleParticleHamiltonian, particle_numbers: impl IntoIterator<Item = usize>) -> Result<Self> {
        let m = h.dim();
        check_mode_count(m)?;
        let spectrum = SpectralDecomposition::of(h);
        let all = sectors(m);
        let mut out = Vec::new();
        for n in particle_numbers {
            if n > m {
                return Err(Error::param(
                    "particles",
                    format!("N = {n} exceeds the {m} available modes"),
                ));
            }
            out.push(slater_sector(&spectrum, &all[n], n, m));
        }
        Ok(Self {
            mode_count: m,
            sectors: out,
        })
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn sectors(&self) -> &[SlaterSector] {
        &self.sectors
    }

    pub fn sector(&self, particles: usize) -> Option<&SlaterSector> {
        self.sectors.iter().find(|s| s.particles == particles)
    }

    /// Flattened `(E_i, N_i)` over all stored eigenstates.
    pub fn levels(&self) -> impl Iterator<Item = (f64, usize)> + '_ {
        self.sectors
            .iter()
            .flat_map(|s| s.energies.iter().map(move |&e| (e, s.particles)))
    }

    /// Eigenstate `index` of sector `particles` as a full Fock-space vector.
    pub fn eigenvector(&self, particles: usize, index: usize) -> Option<Vec<f64>> {
        let sector = self.sector(particles)?;
        if index >= sector.energies.len() {
            return None;
        }
        let mut v = vec![0.0; 1 << self.mode_count];
        for (r, &s) in sector.states.iter().enumerate() {
            v[s] = sector.amplitudes[(r, index)];
        }
        Some(v)
    }

    /// `Σ_i w_i |ψ_i⟩⟨ψ_i| / Σ_i w_i` with `ln w_i = log_weight(E_i, N_i)`.
    fn mixture(&self, log_weight: impl Fn(f64, usize) -> f64) -> CMatrix {
        let dim = 1usize << self.mode_count;
        let logs: Vec<Vec<f64>> = self
            .sectors
            .iter()
            .map(|s| s.energies.iter().map(|&e| log_weight(e, s.particles)).collect())
            .collect();
        let top = logs.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut rho = CMatrix::zeros(dim, dim);
        let mut partition = 0.0;
        for (sector, logs) in self.sectors.iter().zip(&logs) {
            let weights: Vec<f64> = logs.iter().map(|l| (l - top).exp()).collect();
            partition += weights.iter().sum::<f64>();
            let a = &sector.amplitudes;
            let scaled = RMatrix::from_fn(a.nrows(), a.ncols(), |r, k| a[(r, k)] * weights[k]);
            let block = scaled * a.transpose();
            for (i, &si) in sector.states.iter().enumerate() {
                for (j, &sj) in sector.states.iter().enumerate() {
                    rho[(si, sj)] = C64::new(block[(i, j)], 0.0);
                }
            }
        }
        rho / C64::new(partition, 0.0)
    }
}

fn slater_sector(spectrum: &SpectralDecomposition, states: &[usize], particles: usize, m: usize) -> SlaterSector {
    // Orbital subsets use the same bit encoding as occupation states.
    let orbital_sets = states;
    let modes_of = |set: usize| -> Vec<usize> { (0..m).filter(|&k| set & mode_bit(k, m) != 0).collect() };
    let energies = orbital_sets
        .iter()
        .map(|&set| modes_of(set).iter().map(|&k| spectrum.energies[k]).sum())
        .collect();
    let rows: Vec<Vec<usize>> = states.iter().map(|&s| modes_of(s)).collect();
    let cols: Vec<Vec<usize>> = orbital_sets.iter().map(|&s| modes_of(s)).collect();
    let p = &spectrum.vectors;
    let mut scratch = vec![0.0; particles * particles];
    let amplitudes = RMatrix::from_fn(states.len(), orbital_sets.len(), |r, c| {
        for (a, &i) in rows[r].iter().enumerate() {
            for (b, &k) in cols[c].iter().enumerate() {
                scratch[a * particles + b] = p[(i, k)];
            }
        }
        determinant(&mut scratch, particles)
    });
    SlaterSector {
        particles,
        states: states.to_vec(),
        energies,
        amplitudes,
    }
}

/// Determinant of a row-major `n×n` matrix by partial pivoting; destroys input.
fn determinant(a: &mut [f64], n: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x * n + col].abs().total_cmp(&a[y * n + col].abs()))
            .unwrap_or(col);
        if a[pivot * n + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
            }
            det = -det;
        }
        let d = a[col * n + col];
        det *= d;
        for row in col + 1..n {
            let factor = a[row * n + col] / d;
            if factor != 0.0 {
                for k in col..n {
                    a[row * n + k] -= factor * a[col * n + k];
                }
            }
        }
    }
    det
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::param("beta", format!("β must be finite and ≥ 0, got {beta}")));
    }
    Ok(())
}

/// Canonical state `Z⁻¹ Σ_i δ_{N_i,N} e^{−βE_i} |ψ_i⟩⟨ψ_i|`.
pub fn canonical_gibbs(h: &SingleParticleHamiltonian, beta: f64, particles: usize) -> Result<FockDensityMatrix> {
    check_beta(beta)?;
    let spectrum = ManyBodySpectrum::new(h, [particles])?;
    debug_assert!(!spectrum.sectors[0].energies.is_empty());
    let rho = spectrum.mixture(|e, _| -beta * e);
    Ok(FockDensityMatrix::from_parts_unchecked(rho, h.modes().to_vec()))
}

/// Grand-canonical state `e^{−β(Ĥ−μN̂)}/Z` from the full Slater spectrum.
pub fn grand_canonical_gibbs_fock(h: &SingleParticleHamiltonian, beta: f64, mu: f64) -> Result<FockDensityMatrix> {
    check_beta(beta)?;
    let spectrum = ManyBodySpectrum::full(h)?;
    let rho = spectrum.mixture(|e, n| -beta * (e - mu * n as f64));
    Ok(FockDensityMatrix::from_parts_unchecked(rho, h.modes().to_vec()))
}
