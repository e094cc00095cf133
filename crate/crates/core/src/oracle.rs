//! Brute-force reference over the full `2^S` Hilbert space.
//!
//! Used to validate the single-excitation reduction, the generator
//! diagonal, and the pair partial trace on small chains. Basis states are
//! bit strings with site index 0 as the most significant bit; bit value 1
//! is an excitation (`sigma^z = -1`).
//!
//! Every term of the Hamiltonian is real in this basis, so `H` is stored
//! as a real symmetric matrix.

use nalgebra::{DMatrix, DVector, Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::chain::{build_bonds, ChainSpec, NoiseState};
use crate::entanglement::PairState;
use crate::error::{Error, Result};
use crate::propagator::AmplitudeVector;

pub const MAX_ORACLE_SITES: usize = 12;

/// State vector over `2^S` computational basis states.
#[derive(Clone, Debug, PartialEq)]
pub struct FullState {
    n_sites: usize,
    psi: DVector<Complex64>,
}

impl FullState {
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.psi
    }

    pub fn norm(&self) -> f64 {
        self.psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

#[inline]
fn site_bit(n_sites: usize, site: usize) -> usize {
    1 << (n_sites - 1 - site)
}

fn guard(n_sites: usize) -> Result<()> {
    if n_sites > MAX_ORACLE_SITES {
        return Err(Error::OracleSize {
            got: n_sites,
            max: MAX_ORACLE_SITES,
        });
    }
    Ok(())
}

/// Dense Hamiltonian: `sum_b J_b (XX + YY)_b + sum_s h_s (1 - Z_s) + sum_b D_b (ZZ)_b`.
pub fn build_full_hamiltonian(
    spec: &ChainSpec,
    couplings: &[f64],
    noise: &NoiseState,
) -> Result<DMatrix<f64>> {
    let s = spec.total_sites();
    guard(s)?;
    let bonds = build_bonds(spec)?;
    if couplings.len() != bonds.len() {
        return Err(Error::Dimension {
            what: "couplings",
            got: couplings.len(),
            expected: bonds.len(),
        });
    }
    if noise.fields.len() != s || noise.zz.len() != bonds.len() {
        return Err(Error::Config("noise state does not match chain".into()));
    }

    let dim = 1usize << s;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for state in 0..dim {
        let mut diag = 0.0;
        for (site, hs) in noise.fields.iter().enumerate() {
            if state & site_bit(s, site) != 0 {
                diag += 2.0 * hs;
            }
        }
        for ((bond, &jb), &zz) in bonds.iter().zip(couplings).zip(&noise.zz) {
            let (bi, bj) = (site_bit(s, bond.i), site_bit(s, bond.j));
            let (ni, nj) = (state & bi != 0, state & bj != 0);
            diag += if ni == nj { zz } else { -zz };
            // XX + YY = 2 (s+ s- + s- s+): flips an antiparallel pair
            if ni != nj {
                h[(state ^ bi ^ bj, state)] += 2.0 * jb;
            }
        }
        h[(state, state)] += diag;
    }
    Ok(h)
}

/// `Z = sum_s sigma^z_s` evaluated on a basis state.
fn total_z(n_sites: usize, state: usize) -> f64 {
    let ones = state.count_ones() as f64;
    n_sites as f64 - 2.0 * ones
}

/// `max |[H, Z]|` over all entries.
pub fn commutator_with_total_z(h: &DMatrix<f64>, n_sites: usize) -> f64 {
    let mut worst = 0.0_f64;
    for col in 0..h.ncols() {
        let zc = total_z(n_sites, col);
        for row in 0..h.nrows() {
            let v = h[(row, col)] * (zc - total_z(n_sites, row));
            worst = worst.max(v.abs());
        }
    }
    worst
}

/// Block of `H` on the single-excitation states, in site order.
pub fn single_excitation_block(h: &DMatrix<f64>, n_sites: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n_sites, n_sites, |a, b| {
        h[(site_bit(n_sites, a), site_bit(n_sites, b))]
    })
}

/// `exp(-i H t) psi` via the eigendecomposition of `H`.
pub fn full_evolve(h: &DMatrix<f64>, psi: &FullState, t: f64) -> Result<FullState> {
    guard(psi.n_sites)?;
    if t == 0.0 {
        return Ok(psi.clone());
    }
    let dim = h.nrows();
    let eig = SymmetricEigen::try_new(h.clone(), f64::EPSILON, 100 * dim).ok_or_else(|| {
        Error::Eigen {
            dim,
            max_abs: h.amax(),
            frobenius: h.norm(),
        }
    })?;
    let v = &eig.eigenvectors;
    let vt = v.transpose();
    let mut re = &vt * psi.psi.map(|z| z.re);
    let mut im = &vt * psi.psi.map(|z| z.im);
    for ((e, r), i) in eig.eigenvalues.iter().zip(re.iter_mut()).zip(im.iter_mut()) {
        let (sin, cos) = (-e * t).sin_cos();
        let (a, b) = (*r, *i);
        *r = a * cos - b * sin;
        *i = a * sin + b * cos;
    }
    let re = v * re;
    let im = v * im;
    Ok(FullState {
        n_sites: psi.n_sites,
        psi: re.zip_map(&im, Complex64::new),
    })
}

/// Places single-excitation amplitudes on the basis states `|1_j>`.
pub fn embed_single_excitation(c: &AmplitudeVector) -> Result<FullState> {
    let s = c.len();
    guard(s)?;
    let mut psi = DVector::zeros(1 << s);
    for (site, z) in c.iter().enumerate() {
        psi[site_bit(s, site)] = *z;
    }
    Ok(FullState { n_sites: s, psi })
}

/// Projects onto the single-excitation sector; also returns the discarded weight.
pub fn project_single_excitation(psi: &FullState) -> (AmplitudeVector, f64) {
    let s = psi.n_sites;
    let c: Vec<Complex64> = (0..s).map(|site| psi.psi[site_bit(s, site)]).collect();
    let kept: f64 = c.iter().map(|z| z.norm_sqr()).sum();
    let total: f64 = psi.psi.iter().map(|z| z.norm_sqr()).sum();
    (AmplitudeVector::from_vec(c), (total - kept).max(0.0))
}

/// Reduced density matrix of sites `(i, j)` by explicit partial trace.
pub fn partial_trace_pair(psi: &FullState, i: usize, j: usize) -> PairState {
    assert_ne!(i, j);
    let s = psi.n_sites;
    let (bi, bj) = (site_bit(s, i), site_bit(s, j));
    let local = |state: usize| ((state & bi != 0) as usize) << 1 | (state & bj != 0) as usize;
    let env_mask = !(bi | bj);
    let mut rho = Matrix4::from_element(Complex64::new(0.0, 0.0));
    let dim = 1usize << s;
    for a in 0..dim {
        for b in 0..dim {
            if a & env_mask == b & env_mask {
                rho[(local(a), local(b))] += psi.psi[a] * psi.psi[b].conj();
            }
        }
    }
    PairState(rho)
}

/// Discrepancies between the reduced and full-space descriptions of one configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleCheck {
    /// `max |c_sub(t) - P psi_full(t)|`.
    pub amplitude_diff: f64,
    /// `max |H_block / 2 - K|`.
    pub generator_diff: f64,
    /// `max |[H, Z]|`.
    pub commutator: f64,
    /// Weight outside the single-excitation sector after evolution.
    pub leaked_weight: f64,
    /// `max |rho_oracle - rho_reduced|` on the readout pair.
    pub pair_density_diff: f64,
}

/// Compares generator, dynamics, and readout state against the full space at time `t`.
pub fn check_configuration(
    spec: &ChainSpec,
    couplings: &[f64],
    noise: &NoiseState,
    t: f64,
) -> Result<OracleCheck> {
    use crate::chain::{build_generator, initial_amplitudes};
    use crate::entanglement::reduced_pair_density;
    use crate::propagator::expm_step;

    let s = spec.total_sites();
    let bonds = build_bonds(spec)?;
    let k = build_generator(&bonds, noise, couplings)?;
    let h = build_full_hamiltonian(spec, couplings, noise)?;

    let block = single_excitation_block(&h, s) / 2.0;
    let generator_diff = (block - k.matrix()).amax();
    let commutator = commutator_with_total_z(&h, s);

    let c0 = initial_amplitudes(spec);
    let sub = expm_step(&k, t, &c0)?;
    let full = full_evolve(&h, &embed_single_excitation(&c0)?, t)?;
    let (projected, leaked_weight) = project_single_excitation(&full);

    let (i, j) = spec.readout_pair();
    let rho_sub = reduced_pair_density(&sub, i, j);
    let rho_full = partial_trace_pair(&full, i, j);
    let pair_density_diff = (rho_sub.0 - rho_full.0)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);

    Ok(OracleCheck {
        amplitude_diff: sub.max_diff(&projected),
        generator_diff,
        commutator,
        leaked_weight,
        pair_density_diff,
    })
}

/// Uniformly random couplings in `[0.5, 2.5]`, fields and ZZ in `[-0.5, 0.5]`.
pub fn random_configuration(spec: &ChainSpec, seed: u64) -> Result<(Vec<f64>, NoiseState)> {
    use rand::{Rng, SeedableRng};
    let bonds = build_bonds(spec)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let couplings = (0..bonds.len()).map(|_| rng.random_range(0.5..2.5)).collect();
    let fields = (0..bonds.n_sites()).map(|_| rng.random_range(-0.5..0.5)).collect();
    let zz = (0..bonds.len()).map(|_| rng.random_range(-0.5..0.5)).collect();
    Ok((couplings, NoiseState { fields, zz }))
}
