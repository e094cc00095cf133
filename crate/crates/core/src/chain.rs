//! Chain topologies and the single-excitation generator matrix.
//!
//! Sites are stored with contiguous indices `0..S`. For the proposed
//! topology the label order is `A, 1, 2, ..., N, B`; for the standard
//! (strictly linear) chain it is `1, ..., N`.
//!
//! The generator `K` holds bare couplings and fields. Evolution is
//! `c(t) = exp(-2i K t) c(0)` in units where `J = hbar = 1`; the factor
//! two lives in the propagator.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::propagator::AmplitudeVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    /// Pendant sender/receiver qubits: `A` and `1` both couple to `2`,
    /// `N` and `B` both couple to `N-1`.
    Proposed,
    /// Linear chain `1 - 2 - ... - N`, Bell pair on `(1, 2)`.
    Standard,
}

/// Lattice definition: topology, size, and base couplings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpec {
    pub topology: Topology,
    /// Backbone length `N` (must be at least 4).
    pub n_middle: usize,
    /// Base strength of the end bonds (`J`).
    pub coupling_end: f64,
    /// Base strength of the backbone bonds (`J_m`).
    pub coupling_middle: f64,
}

impl ChainSpec {
    /// Proposed chain with `J = 1`.
    pub fn proposed(n_middle: usize, coupling_middle: f64) -> Self {
        ChainSpec {
            topology: Topology::Proposed,
            n_middle,
            coupling_end: 1.0,
            coupling_middle,
        }
    }

    /// Standard chain with `J = 1` on `(1,2)` and `(N-1,N)` and `J_m` inside.
    /// Setting `coupling_end == coupling_middle` gives the uniform chain.
    pub fn standard(n_middle: usize, coupling_middle: f64) -> Self {
        ChainSpec {
            topology: Topology::Standard,
            n_middle,
            coupling_end: 1.0,
            coupling_middle,
        }
    }

    pub fn with_middle(&self, coupling_middle: f64) -> Self {
        ChainSpec {
            coupling_middle,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_middle < 4 {
            return Err(Error::Config(format!(
                "n_middle must be at least 4, got {}",
                self.n_middle
            )));
        }
        for (name, v) in [
            ("coupling_end", self.coupling_end),
            ("coupling_middle", self.coupling_middle),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Number of sites `S`.
    pub fn total_sites(&self) -> usize {
        match self.topology {
            Topology::Proposed => self.n_middle + 2,
            Topology::Standard => self.n_middle,
        }
    }

    /// Sites holding the initial Bell pair.
    pub fn source_pair(&self) -> (usize, usize) {
        // (A, 1) and (1, 2) both map to indices (0, 1)
        (0, 1)
    }

    /// Sites whose reduced state is scored: `(N, B)` or `(N-1, N)`.
    pub fn readout_pair(&self) -> (usize, usize) {
        let s = self.total_sites();
        (s - 2, s - 1)
    }

    /// Label of a site index (`A`, `1`..`N`, `B`).
    pub fn label(&self, index: usize) -> String {
        match self.topology {
            Topology::Proposed if index == 0 => "A".to_string(),
            Topology::Proposed if index == self.n_middle + 1 => "B".to_string(),
            Topology::Proposed => index.to_string(),
            Topology::Standard => (index + 1).to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        let s = self.total_sites();
        match (self.topology, label) {
            (Topology::Proposed, "A") => Some(0),
            (Topology::Proposed, "B") => Some(s - 1),
            (Topology::Proposed, l) => l
                .parse::<usize>()
                .ok()
                .filter(|&j| (1..=self.n_middle).contains(&j)),
            (Topology::Standard, l) => l
                .parse::<usize>()
                .ok()
                .filter(|&j| (1..=self.n_middle).contains(&j))
                .map(|j| j - 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bond {
    pub i: usize,
    pub j: usize,
    pub strength: f64,
}

/// Undirected bonds with their base strengths, in canonical order.
///
/// The order is part of the reproducibility contract: disorder draws are
/// consumed bond by bond in this order.
#[derive(Clone, Debug, PartialEq)]
pub struct BondSet {
    n_sites: usize,
    bonds: Vec<Bond>,
}

impl BondSet {
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn len(&self) -> usize {
        self.bonds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bonds.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Bond> {
        self.bonds.iter()
    }

    pub fn as_slice(&self) -> &[Bond] {
        &self.bonds
    }

    /// Clean coupling values, one per bond.
    pub fn base_couplings(&self) -> Vec<f64> {
        self.bonds.iter().map(|b| b.strength).collect()
    }

    pub fn degree(&self, site: usize) -> usize {
        self.bonds
            .iter()
            .filter(|b| b.i == site || b.j == site)
            .count()
    }
}

impl<'a> IntoIterator for &'a BondSet {
    type Item = &'a Bond;
    type IntoIter = std::slice::Iter<'a, Bond>;

    fn into_iter(self) -> Self::IntoIter {
        self.bonds.iter()
    }
}

pub fn build_bonds(spec: &ChainSpec) -> Result<BondSet> {
    spec.validate()?;
    let n = spec.n_middle;
    let (je, jm) = (spec.coupling_end, spec.coupling_middle);
    let bond = |i, j, strength| Bond { i, j, strength };

    let bonds = match spec.topology {
        Topology::Proposed => {
            // site label j sits at index j; A = 0, B = n + 1
            let mut bonds = vec![bond(0, 2, je), bond(1, 2, je)];
            bonds.extend((2..=n - 2).map(|j| bond(j, j + 1, jm)));
            bonds.push(bond(n - 1, n, je));
            bonds.push(bond(n - 1, n + 1, je));
            bonds
        }
        Topology::Standard => {
            let mut bonds = vec![bond(0, 1, je)];
            bonds.extend((1..n - 2).map(|i| bond(i, i + 1, jm)));
            bonds.push(bond(n - 2, n - 1, je));
            bonds
        }
    };

    Ok(BondSet {
        n_sites: spec.total_sites(),
        bonds,
    })
}

/// Site fields `h_k` and bond ZZ strengths `Delta_b`.
///
/// `zz` is aligned with the [`BondSet`] order, so the ZZ topology mirrors
/// the XX topology exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseState {
    pub fields: Vec<f64>,
    pub zz: Vec<f64>,
}

impl NoiseState {
    pub fn zero(bonds: &BondSet) -> Self {
        NoiseState {
            fields: vec![0.0; bonds.n_sites()],
            zz: vec![0.0; bonds.len()],
        }
    }

    /// Sum of all ZZ strengths.
    pub fn zz_total(&self) -> f64 {
        self.zz.iter().sum()
    }
}

/// Real symmetric `S x S` matrix `K`; the evolution generator is `-2iK`.
///
/// Immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMatrix {
    k: DMatrix<f64>,
}

impl GeneratorMatrix {
    /// Wraps an arbitrary matrix. Panics if it is not square and exactly symmetric.
    pub fn from_matrix(k: DMatrix<f64>) -> Self {
        assert!(k.is_square(), "generator must be square");
        assert!(
            k == k.transpose(),
            "generator must be exactly symmetric"
        );
        GeneratorMatrix { k }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.k
    }

    pub fn dim(&self) -> usize {
        self.k.nrows()
    }

    pub fn max_abs(&self) -> f64 {
        self.k.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// `K + gamma * I`.
    pub fn shifted(&self, gamma: f64) -> Self {
        let mut k = self.k.clone();
        for d in 0..k.nrows() {
            k[(d, d)] += gamma;
        }
        GeneratorMatrix { k }
    }
}

/// Assembles `K` from per-bond couplings and the noise state.
///
/// Diagonal: `K_kk = h_k + Delta/2 - sum of Delta_b over bonds touching k`.
pub fn build_generator(
    bonds: &BondSet,
    noise: &NoiseState,
    couplings: &[f64],
) -> Result<GeneratorMatrix> {
    let s = bonds.n_sites();
    check_len("couplings", couplings.len(), bonds.len())?;
    check_len("fields", noise.fields.len(), s)?;
    check_len("zz", noise.zz.len(), bonds.len())?;

    let half_total = noise.zz_total() / 2.0;
    let mut k = DMatrix::<f64>::zeros(s, s);
    for (d, h) in noise.fields.iter().enumerate() {
        k[(d, d)] = h + half_total;
    }
    for ((bond, &coupling), &zz) in bonds.iter().zip(couplings).zip(&noise.zz) {
        k[(bond.i, bond.j)] = coupling;
        k[(bond.j, bond.i)] = coupling;
        k[(bond.i, bond.i)] -= zz;
        k[(bond.j, bond.j)] -= zz;
    }
    Ok(GeneratorMatrix { k })
}

fn check_len(what: &'static str, got: usize, expected: usize) -> Result<()> {
    if got != expected {
        return Err(Error::Dimension {
            what,
            got,
            expected,
        });
    }
    Ok(())
}

/// Bell pair `(|01> + |10>)/sqrt 2` on the source pair, vacuum elsewhere.
pub fn initial_amplitudes(spec: &ChainSpec) -> AmplitudeVector {
    let (a, b) = spec.source_pair();
    let mut c = AmplitudeVector::zeros(spec.total_sites());
    c[a] = std::f64::consts::FRAC_1_SQRT_2.into();
    c[b] = std::f64::consts::FRAC_1_SQRT_2.into();
    c
}
