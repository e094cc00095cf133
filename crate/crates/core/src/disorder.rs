//! Per-realization disorder schedules.
//!
//! All three disorder classes share one recursive update rule, applied
//! once per period `tau = T_max / n`:
//!
//! ```text
//! J_b(k)  = J_b(k-1) * (1 + dJ_b(k))
//! h_s(k)  = h_s(k-1) + dh_s(k)
//! D_b(k)  = D_b(k-1) + dD_b(k)
//! ```
//!
//! with every increment drawn from `Uniform[-p, p]`. Static disorder is a
//! single step with site-resolved draws; dynamic disorder shares one draw
//! per channel across all bonds/sites; fluctuating disorder draws every
//! bond and site independently at every step.
//!
//! Draw order within a step: couplings bond by bond, then fields site by
//! site, then ZZ bond by bond. Disabled channels consume no draws.

use rand::distr::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chain::{build_bonds, BondSet, ChainSpec, NoiseState};
use crate::error::{Error, Result};

/// Upper bound on the disorder strength `p`.
pub const MAX_STRENGTH: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DisorderKind {
    None,
    Static,
    Dynamic,
    Fluctuating,
}

/// Which Hamiltonian terms receive disorder.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Channels {
    pub coupling: bool,
    pub field: bool,
    pub zz: bool,
}

impl Channels {
    pub const NONE: Channels = Channels {
        coupling: false,
        field: false,
        zz: false,
    };
    pub const COUPLING: Channels = Channels {
        coupling: true,
        field: false,
        zz: false,
    };
    pub const FIELD: Channels = Channels {
        coupling: false,
        field: true,
        zz: false,
    };
    pub const ZZ: Channels = Channels {
        coupling: false,
        field: false,
        zz: true,
    };
    pub const ALL: Channels = Channels {
        coupling: true,
        field: true,
        zz: true,
    };

    pub fn any(&self) -> bool {
        self.coupling || self.field || self.zz
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisorderSpec {
    pub kind: DisorderKind,
    /// Half-width `p` of the increment distribution. Relative for
    /// couplings, absolute (units of `J`) for fields and ZZ.
    pub strength: f64,
    pub channels: Channels,
    /// Number of periods `n`; ignored (treated as 1) for static disorder.
    pub n_steps: usize,
    /// Readout time `T_max`.
    pub total_time: f64,
    /// Field and ZZ values are redrawn every step instead of accumulating.
    #[serde(default)]
    pub fresh_draws: bool,
}

impl DisorderSpec {
    pub fn clean(total_time: f64) -> Self {
        DisorderSpec {
            kind: DisorderKind::None,
            strength: 0.0,
            channels: Channels::NONE,
            n_steps: 1,
            total_time,
            fresh_draws: false,
        }
    }

    pub fn with_strength(&self, strength: f64) -> Self {
        DisorderSpec {
            strength,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=MAX_STRENGTH).contains(&self.strength) {
            return Err(Error::Config(format!(
                "disorder strength must lie in [0, {MAX_STRENGTH}], got {}",
                self.strength
            )));
        }
        if self.n_steps == 0 {
            return Err(Error::Config("n_steps must be at least 1".into()));
        }
        if !(self.total_time.is_finite() && self.total_time >= 0.0) {
            return Err(Error::Config(format!(
                "total_time must be finite and non-negative, got {}",
                self.total_time
            )));
        }
        Ok(())
    }

    /// Number of segments in a schedule.
    pub fn effective_steps(&self) -> usize {
        match self.kind {
            DisorderKind::None | DisorderKind::Static => 1,
            DisorderKind::Dynamic | DisorderKind::Fluctuating => self.n_steps,
        }
    }

    /// Period `tau`.
    pub fn period(&self) -> f64 {
        self.total_time / self.effective_steps() as f64
    }
}

/// Couplings and noise held constant for `duration`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub couplings: Vec<f64>,
    pub noise: NoiseState,
    pub duration: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealizationSchedule {
    bonds: BondSet,
    segments: Vec<Segment>,
}

impl RealizationSchedule {
    /// One segment of the ordered system lasting `total_time`.
    pub fn clean(bonds: BondSet, total_time: f64) -> Self {
        let segment = Segment {
            couplings: bonds.base_couplings(),
            noise: NoiseState::zero(&bonds),
            duration: total_time,
        };
        RealizationSchedule {
            bonds,
            segments: vec![segment],
        }
    }

    pub fn from_segments(bonds: BondSet, segments: Vec<Segment>) -> Self {
        RealizationSchedule { bonds, segments }
    }

    pub fn bonds(&self) -> &BondSet {
        &self.bonds
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn total_time(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedPolicy {
    pub master_seed: u64,
}

// SplitMix64 finalizer; a bijection on u64.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stream seed for one `(p_index, realization_index)` cell.
///
/// The indices are packed into one word and XORed with the mixed master
/// seed before a final SplitMix64 round, so the map is injective for
/// indices below `2^32`.
pub fn derive_seed(policy: SeedPolicy, p_index: usize, realization_index: usize) -> u64 {
    assert!(
        p_index < (1 << 32) && realization_index < (1 << 32),
        "seed indices must fit in 32 bits"
    );
    let packed = ((p_index as u64) << 32) | realization_index as u64;
    let master = mix64(policy.master_seed.wrapping_add(0x9e37_79b9_7f4a_7c15));
    mix64(master ^ packed)
}

pub(crate) struct Increments {
    dist: Option<Uniform<f64>>,
}

impl Increments {
    pub(crate) fn new(p: f64) -> Result<Self> {
        if p == 0.0 {
            return Ok(Increments { dist: None });
        }
        let dist = Uniform::new_inclusive(-p, p)
            .map_err(|e| Error::Config(format!("invalid disorder strength {p}: {e}")))?;
        Ok(Increments { dist: Some(dist) })
    }

    pub(crate) fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match &self.dist {
            Some(d) => d.sample(rng),
            None => 0.0,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sharing {
    /// One draw per channel per step, shared by every bond/site.
    Shared,
    /// Independent draws per bond/site.
    Resolved,
}

fn sample_walk(
    spec: &DisorderSpec,
    chain: &ChainSpec,
    seed: u64,
    steps: usize,
    sharing: Sharing,
) -> Result<RealizationSchedule> {
    spec.validate()?;
    let bonds = build_bonds(chain)?;
    let inc = Increments::new(spec.strength)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = spec.total_time / steps as f64;

    let mut couplings = bonds.base_couplings();
    let mut noise = NoiseState::zero(&bonds);
    let mut segments = Vec::with_capacity(steps);
    let ch = spec.channels;

    for _ in 0..steps {
        if ch.coupling {
            match sharing {
                Sharing::Shared => {
                    let d = inc.draw(&mut rng);
                    couplings.iter_mut().for_each(|j| *j *= 1.0 + d);
                }
                Sharing::Resolved => {
                    for j in couplings.iter_mut() {
                        *j *= 1.0 + inc.draw(&mut rng);
                    }
                }
            }
        }
        if ch.field {
            apply_additive(&mut noise.fields, &inc, &mut rng, sharing, spec.fresh_draws);
        }
        if ch.zz {
            apply_additive(&mut noise.zz, &inc, &mut rng, sharing, spec.fresh_draws);
        }
        segments.push(Segment {
            couplings: couplings.clone(),
            noise: noise.clone(),
            duration: tau,
        });
    }

    Ok(RealizationSchedule { bonds, segments })
}

fn apply_additive(
    values: &mut [f64],
    inc: &Increments,
    rng: &mut ChaCha8Rng,
    sharing: Sharing,
    fresh: bool,
) {
    let update = |v: &mut f64, d: f64| {
        if fresh {
            *v = d;
        } else {
            *v += d;
        }
    };
    match sharing {
        Sharing::Shared => {
            let d = inc.draw(rng);
            values.iter_mut().for_each(|v| update(v, d));
        }
        Sharing::Resolved => {
            for v in values.iter_mut() {
                update(v, inc.draw(rng));
            }
        }
    }
}

fn expect_kind(spec: &DisorderSpec, kind: DisorderKind) -> Result<()> {
    if spec.kind != kind {
        return Err(Error::Config(format!(
            "expected {kind:?} disorder, got {:?}",
            spec.kind
        )));
    }
    Ok(())
}

/// Time-independent, site-dependent disorder: a single segment.
pub fn sample_static(spec: &DisorderSpec, chain: &ChainSpec, seed: u64) -> Result<RealizationSchedule> {
    expect_kind(spec, DisorderKind::Static)?;
    sample_walk(spec, chain, seed, 1, Sharing::Resolved)
}

/// Time-dependent, position-independent disorder.
pub fn sample_dynamic(spec: &DisorderSpec, chain: &ChainSpec, seed: u64) -> Result<RealizationSchedule> {
    expect_kind(spec, DisorderKind::Dynamic)?;
    sample_walk(spec, chain, seed, spec.n_steps, Sharing::Shared)
}

/// Time- and position-dependent disorder.
pub fn sample_fluctuating(
    spec: &DisorderSpec,
    chain: &ChainSpec,
    seed: u64,
) -> Result<RealizationSchedule> {
    expect_kind(spec, DisorderKind::Fluctuating)?;
    sample_walk(spec, chain, seed, spec.n_steps, Sharing::Resolved)
}

/// Dispatches on `spec.kind`.
pub fn sample(spec: &DisorderSpec, chain: &ChainSpec, seed: u64) -> Result<RealizationSchedule> {
    match spec.kind {
        DisorderKind::None => {
            spec.validate()?;
            Ok(RealizationSchedule::clean(build_bonds(chain)?, spec.total_time))
        }
        DisorderKind::Static => sample_static(spec, chain, seed),
        DisorderKind::Dynamic => sample_dynamic(spec, chain, seed),
        DisorderKind::Fluctuating => sample_fluctuating(spec, chain, seed),
    }
}
