//! Clean-system optimum search over readout time and backbone coupling.
//!
//! `EoF(t)` is strongly oscillatory, so the time axis is scanned on a fine
//! uniform grid first and the best grid point is then polished with a
//! golden-section search. Only the two readout amplitudes are formed on the
//! grid; mode phases advance by a fixed rotation per step and are
//! re-anchored to exact values periodically.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{build_bonds, build_generator, initial_amplitudes, ChainSpec, NoiseState};
use crate::entanglement::eof;
use crate::error::{Error, Result};
use crate::propagator::{evolve_trace, SpectralCache};

/// Target width of the golden-section bracket.
pub const TIME_TOLERANCE: f64 = 1e-6;

const REANCHOR_EVERY: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub jm: f64,
    pub t_star: f64,
    pub eof_star: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JmScan {
    pub best: ScanPoint,
    pub curve: Vec<ScanPoint>,
}

/// Default scan window `[0, 5 S / J_m + 50]`.
pub fn default_time_window(chain: &ChainSpec) -> f64 {
    5.0 * chain.total_sites() as f64 / chain.coupling_middle + 50.0
}

/// Readout-pair amplitudes of the clean chain as sums over normal modes.
struct PairModes {
    theta: Vec<f64>,
    // coefficient of mode m in c_i(t) and c_j(t), split re/im
    ui: (Vec<f64>, Vec<f64>),
    uj: (Vec<f64>, Vec<f64>),
}

impl PairModes {
    fn new(chain: &ChainSpec) -> Result<Self> {
        let bonds = build_bonds(chain)?;
        let k = build_generator(&bonds, &NoiseState::zero(&bonds), &bonds.base_couplings())?;
        let cache = SpectralCache::new(&k)?;
        let (a_re, a_im) = cache.to_modes(&initial_amplitudes(chain));
        let v = cache.eigenvectors();
        let (i, j) = chain.readout_pair();
        let n = cache.dim();
        let coeffs = |row: usize| {
            let re = (0..n).map(|m| v[(row, m)] * a_re[m]).collect();
            let im = (0..n).map(|m| v[(row, m)] * a_im[m]).collect();
            (re, im)
        };
        Ok(PairModes {
            theta: cache.eigenvalues().iter().copied().collect(),
            ui: coeffs(i),
            uj: coeffs(j),
        })
    }

    fn concurrence_at(&self, t: f64) -> f64 {
        let (mut ir, mut ii, mut jr, mut ji) = (0.0, 0.0, 0.0, 0.0);
        for (m, theta) in self.theta.iter().enumerate() {
            let (s, c) = (-2.0 * theta * t).sin_cos();
            ir += self.ui.0[m] * c - self.ui.1[m] * s;
            ii += self.ui.0[m] * s + self.ui.1[m] * c;
            jr += self.uj.0[m] * c - self.uj.1[m] * s;
            ji += self.uj.0[m] * s + self.uj.1[m] * c;
        }
        2.0 * (ir * ir + ii * ii).sqrt() * (jr * jr + ji * ji).sqrt()
    }

    /// Grid index with the largest concurrence on `t_k = k * dt`, `k = 0..=steps`.
    fn grid_argmax(&self, dt: f64, steps: usize) -> (usize, f64) {
        let n = self.theta.len();
        let (mut zr, mut zi) = (vec![1.0; n], vec![0.0; n]);
        let (rr, ri): (Vec<f64>, Vec<f64>) = self
            .theta
            .iter()
            .map(|th| {
                let (s, c) = (-2.0 * th * dt).sin_cos();
                (c, s)
            })
            .unzip();

        let mut best = (0, -1.0);
        for k in 0..=steps {
            if k > 0 {
                if k % REANCHOR_EVERY == 0 {
                    let t = k as f64 * dt;
                    for m in 0..n {
                        let (s, c) = (-2.0 * self.theta[m] * t).sin_cos();
                        zr[m] = c;
                        zi[m] = s;
                    }
                } else {
                    for m in 0..n {
                        let (a, b) = (zr[m], zi[m]);
                        zr[m] = a * rr[m] - b * ri[m];
                        zi[m] = a * ri[m] + b * rr[m];
                    }
                }
            }
            let (mut ir, mut ii, mut jr, mut ji) = (0.0, 0.0, 0.0, 0.0);
            for m in 0..n {
                let (c, s) = (zr[m], zi[m]);
                ir += self.ui.0[m] * c - self.ui.1[m] * s;
                ii += self.ui.0[m] * s + self.ui.1[m] * c;
                jr += self.uj.0[m] * c - self.uj.1[m] * s;
                ji += self.uj.0[m] * s + self.uj.1[m] * c;
            }
            let conc = 2.0 * ((ir * ir + ii * ii) * (jr * jr + ji * ji)).sqrt();
            if conc > best.1 {
                best = (k, conc);
            }
        }
        best
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Best readout time in `[0, t_window]` for backbone coupling `jm`.
pub fn scan_time(chain: &ChainSpec, jm: f64, t_window: f64, t_resolution: f64) -> Result<ScanPoint> {
    if !(t_resolution > 0.0 && t_resolution.is_finite()) {
        return Err(Error::Config(format!("time resolution must be positive, got {t_resolution}")));
    }
    if !(t_window >= 0.0 && t_window.is_finite()) {
        return Err(Error::Config(format!("time window must be non-negative, got {t_window}")));
    }
    let chain = chain.with_middle(jm);
    let modes = PairModes::new(&chain)?;
    let steps = (t_window / t_resolution).floor() as usize;
    let (k_best, c_grid) = modes.grid_argmax(t_resolution, steps);
    let t_grid = k_best as f64 * t_resolution;

    let lo = (t_grid - t_resolution).max(0.0);
    let hi = (t_grid + t_resolution).min(t_window);
    let (t_ref, c_ref) = golden_max(|t| modes.concurrence_at(t), lo, hi, TIME_TOLERANCE);
    let (t_star, c_star) = if c_ref >= c_grid {
        (t_ref, c_ref)
    } else {
        (t_grid, modes.concurrence_at(t_grid))
    };

    Ok(ScanPoint {
        jm,
        t_star,
        eof_star: eof(c_star)?,
    })
}

/// `jm_lo, jm_lo + res, ...` up to `jm_hi` inclusive.
pub fn jm_grid(jm_range: (f64, f64), jm_resolution: f64) -> Result<Vec<f64>> {
    let (lo, hi) = jm_range;
    if !(jm_resolution > 0.0) || !(lo > 0.0) || hi < lo {
        return Err(Error::Config(format!(
            "invalid J_m range [{lo}, {hi}] with resolution {jm_resolution}"
        )));
    }
    let count = ((hi - lo) / jm_resolution + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| lo + k as f64 * jm_resolution).collect())
}

/// Outer grid over `J_m` with a [`scan_time`] inner search at each point.
///
/// `t_window = None` uses [`default_time_window`] per grid point.
pub fn scan_jm(
    chain: &ChainSpec,
    jm_range: (f64, f64),
    jm_resolution: f64,
    t_window: Option<f64>,
    t_resolution: f64,
) -> Result<JmScan> {
    let grid = jm_grid(jm_range, jm_resolution)?;
    let curve: Vec<ScanPoint> = grid
        .par_iter()
        .map(|&jm| {
            let window = t_window.unwrap_or_else(|| default_time_window(&chain.with_middle(jm)));
            scan_time(chain, jm, window, t_resolution)
        })
        .collect::<Result<_>>()?;
    let best = curve
        .iter()
        .copied()
        .fold(None::<ScanPoint>, |acc, pt| match acc {
            Some(b) if b.eof_star >= pt.eof_star => Some(b),
            _ => Some(pt),
        })
        .expect("grid is non-empty");
    Ok(JmScan { best, curve })
}

/// `(t, concurrence, EoF)` samples of the clean chain on `0, dt, ..., t_end`.
pub fn clean_trace(chain: &ChainSpec, t_end: f64, dt: f64) -> Result<Vec<(f64, f64, f64)>> {
    if !(dt > 0.0) {
        return Err(Error::Config(format!("trace step must be positive, got {dt}")));
    }
    let bonds = build_bonds(chain)?;
    let k = build_generator(&bonds, &NoiseState::zero(&bonds), &bonds.base_couplings())?;
    let steps = (t_end / dt + 1e-9).floor() as usize;
    let grid: Vec<f64> = (0..=steps).map(|s| s as f64 * dt).collect();
    let (i, j) = chain.readout_pair();
    evolve_trace(&k, &initial_amplitudes(chain), &grid)?
        .into_iter()
        .zip(&grid)
        .map(|(c, &t)| {
            let conc = crate::entanglement::concurrence(&c, i, j);
            Ok((t, conc, eof(conc)?))
        })
        .collect()
}
