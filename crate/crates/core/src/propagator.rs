//! Exact propagation under piecewise-constant generators.
//!
//! Each segment is exponentiated through the eigendecomposition of the real
//! symmetric `K`: rotate into the eigenbasis, multiply mode `m` by
//! `exp(-2i theta_m dt)`, rotate back. Nothing is ever renormalized; a
//! norm drift beyond [`UNITARITY_BUDGET`] is reported as an error.

use std::ops::{Index, IndexMut};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::chain::{build_generator, GeneratorMatrix};
use crate::disorder::RealizationSchedule;
use crate::error::{Error, Result};

/// Maximum tolerated `| ||c(t)|| - ||c(0)|| |` over a run.
pub const UNITARITY_BUDGET: f64 = 1e-10;

/// Single-excitation amplitudes `c_j(t)` over the site basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeVector {
    c: DVector<Complex64>,
    time: f64,
}

impl AmplitudeVector {
    pub fn zeros(n: usize) -> Self {
        AmplitudeVector {
            c: DVector::zeros(n),
            time: 0.0,
        }
    }

    pub fn from_vec(values: Vec<Complex64>) -> Self {
        AmplitudeVector {
            c: DVector::from_vec(values),
            time: 0.0,
        }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// Time stamp in units of `hbar / J`.
    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }

    pub fn norm(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        self.c.as_slice()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.c.iter()
    }

    /// Largest entrywise distance to `other`.
    pub fn max_diff(&self, other: &AmplitudeVector) -> f64 {
        self.c
            .iter()
            .zip(other.c.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        AmplitudeVector {
            c: self.c.map(|z| z * factor),
            time: self.time,
        }
    }
}

impl Index<usize> for AmplitudeVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.c[i]
    }
}

impl IndexMut<usize> for AmplitudeVector {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.c[i]
    }
}

/// Eigenvalues and orthonormal eigenvectors of a [`GeneratorMatrix`].
#[derive(Clone, Debug)]
pub struct SpectralCache {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl SpectralCache {
    pub fn new(k: &GeneratorMatrix) -> Result<Self> {
        let n = k.dim();
        let m = k.matrix();
        let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 100 * n.max(1)).ok_or_else(
            || Error::Eigen {
                dim: n,
                max_abs: k.max_abs(),
                frobenius: m.norm(),
            },
        )?;
        Ok(SpectralCache {
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// Columns are eigenvectors.
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    /// `max |V diag(theta) V^T - K|`.
    pub fn reconstruction_error(&self, k: &GeneratorMatrix) -> f64 {
        let v = &self.eigenvectors;
        let rebuilt = v * DMatrix::from_diagonal(&self.eigenvalues) * v.transpose();
        (rebuilt - k.matrix()).amax()
    }

    /// Mode coefficients `V^T c`, split into real and imaginary parts.
    pub(crate) fn to_modes(&self, c: &AmplitudeVector) -> (DVector<f64>, DVector<f64>) {
        let re = c.c.map(|z| z.re);
        let im = c.c.map(|z| z.im);
        let vt = self.eigenvectors.transpose();
        (&vt * re, &vt * im)
    }

    /// `exp(-2i K dt) c` without any norm check.
    pub fn apply(&self, dt: f64, c: &AmplitudeVector) -> AmplitudeVector {
        if dt == 0.0 {
            return c.clone();
        }
        let (mut re, mut im) = self.to_modes(c);
        for ((theta, r), i) in self.eigenvalues.iter().zip(re.iter_mut()).zip(im.iter_mut()) {
            let (sin, cos) = (-2.0 * theta * dt).sin_cos();
            let (a, b) = (*r, *i);
            *r = a * cos - b * sin;
            *i = a * sin + b * cos;
        }
        let re = &self.eigenvectors * re;
        let im = &self.eigenvectors * im;
        AmplitudeVector {
            c: re.zip_map(&im, Complex64::new),
            time: c.time + dt,
        }
    }
}

fn check_norm(reference: f64, out: &AmplitudeVector) -> Result<()> {
    let drift = (out.norm() - reference).abs();
    if drift > UNITARITY_BUDGET {
        return Err(Error::Unitarity {
            drift,
            budget: UNITARITY_BUDGET,
        });
    }
    Ok(())
}

/// One exact step `exp(-2i K dt) c`.
pub fn expm_step(k: &GeneratorMatrix, dt: f64, c: &AmplitudeVector) -> Result<AmplitudeVector> {
    if dt == 0.0 {
        return Ok(c.clone());
    }
    let out = SpectralCache::new(k)?.apply(dt, c);
    check_norm(c.norm(), &out)?;
    Ok(out)
}

/// Applies every segment of `schedule` in order and returns `c(T_max)`.
pub fn evolve(schedule: &RealizationSchedule, c0: &AmplitudeVector) -> Result<AmplitudeVector> {
    let bonds = schedule.bonds();
    let mut c = c0.clone();
    for (index, segment) in schedule.segments().iter().enumerate() {
        let wrap = |e: Error| Error::Segment {
            segment: index,
            source: Box::new(e),
        };
        if segment.duration == 0.0 {
            continue;
        }
        let k = build_generator(bonds, &segment.noise, &segment.couplings).map_err(wrap)?;
        c = SpectralCache::new(&k).map_err(wrap)?.apply(segment.duration, &c);
    }
    check_norm(c0.norm(), &c)?;
    Ok(c)
}

/// Amplitudes at each time of `grid` under one constant generator.
pub fn evolve_trace(
    k: &GeneratorMatrix,
    c0: &AmplitudeVector,
    grid: &[f64],
) -> Result<Vec<AmplitudeVector>> {
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Config("time grid must be sorted ascending".into()));
    }
    let cache = SpectralCache::new(k)?;
    let norm0 = c0.norm();
    grid.iter()
        .map(|&t| {
            let out = cache.apply(t, c0).with_time(c0.time + t);
            check_norm(norm0, &out)?;
            Ok(out)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{build_bonds, initial_amplitudes, ChainSpec, NoiseState};
    use std::f64::consts::PI;

    fn two_site(j: f64) -> GeneratorMatrix {
        GeneratorMatrix::from_matrix(DMatrix::from_row_slice(2, 2, &[0.0, j, j, 0.0]))
    }

    #[test]
    fn zero_step_is_identity() {
        let k = two_site(1.0);
        let c = AmplitudeVector::from_vec(vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]);
        assert_eq!(expm_step(&k, 0.0, &c).unwrap(), c);
    }

    #[test]
    fn two_level_full_transfer() {
        let j = 1.3;
        let k = two_site(j);
        let c0 = AmplitudeVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let c = expm_step(&k, PI / (4.0 * j), &c0).unwrap();
        assert!(c[0].norm() < 1e-10);
        assert!((c[1] - Complex64::new(0.0, -1.0)).norm() < 1e-10);

        // c1 = cos(2Jt), c2 = -i sin(2Jt)
        let t = 0.37;
        let c = expm_step(&k, t, &c0).unwrap();
        assert!((c[0] - Complex64::new((2.0 * j * t).cos(), 0.0)).norm() < 1e-12);
        assert!((c[1] - Complex64::new(0.0, -(2.0 * j * t).sin())).norm() < 1e-12);
    }

    #[test]
    fn diagonal_generator_only_rotates_phases() {
        let d = [0.3, -1.1, 2.0];
        let k = GeneratorMatrix::from_matrix(DMatrix::from_diagonal(&DVector::from_row_slice(&d)));
        let c0 = AmplitudeVector::from_vec(vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.48),
            Complex64::new(0.64, 0.0),
        ]);
        let dt = 0.77;
        let c = expm_step(&k, dt, &c0).unwrap();
        for (i, dk) in d.iter().enumerate() {
            let expected = c0[i] * Complex64::from_polar(1.0, -2.0 * dk * dt);
            assert!((c[i] - expected).norm() < 1e-13);
        }
    }

    #[test]
    fn spectral_reconstruction() {
        let spec = ChainSpec::proposed(30, 2.86);
        let b = build_bonds(&spec).unwrap();
        let mut noise = NoiseState::zero(&b);
        noise.fields[3] = 0.2;
        noise.zz[7] = -0.05;
        let k = build_generator(&b, &noise, &b.base_couplings()).unwrap();
        let cache = SpectralCache::new(&k).unwrap();
        assert!(cache.reconstruction_error(&k) <= 1e-10 * k.max_abs());
    }

    #[test]
    fn trace_matches_repeated_steps() {
        let spec = ChainSpec::proposed(8, 1.7);
        let b = build_bonds(&spec).unwrap();
        let mut noise = NoiseState::zero(&b);
        for (i, h) in noise.fields.iter_mut().enumerate() {
            *h = 0.01 * (i as f64).sin();
        }
        let k = build_generator(&b, &noise, &b.base_couplings()).unwrap();
        let c0 = initial_amplitudes(&spec);
        let grid = [0.0, 0.5, 0.5, 1.25, 3.0];
        let trace = evolve_trace(&k, &c0, &grid).unwrap();
        assert_eq!(trace[0], c0.clone().with_time(0.0));
        assert_eq!(trace[1], trace[2]);
        for (t, c) in grid.iter().zip(&trace) {
            let direct = expm_step(&k, *t, &c0).unwrap();
            assert!(direct.max_diff(c) < 1e-10);
        }
        assert!(evolve_trace(&k, &c0, &[1.0, 0.5]).is_err());
    }
}
