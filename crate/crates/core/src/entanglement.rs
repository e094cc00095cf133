//! Two-qubit reduced state at a site pair and its entanglement of formation.

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::propagator::AmplitudeVector;

const BOUNDARY_SLACK: f64 = 1e-12;

/// Reduced density matrix of a site pair in the basis
/// `|00>, |01>, |10>, |11>` (first label = site `i`).
#[derive(Clone, Debug, PartialEq)]
pub struct PairState(pub Matrix4<Complex64>);

impl PairState {
    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    /// Checks hermiticity, unit trace, positivity and the empty `|11>` sector.
    pub fn check(&self, tol: f64) -> std::result::Result<(), String> {
        let m = &self.0;
        let herm = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if herm > tol {
            return Err(format!("not hermitian: {herm:e}"));
        }
        let trace = m.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > tol {
            return Err(format!("trace {trace}"));
        }
        if m[(3, 3)] != Complex64::new(0.0, 0.0) {
            return Err(format!("|11> population {}", m[(3, 3)]));
        }
        let min_eig = SymmetricEigen::new(*m).eigenvalues.min();
        if min_eig < -tol {
            return Err(format!("negative eigenvalue {min_eig:e}"));
        }
        Ok(())
    }
}

/// Partial trace of the single-excitation state onto sites `(i, j)`.
pub fn reduced_pair_density(c: &AmplitudeVector, i: usize, j: usize) -> PairState {
    assert_ne!(i, j, "pair sites must differ");
    let (ci, cj) = (c[i], c[j]);
    let zero = Complex64::new(0.0, 0.0);
    let mut m = Matrix4::from_element(zero);
    m[(0, 0)] = Complex64::new(1.0 - ci.norm_sqr() - cj.norm_sqr(), 0.0);
    m[(1, 1)] = Complex64::new(cj.norm_sqr(), 0.0);
    m[(2, 2)] = Complex64::new(ci.norm_sqr(), 0.0);
    m[(1, 2)] = cj * ci.conj();
    m[(2, 1)] = ci * cj.conj();
    PairState(m)
}

/// `C = 2 |c_i c_j|`.
pub fn concurrence(c: &AmplitudeVector, i: usize, j: usize) -> f64 {
    2.0 * c[i].norm() * c[j].norm()
}

fn binary_entropy_term(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Entanglement of formation from the concurrence.
pub fn eof(concurrence: f64) -> Result<f64> {
    if !(-BOUNDARY_SLACK..=1.0 + BOUNDARY_SLACK).contains(&concurrence) {
        return Err(Error::Domain(concurrence));
    }
    let c = concurrence.clamp(0.0, 1.0);
    let f = (1.0 + (1.0 - c * c).sqrt()) / 2.0;
    Ok(binary_entropy_term(f) + binary_entropy_term(1.0 - f))
}

/// EoF of the pair `(i, j)`.
pub fn pair_eof(c: &AmplitudeVector, i: usize, j: usize) -> Result<f64> {
    eof(concurrence(c, i, j))
}
