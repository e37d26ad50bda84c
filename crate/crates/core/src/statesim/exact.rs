//! Dense exact diagonalization.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::state::StateVector;
use crate::error::{Error, Result};
use crate::hamcore::PauliSum;

/// Largest register handled by [`exact_ground_state`].
pub const MAX_DENSE_QUBITS: usize = 16;

/// Lowest eigenvalue of `obs` and a normalized eigenvector.
///
/// The eigenvector phase is fixed so that its largest-magnitude amplitude is
/// real and positive. Real-valued matrices (the usual case for molecular and
/// Heisenberg Hamiltonians) go through a real symmetric eigensolver.
pub fn exact_ground_state(obs: &PauliSum) -> Result<(f64, StateVector)> {
    let n = obs.n_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::TooLarge(n));
    }
    if !obs.is_hermitian(1e-12) {
        return Err(Error::Numerical("observable has complex coefficients".into()));
    }
    let dim = 1usize << n;
    let dense = obs.to_dense();
    let is_real = dense.iter().all(|v| v.im.abs() < 1e-14);

    let (energy, vector) = if is_real {
        let m = DMatrix::from_fn(dim, dim, |i, j| dense[i * dim + j].re);
        let eig = SymmetricEigen::new(m);
        let k = argmin(eig.eigenvalues.as_slice());
        let v: Vec<Complex64> = eig.eigenvectors.column(k).iter().map(|&x| x.into()).collect();
        (eig.eigenvalues[k], v)
    } else {
        let m = DMatrix::from_fn(dim, dim, |i, j| dense[i * dim + j]);
        let eig = SymmetricEigen::new(m);
        let k = argmin(eig.eigenvalues.as_slice());
        (eig.eigenvalues[k], eig.eigenvectors.column(k).iter().copied().collect())
    };
    Ok((energy, StateVector::normalized(fix_phase(vector))?))
}

fn argmin(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
        .expect("nonempty spectrum")
}

fn fix_phase(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let mut best = 0;
    for (i, a) in v.iter().enumerate() {
        if a.norm() > v[best].norm() + 1e-12 {
            best = i;
        }
    }
    let pivot = v[best];
    if pivot.norm() > 0.0 {
        let phase = pivot.conj() / pivot.norm();
        v.iter_mut().for_each(|a| *a *= phase);
    }
    v
}
