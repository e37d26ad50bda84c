//! One- and two-qubit reduced density matrices and their entropies.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::sparse::SparseState;
use crate::error::{Error, Result};
use crate::statesim::StateVector;

/// A 2×2 or 4×4 reduced density matrix (row-major).
///
/// For a pair `(u, v)` the local basis index is `bit_u | bit_v << 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rdm {
    subset_size: usize,
    matrix: Vec<Complex64>,
}

impl Rdm {
    fn zeros(subset_size: usize) -> Self {
        let dim = 1 << subset_size;
        Self { subset_size, matrix: vec![Complex64::default(); dim * dim] }
    }

    pub fn subset_size(&self) -> usize {
        self.subset_size
    }

    pub fn dim(&self) -> usize {
        1 << self.subset_size
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.matrix[r * self.dim() + c]
    }

    fn add(&mut self, r: usize, c: usize, v: Complex64) {
        let d = self.dim();
        self.matrix[r * d + c] += v;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let d = self.dim();
        let m = DMatrix::from_fn(d, d, |i, j| self.get(i, j));
        let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Sources of qubit reduced density matrices.
pub trait QubitState {
    fn n_qubits(&self) -> usize;
    fn one_qubit_rdm(&self, u: usize) -> Result<Rdm>;
    fn two_qubit_rdm(&self, u: usize, v: usize) -> Result<Rdm>;
}

fn check_qubit(u: usize, n: usize) -> Result<()> {
    if u >= n {
        return Err(Error::IndexOutOfRange { index: u, len: n });
    }
    Ok(())
}

fn check_pair(u: usize, v: usize, n: usize) -> Result<()> {
    check_qubit(u, n)?;
    check_qubit(v, n)?;
    if u == v {
        return Err(Error::Invalid(format!("two-qubit RDM needs distinct qubits, got {u} twice")));
    }
    Ok(())
}

/// Local index of basis state `b` on the subset `qubits` (first = lowest bit).
fn local_index(b: u64, qubits: &[usize]) -> usize {
    qubits.iter().enumerate().map(|(k, &q)| ((b >> q & 1) as usize) << k).sum()
}

/// Groups entries by the bitstring with the subset masked out; each group
/// contributes the outer product of its local amplitude vector.
fn grouped_rdm<'a>(entries: impl Iterator<Item = (u64, Complex64)> + 'a, qubits: &[usize]) -> Rdm {
    let mask: u64 = qubits.iter().map(|&q| 1u64 << q).sum();
    let dim = 1usize << qubits.len();
    let mut groups: BTreeMap<u64, [Complex64; 4]> = BTreeMap::new();
    for (b, a) in entries {
        groups.entry(b & !mask).or_default()[local_index(b, qubits)] += a;
    }
    let mut rdm = Rdm::zeros(qubits.len());
    for local in groups.values() {
        for r in 0..dim {
            if local[r] == Complex64::default() {
                continue;
            }
            for c in 0..dim {
                rdm.add(r, c, local[r] * local[c].conj());
            }
        }
    }
    rdm
}

impl QubitState for SparseState {
    fn n_qubits(&self) -> usize {
        SparseState::n_qubits(self)
    }

    fn one_qubit_rdm(&self, u: usize) -> Result<Rdm> {
        check_qubit(u, self.n_qubits())?;
        Ok(grouped_rdm(self.entries(), &[u]))
    }

    fn two_qubit_rdm(&self, u: usize, v: usize) -> Result<Rdm> {
        check_pair(u, v, self.n_qubits())?;
        Ok(grouped_rdm(self.entries(), &[u, v]))
    }
}

/// Direct partial trace over the dense amplitude array.
fn dense_rdm(state: &StateVector, qubits: &[usize]) -> Rdm {
    let amps = state.amplitudes();
    let mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
    let dim = 1usize << qubits.len();
    let scatter = |local: usize| -> usize {
        qubits.iter().enumerate().map(|(k, &q)| ((local >> k) & 1) << q).sum()
    };
    let offsets: Vec<usize> = (0..dim).map(scatter).collect();
    let mut rdm = Rdm::zeros(qubits.len());
    for rest in 0..amps.len() {
        if rest & mask != 0 {
            continue;
        }
        for r in 0..dim {
            let ar = amps[rest | offsets[r]];
            if ar == Complex64::default() {
                continue;
            }
            for c in 0..dim {
                rdm.add(r, c, ar * amps[rest | offsets[c]].conj());
            }
        }
    }
    rdm
}

impl QubitState for StateVector {
    fn n_qubits(&self) -> usize {
        StateVector::n_qubits(self)
    }

    fn one_qubit_rdm(&self, u: usize) -> Result<Rdm> {
        check_qubit(u, self.n_qubits())?;
        Ok(dense_rdm(self, &[u]))
    }

    fn two_qubit_rdm(&self, u: usize, v: usize) -> Result<Rdm> {
        check_pair(u, v, self.n_qubits())?;
        Ok(dense_rdm(self, &[u, v]))
    }
}

pub fn one_qubit_rdm(state: &impl QubitState, u: usize) -> Result<Rdm> {
    state.one_qubit_rdm(u)
}

pub fn two_qubit_rdm(state: &impl QubitState, u: usize, v: usize) -> Result<Rdm> {
    state.two_qubit_rdm(u, v)
}

/// `−Σ λ ln λ` with eigenvalues clamped to `[0, 1]` and `0·ln 0 = 0`.
pub fn von_neumann_entropy(rdm: &Rdm) -> f64 {
    rdm.eigenvalues()
        .into_iter()
        .map(|l| l.clamp(0.0, 1.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.ln())
        .sum::<f64>()
        .max(0.0)
}
