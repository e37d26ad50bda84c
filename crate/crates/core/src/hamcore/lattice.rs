//! Spin-lattice fixture Hamiltonians.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::pauli::{Pauli, PauliAccumulator, PauliString, PauliSum};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeTopology {
    Chain,
    Ring,
}

/// Nearest-neighbour bonds of the lattice. A two-site ring has a single bond.
pub fn lattice_edges(n_qubits: usize, topology: LatticeTopology) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = (0..n_qubits.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    if topology == LatticeTopology::Ring && n_qubits > 2 {
        edges.push((0, n_qubits - 1));
    }
    edges
}

/// `J Σ_{⟨u,v⟩} (X_u X_v + Y_u Y_v + Z_u Z_v)`.
pub fn heisenberg_hamiltonian(n_qubits: usize, coupling: f64, topology: LatticeTopology) -> Result<PauliSum> {
    if n_qubits < 2 {
        return Err(Error::Invalid("the Heisenberg model needs at least two sites".into()));
    }
    let mut acc = PauliAccumulator::new(n_qubits);
    for (u, v) in lattice_edges(n_qubits, topology) {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            acc.add(Complex64::new(coupling, 0.0), PauliString::from_letters(n_qubits, &[(u, p), (v, p)])?)?;
        }
    }
    Ok(acc.finish())
}

/// Néel bitstring `…0101`: odd sites up.
pub fn neel_bitstring(n_qubits: usize) -> u64 {
    (0..n_qubits).filter(|q| q % 2 == 0).fold(0, |acc, q| acc | 1 << q)
}
