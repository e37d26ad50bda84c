//! Jordan-Wigner images of fermionic operators.

use num_complex::Complex64;

use super::fcidump::MolecularIntegrals;
use super::pauli::{Pauli, PauliAccumulator, PauliString, PauliSum};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Creation,
    Annihilation,
}

/// `a†_q` or `a_q`: `½(X_q ∓ iY_q) ∏_{j<q} Z_j`.
pub fn jw_ladder(orbital_index: usize, kind: LadderKind, n_qubits: usize) -> Result<PauliSum> {
    if orbital_index >= n_qubits {
        return Err(Error::IndexOutOfRange { index: orbital_index, len: n_qubits });
    }
    let mut x_string = PauliString::identity(n_qubits);
    for j in 0..orbital_index {
        x_string.set(j, Pauli::Z);
    }
    let mut y_string = x_string;
    x_string.set(orbital_index, Pauli::X);
    y_string.set(orbital_index, Pauli::Y);
    let y_coeff = match kind {
        LadderKind::Creation => Complex64::new(0.0, -0.5),
        LadderKind::Annihilation => Complex64::new(0.0, 0.5),
    };
    PauliSum::from_terms(n_qubits, vec![(Complex64::new(0.5, 0.0), x_string), (y_coeff, y_string)])
}

/// Qubit holding spatial orbital `i` with spin `beta`: α block first, then β.
pub fn spin_orbital(i: usize, beta: bool, n_spatial: usize) -> usize {
    if beta {
        i + n_spatial
    } else {
        i
    }
}

/// Cached ladder operators and `a†_p a_q` products for one register.
pub(crate) struct LadderTable {
    creation: Vec<PauliSum>,
    annihilation: Vec<PauliSum>,
}

impl LadderTable {
    pub(crate) fn new(n_qubits: usize) -> Self {
        let creation = (0..n_qubits)
            .map(|q| jw_ladder(q, LadderKind::Creation, n_qubits).expect("in range"))
            .collect();
        let annihilation = (0..n_qubits)
            .map(|q| jw_ladder(q, LadderKind::Annihilation, n_qubits).expect("in range"))
            .collect();
        Self { creation, annihilation }
    }

    /// `a†_p a_q`.
    pub(crate) fn excitation(&self, p: usize, q: usize) -> PauliSum {
        self.creation[p].multiply(&self.annihilation[q]).expect("same register")
    }
}

/// Second-quantized electronic Hamiltonian mapped onto `2·n_spatial` qubits.
///
/// With chemist integrals the two-body part is
/// `½ Σ (pq|rs) a†_p a†_r a_s a_q`, which is assembled as
/// `½ Σ (pq|rs) (E_pq E_rs − δ_qr E_ps)` with `E_pq = a†_p a_q` restricted to
/// equal spins.
pub fn build_qubit_hamiltonian(mo: &MolecularIntegrals) -> Result<PauliSum> {
    let n = mo.n_spatial_orbitals();
    let n_qubits = 2 * n;
    let table = LadderTable::new(n_qubits);

    // E_pq for same-spin pairs, indexed [spin][i][j]
    let mut exc: Vec<Vec<Vec<PauliSum>>> = Vec::with_capacity(2);
    for beta in [false, true] {
        let block = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| table.excitation(spin_orbital(i, beta, n), spin_orbital(j, beta, n)))
                    .collect()
            })
            .collect();
        exc.push(block);
    }

    let mut acc = PauliAccumulator::new(n_qubits);
    acc.add(Complex64::new(mo.core_energy(), 0.0), PauliString::identity(n_qubits))?;

    for block in &exc {
        for (i, row) in block.iter().enumerate() {
            for (j, op) in row.iter().enumerate() {
                let h = mo.h(i, j);
                if h != 0.0 {
                    acc.add_sum(op, Complex64::new(h, 0.0))?;
                }
            }
        }
    }

    for s in 0..2 {
        for t in 0..2 {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            let v = mo.eri(i, j, k, l);
                            if v == 0.0 {
                                continue;
                            }
                            let half = Complex64::new(0.5 * v, 0.0);
                            acc.add_product(&exc[s][i][j], &exc[t][k][l], half)?;
                            if s == t && j == k {
                                acc.add_sum(&exc[s][i][l], -half)?;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(acc.finish())
}

/// Computational-basis index of the Hartree-Fock determinant: the lowest
/// α orbitals and the lowest β orbitals occupied.
pub fn hartree_fock_bitstring(mo: &MolecularIntegrals) -> u64 {
    let n = mo.n_spatial_orbitals();
    let (n_alpha, n_beta) = mo.electrons_by_spin();
    let alpha = (1u64 << n_alpha) - 1;
    let beta = ((1u64 << n_beta) - 1) << n;
    alpha | beta
}
