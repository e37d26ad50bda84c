//! Fermionic integrals, Pauli algebra and qubit Hamiltonians.

mod fcidump;
mod fermion;
mod lattice;
mod pauli;

pub use fcidump::{eri_images, parse_fcidump, MolecularIntegrals};
pub use fermion::{build_qubit_hamiltonian, hartree_fock_bitstring, jw_ladder, spin_orbital, LadderKind};
pub(crate) use fermion::LadderTable;
pub use lattice::{heisenberg_hamiltonian, lattice_edges, neel_bitstring, LatticeTopology};
pub use pauli::{Pauli, PauliAccumulator, PauliString, PauliSum, MAX_QUBITS, PRUNE_TOLERANCE};
pub(crate) use pauli::i_pow;
