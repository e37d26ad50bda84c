//! Reduced density matrices, entropies and the qubit mutual-information map.
//!
//! Both [`SparseState`] (determinant expansions) and dense
//! [`StateVector`](crate::statesim::StateVector)s implement [`QubitState`].
//! The sparse path groups determinants by their bitstring with the traced-in
//! qubits masked out, so the full map costs `O(n² · #determinants)`.

mod matrix;
mod rdm;
mod sparse;

pub use matrix::{qmi_matrix, QmiMatrix};
pub use rdm::{one_qubit_rdm, two_qubit_rdm, von_neumann_entropy, QubitState, Rdm};
pub use sparse::{
    format_bitstring, load_sparse_state, parse_bitstring, SparseState, DEFAULT_CUTOFF, DEFAULT_MAX_DETERMINANTS,
};
