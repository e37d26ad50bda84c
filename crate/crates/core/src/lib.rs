//! Mutual-information driven construction of shallow layered ansätze.
//!
//! The crate covers the whole pipeline on a dense statevector simulator:
//!
//! * [`hamcore`]: Pauli algebra, Jordan-Wigner mapping, FCIDUMP ingestion and
//!   spin-lattice fixture Hamiltonians.
//! * [`statesim`]: circuits of Ry/Rz/CNOT/SO(4) gates, expectation values and
//!   an exact-diagonalization oracle.
//! * [`qmi`]: reduced density matrices, von Neumann entropies and the qubit
//!   mutual-information map from sparse or dense states.
//! * [`topology`]: finesse-ratio chunking, spanning-forest correlator
//!   selection and hardware-efficient ladder baselines.
//! * [`vqe`]: BFGS with adjoint gradients and the incremental layer-wise
//!   optimization routine.
//! * [`metrics`]: correlation-energy percentages, MCED and symmetry operators.
//!
//! Qubit 0 is the least-significant bit of every basis index. Molecular
//! Hamiltonians place all α spin orbitals first, then all β spin orbitals.

pub mod error;
pub mod hamcore;
pub mod metrics;
pub mod qmi;
pub mod statesim;
pub mod topology;
pub mod vqe;

pub use error::{Error, Result};
