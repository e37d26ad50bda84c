//! Dense statevector simulation.

mod circuit;
mod exact;
mod gates;
mod observable;
mod state;

pub use circuit::{apply_circuit, Circuit, GateKind, GateOp};
pub use exact::{exact_ground_state, MAX_DENSE_QUBITS};
pub use gates::{
    dagger4, kron2, magic_basis, mul4, remove_global_phase, ry, rz, so4_derivatives, so4_unitary, zyz, Mat2,
    Mat4,
};
pub use observable::{expectation, CompiledObservable, IMAGINARY_DISCARD, IMAGINARY_ERROR};
pub use state::{fidelity, overlap, StateVector, NORM_TOLERANCE};
