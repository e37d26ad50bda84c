//! Variational energy minimization.
//!
//! Energies and gradients come from statevector simulation; the gradient is
//! computed with a single reverse sweep through the circuit. Optimization uses
//! BFGS with a strong-Wolfe line search.

mod ansatz;
mod bfgs;
mod driver;
mod objective;

pub use ansatz::{hea_circuit, AnsatzLayer, LayeredAnsatz, PARAMETERS_PER_CORRELATOR};
pub use bfgs::{bfgs, BfgsOptions, BfgsOutcome};
pub use driver::{
    hea_vqe, incremental_vqe, minimize, IncrementalResult, Layer0Init, LayerRecord, OptResult, Phase, TraceEntry,
    VqeConfig, LAYER_FLAG_TOLERANCE,
};
pub use objective::{energy, gradient, EnergyModel};
