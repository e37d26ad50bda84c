//! Energy and reverse-sweep gradient of a parameterized circuit.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamcore::PauliSum;
use crate::statesim::{CompiledObservable, Circuit, StateVector};

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// A circuit applied to a fixed input state and measured against a
/// Hamiltonian.
#[derive(Debug, Clone)]
pub struct EnergyModel<'a> {
    circuit: &'a Circuit,
    initial: StateVector,
    observable: CompiledObservable,
}

impl<'a> EnergyModel<'a> {
    /// Starts from the circuit's reference bitstring.
    pub fn new(circuit: &'a Circuit, hamiltonian: &PauliSum) -> Result<Self> {
        let initial = StateVector::basis(circuit.n_qubits(), circuit.reference_bitstring())?;
        Self::with_initial_state(circuit, hamiltonian, initial)
    }

    pub fn with_initial_state(circuit: &'a Circuit, hamiltonian: &PauliSum, initial: StateVector) -> Result<Self> {
        if hamiltonian.n_qubits() != circuit.n_qubits() {
            return Err(Error::QubitMismatch { left: circuit.n_qubits(), right: hamiltonian.n_qubits() });
        }
        if initial.n_qubits() != circuit.n_qubits() {
            return Err(Error::QubitMismatch { left: circuit.n_qubits(), right: initial.n_qubits() });
        }
        Ok(Self { circuit, initial, observable: CompiledObservable::new(hamiltonian) })
    }

    pub fn n_parameters(&self) -> usize {
        self.circuit.n_parameters()
    }

    pub fn state(&self, params: &[f64]) -> Result<StateVector> {
        let mut state = self.initial.clone();
        self.circuit.apply_to(&mut state, params)?;
        Ok(state)
    }

    pub fn energy(&self, params: &[f64]) -> Result<f64> {
        self.observable.expectation(&self.state(params)?)
    }

    /// Energy and gradient from one forward pass and one reverse sweep.
    pub fn energy_and_gradient(&self, params: &[f64]) -> Result<(f64, Vec<f64>)> {
        let state = self.state(params)?;
        let mut psi = state.amplitudes().to_vec();
        let mut lambda = self.observable.apply(&psi);
        let energy = dot(&psi, &lambda).re;
        let mut grad = vec![0.0; params.len()];
        let mut scratch = vec![Complex64::default(); psi.len()];
        for gate in self.circuit.gates().iter().rev() {
            let inverse = gate.action(params).adjoint();
            inverse.apply(&mut psi);
            for (slot, derivative) in gate.derivatives(params) {
                scratch.copy_from_slice(&psi);
                derivative.apply(&mut scratch);
                grad[slot] += 2.0 * dot(&lambda, &scratch).re;
            }
            inverse.apply(&mut lambda);
        }
        Ok((energy, grad))
    }
}

/// `⟨ψ(θ)|H|ψ(θ)⟩` with `ψ(θ)` prepared from the circuit's reference.
pub fn energy(circuit: &Circuit, params: &[f64], hamiltonian: &PauliSum) -> Result<f64> {
    EnergyModel::new(circuit, hamiltonian)?.energy(params)
}

/// Analytic gradient of [`energy`] with respect to every parameter slot.
pub fn gradient(circuit: &Circuit, params: &[f64], hamiltonian: &PauliSum) -> Result<Vec<f64>> {
    Ok(EnergyModel::new(circuit, hamiltonian)?.energy_and_gradient(params)?.1)
}
