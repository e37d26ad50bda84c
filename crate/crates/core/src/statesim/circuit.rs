//! Parameterized circuits and the in-place amplitude kernels.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gates::{self, Mat2, Mat4};
use super::state::StateVector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateKind {
    Ry,
    Rz,
    Cnot,
    So4,
}

/// One gate of a [`Circuit`]. Parameter slots index into the circuit's
/// parameter vector; several gates may share a slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateOp {
    Ry { qubit: usize, slot: usize },
    Rz { qubit: usize, slot: usize },
    Cnot { control: usize, target: usize },
    So4 { qubits: [usize; 2], slots: [usize; 6] },
}

impl GateOp {
    pub fn kind(&self) -> GateKind {
        match self {
            GateOp::Ry { .. } => GateKind::Ry,
            GateOp::Rz { .. } => GateKind::Rz,
            GateOp::Cnot { .. } => GateKind::Cnot,
            GateOp::So4 { .. } => GateKind::So4,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            GateOp::Ry { qubit, .. } | GateOp::Rz { qubit, .. } => vec![qubit],
            GateOp::Cnot { control, target } => vec![control, target],
            GateOp::So4 { qubits, .. } => qubits.to_vec(),
        }
    }

    pub fn slots(&self) -> &[usize] {
        match self {
            GateOp::Ry { slot, .. } | GateOp::Rz { slot, .. } => std::slice::from_ref(slot),
            GateOp::Cnot { .. } => &[],
            GateOp::So4 { slots, .. } => slots,
        }
    }

    /// Number of CNOTs this gate compiles to.
    pub fn cnot_cost(&self) -> usize {
        match self {
            GateOp::Ry { .. } | GateOp::Rz { .. } => 0,
            GateOp::Cnot { .. } => 1,
            GateOp::So4 { .. } => 2,
        }
    }

    /// SO(4) on `(a, b)` with six consecutive slots starting at `first_slot`.
    pub fn so4(a: usize, b: usize, first_slot: usize) -> Self {
        let mut slots = [0; 6];
        for (k, s) in slots.iter_mut().enumerate() {
            *s = first_slot + k;
        }
        GateOp::So4 { qubits: [a, b], slots }
    }

    fn so4_params(slots: &[usize; 6], params: &[f64]) -> [f64; 6] {
        let mut p = [0.0; 6];
        for (dst, &s) in p.iter_mut().zip(slots) {
            *dst = params[s];
        }
        p
    }

    /// The gate's action for the given parameter vector.
    pub(crate) fn action(&self, params: &[f64]) -> GateAction {
        match *self {
            GateOp::Ry { qubit, slot } => GateAction::One { qubit, m: gates::ry(params[slot]) },
            GateOp::Rz { qubit, slot } => GateAction::One { qubit, m: gates::rz(params[slot]) },
            GateOp::Cnot { control, target } => GateAction::Cnot { control, target },
            GateOp::So4 { qubits, ref slots } => {
                let p = Self::so4_params(slots, params);
                GateAction::Two { a: qubits[0], b: qubits[1], m: gates::so4_unitary(&p) }
            }
        }
    }

    /// `(slot, ∂U/∂θ_slot)` for each parameter of the gate.
    pub(crate) fn derivatives(&self, params: &[f64]) -> Vec<(usize, GateAction)> {
        match *self {
            GateOp::Ry { qubit, slot } => {
                vec![(slot, GateAction::One { qubit, m: gates::ry_derivative(params[slot]) })]
            }
            GateOp::Rz { qubit, slot } => {
                vec![(slot, GateAction::One { qubit, m: gates::rz_derivative(params[slot]) })]
            }
            GateOp::Cnot { .. } => Vec::new(),
            GateOp::So4 { qubits, ref slots } => {
                let p = Self::so4_params(slots, params);
                gates::so4_derivatives(&p)
                    .into_iter()
                    .zip(slots)
                    .map(|(m, &s)| (s, GateAction::Two { a: qubits[0], b: qubits[1], m }))
                    .collect()
            }
        }
    }
}

/// A concrete (parameter-bound) gate action on a register.
#[derive(Debug, Clone)]
pub(crate) enum GateAction {
    One { qubit: usize, m: Mat2 },
    Two { a: usize, b: usize, m: Mat4 },
    Cnot { control: usize, target: usize },
}

impl GateAction {
    pub(crate) fn apply(&self, amps: &mut [Complex64]) {
        match self {
            GateAction::One { qubit, m } => apply_one(amps, *qubit, m),
            GateAction::Two { a, b, m } => apply_two(amps, *a, *b, m),
            GateAction::Cnot { control, target } => apply_cnot(amps, *control, *target),
        }
    }

    pub(crate) fn adjoint(&self) -> GateAction {
        match self {
            GateAction::One { qubit, m } => GateAction::One { qubit: *qubit, m: gates::dagger2(m) },
            GateAction::Two { a, b, m } => GateAction::Two { a: *a, b: *b, m: gates::dagger4(m) },
            GateAction::Cnot { .. } => self.clone(),
        }
    }
}

/// Stride-paired update of amplitude pairs differing in bit `q`.
fn apply_one(amps: &mut [Complex64], q: usize, m: &Mat2) {
    let stride = 1usize << q;
    for block in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = block.split_at_mut(stride);
        for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a0, *a1);
            *a0 = m[0][0] * x + m[0][1] * y;
            *a1 = m[1][0] * x + m[1][1] * y;
        }
    }
}

/// Four-amplitude block update; local index is `(bit_a << 1) | bit_b`.
fn apply_two(amps: &mut [Complex64], a: usize, b: usize, m: &Mat4) {
    let (ma, mb) = (1usize << a, 1usize << b);
    for base in 0..amps.len() {
        if base & (ma | mb) != 0 {
            continue;
        }
        let idx = [base, base | mb, base | ma, base | ma | mb];
        let v = idx.map(|i| amps[i]);
        for (r, &i) in idx.iter().enumerate() {
            amps[i] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] + m[r][3] * v[3];
        }
    }
}

fn apply_cnot(amps: &mut [Complex64], control: usize, target: usize) {
    let (mc, mt) = (1usize << control, 1usize << target);
    for i in 0..amps.len() {
        if i & mc != 0 && i & mt == 0 {
            amps.swap(i, i | mt);
        }
    }
}

/// An ordered gate list applied to a computational-basis reference state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<GateOp>,
    n_parameters: usize,
    reference_bitstring: u64,
}

impl Circuit {
    pub fn new(n_qubits: usize, reference_bitstring: u64) -> Result<Self> {
        if n_qubits == 0 || n_qubits >= 40 {
            return Err(Error::Invalid(format!("unsupported register width {n_qubits}")));
        }
        if reference_bitstring >> n_qubits != 0 {
            return Err(Error::Invalid(format!(
                "reference {reference_bitstring:#b} has more than {n_qubits} bits"
            )));
        }
        Ok(Self { n_qubits, gates: Vec::new(), n_parameters: 0, reference_bitstring })
    }

    /// Appends a gate, growing the parameter count to cover its slots.
    pub fn push(&mut self, gate: GateOp) -> Result<()> {
        let qubits = gate.qubits();
        for &q in &qubits {
            if q >= self.n_qubits {
                return Err(Error::IndexOutOfRange { index: q, len: self.n_qubits });
            }
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(Error::InvalidGate(format!("{:?} acts twice on qubit {}", gate.kind(), qubits[0])));
        }
        if let Some(&max) = gate.slots().iter().max() {
            self.n_parameters = self.n_parameters.max(max + 1);
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Reserves parameter slots that no gate references (yet).
    pub fn reserve_parameters(&mut self, n: usize) {
        self.n_parameters = self.n_parameters.max(n);
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[GateOp] {
        &self.gates
    }

    pub fn n_parameters(&self) -> usize {
        self.n_parameters
    }

    pub fn reference_bitstring(&self) -> u64 {
        self.reference_bitstring
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().map(GateOp::cnot_cost).sum()
    }

    pub fn check_parameters(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.n_parameters {
            return Err(Error::ParameterLength { expected: self.n_parameters, actual: params.len() });
        }
        Ok(())
    }

    /// Applies the gates in order to `state` in place.
    pub fn apply_to(&self, state: &mut StateVector, params: &[f64]) -> Result<()> {
        self.check_parameters(params)?;
        if state.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch { left: self.n_qubits, right: state.n_qubits() });
        }
        let amps = state.amplitudes_mut();
        for gate in &self.gates {
            gate.action(params).apply(amps);
        }
        Ok(())
    }
}

/// Prepares the reference state and applies the circuit.
pub fn apply_circuit(circuit: &Circuit, params: &[f64]) -> Result<StateVector> {
    circuit.check_parameters(params)?;
    let mut state = StateVector::basis(circuit.n_qubits(), circuit.reference_bitstring())?;
    circuit.apply_to(&mut state, params)?;
    Ok(state)
}
