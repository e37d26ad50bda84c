//! Circuit assembly for layered SO(4) ansätze and the HEA baseline.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::statesim::{Circuit, GateOp};
use crate::topology::{EntanglerMap, HeaPlan, LayerPlan};

pub const PARAMETERS_PER_CORRELATOR: usize = 6;

/// One layer of SO(4) correlators and its slice of the parameter vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzLayer {
    pub pairs: Vec<(usize, usize)>,
    pub slots: Range<usize>,
}

/// SO(4) layers applied in order to a reference bitstring.
///
/// Empty entangler maps contribute no layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredAnsatz {
    n_qubits: usize,
    reference_bitstring: u64,
    layers: Vec<AnsatzLayer>,
}

impl LayeredAnsatz {
    pub fn from_layers<'a>(
        n_qubits: usize,
        reference_bitstring: u64,
        maps: impl IntoIterator<Item = &'a EntanglerMap>,
    ) -> Result<Self> {
        let mut layers = Vec::new();
        let mut next = 0;
        for map in maps {
            if map.is_empty() {
                continue;
            }
            for &(u, v) in &map.pairs {
                if u == v || u.max(v) >= n_qubits {
                    return Err(Error::InvalidGate(format!("correlator on ({u},{v}) in a {n_qubits}-qubit register")));
                }
            }
            let width = PARAMETERS_PER_CORRELATOR * map.len();
            layers.push(AnsatzLayer { pairs: map.pairs.clone(), slots: next..next + width });
            next += width;
        }
        Ok(Self { n_qubits, reference_bitstring, layers })
    }

    /// QIDA layers first, ladder layer last.
    pub fn from_plan(plan: &LayerPlan, reference_bitstring: u64) -> Result<Self> {
        Self::from_layers(plan.n_qubits, reference_bitstring, plan.layers())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn reference_bitstring(&self) -> u64 {
        self.reference_bitstring
    }

    pub fn layers(&self) -> &[AnsatzLayer] {
        &self.layers
    }

    pub fn n_parameters(&self) -> usize {
        self.layers.last().map_or(0, |l| l.slots.end)
    }

    pub fn cnot_count(&self) -> usize {
        2 * self.layers.iter().map(|l| l.pairs.len()).sum::<usize>()
    }

    fn push_layer(circuit: &mut Circuit, layer: &AnsatzLayer, first_slot: usize) -> Result<()> {
        for (k, &(u, v)) in layer.pairs.iter().enumerate() {
            circuit.push(GateOp::so4(u, v, first_slot + PARAMETERS_PER_CORRELATOR * k))?;
        }
        Ok(())
    }

    /// The first `n_layers` layers with their global slots.
    pub fn prefix_circuit(&self, n_layers: usize) -> Result<Circuit> {
        let mut circuit = Circuit::new(self.n_qubits, self.reference_bitstring)?;
        for layer in &self.layers[..n_layers.min(self.layers.len())] {
            Self::push_layer(&mut circuit, layer, layer.slots.start)?;
        }
        Ok(circuit)
    }

    pub fn circuit(&self) -> Result<Circuit> {
        self.prefix_circuit(self.layers.len())
    }

    /// Layer `l` alone, with its slots renumbered from zero.
    pub fn layer_circuit(&self, l: usize) -> Result<Circuit> {
        let layer = self.layers.get(l).ok_or(Error::IndexOutOfRange { index: l, len: self.layers.len() })?;
        let mut circuit = Circuit::new(self.n_qubits, self.reference_bitstring)?;
        Self::push_layer(&mut circuit, layer, 0)?;
        Ok(circuit)
    }
}

/// Ry and Rz on every qubit, then CNOTs `0→1, 1→2, …`, repeated `depth`
/// times and closed by a final rotation layer.
///
/// Rotation layer `k` uses slots `2(k·n + q)` (Ry) and `2(k·n + q) + 1` (Rz).
pub fn hea_circuit(plan: &HeaPlan, reference_bitstring: u64) -> Result<Circuit> {
    let n = plan.n_qubits;
    let mut circuit = Circuit::new(n, reference_bitstring)?;
    for k in 0..=plan.depth {
        for q in 0..n {
            let slot = 2 * (k * n + q);
            circuit.push(GateOp::Ry { qubit: q, slot })?;
            circuit.push(GateOp::Rz { qubit: q, slot: slot + 1 })?;
        }
        if k < plan.depth {
            for (control, target) in plan.ladder() {
                circuit.push(GateOp::Cnot { control, target })?;
            }
        }
    }
    Ok(circuit)
}
