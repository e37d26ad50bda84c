//! Hardware-efficient ladder baseline and CNOT accounting.

use serde::{Deserialize, Serialize};

use super::layers::LayerPlan;
use crate::error::{Error, Result};

/// Rotation layer plus CNOT ladder, repeated `depth` times, then a closing
/// rotation layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeaPlan {
    pub n_qubits: usize,
    pub depth: usize,
}

impl HeaPlan {
    /// Ry and Rz on every qubit in each of the `depth + 1` rotation layers.
    pub fn parameter_count(&self) -> usize {
        2 * self.n_qubits * (self.depth + 1)
    }

    /// Control/target pairs of one CNOT ladder.
    pub fn ladder(&self) -> Vec<(usize, usize)> {
        (1..self.n_qubits).map(|q| (q - 1, q)).collect()
    }
}

pub fn hea_ladder_plan(n_qubits: usize, depth: usize) -> Result<HeaPlan> {
    if depth == 0 {
        return Err(Error::Invalid("HEA depth must be at least 1".into()));
    }
    if n_qubits == 0 {
        return Err(Error::Invalid("HEA needs at least one qubit".into()));
    }
    Ok(HeaPlan { n_qubits, depth })
}

/// Any ansatz descriptor whose entangling cost can be counted.
#[derive(Debug, Clone, Copy)]
pub enum AnsatzPlan<'a> {
    Qida(&'a LayerPlan),
    Hea(&'a HeaPlan),
}

impl<'a> From<&'a LayerPlan> for AnsatzPlan<'a> {
    fn from(p: &'a LayerPlan) -> Self {
        AnsatzPlan::Qida(p)
    }
}

impl<'a> From<&'a HeaPlan> for AnsatzPlan<'a> {
    fn from(p: &'a HeaPlan) -> Self {
        AnsatzPlan::Hea(p)
    }
}

/// Two CNOTs per SO(4) correlator; `(n − 1)·d` for the HEA ladder.
pub fn cnot_count<'a>(plan: impl Into<AnsatzPlan<'a>>) -> usize {
    match plan.into() {
        AnsatzPlan::Qida(p) => 2 * p.correlator_count(),
        AnsatzPlan::Hea(h) => h.n_qubits.saturating_sub(1) * h.depth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{EntanglerMap, SelectionCriterion};

    #[test]
    fn hea_counts() {
        for (n, d, expected) in [(12, 5, 55), (12, 6, 66), (14, 5, 65), (8, 5, 35), (2, 1, 1)] {
            assert_eq!(cnot_count(&hea_ladder_plan(n, d).unwrap()), expected);
        }
    }

    #[test]
    fn hea_parameters() {
        assert_eq!(hea_ladder_plan(4, 2).unwrap().parameter_count(), 24);
        assert!(hea_ladder_plan(4, 0).is_err());
    }

    #[test]
    fn qida_counts() {
        let plan = LayerPlan {
            n_qubits: 2,
            criterion: SelectionCriterion::MaxCorrelation,
            finesse_ratios: vec![0.1],
            qida_layers: vec![EntanglerMap::default()],
            ladder_layer: EntanglerMap::default(),
        };
        assert_eq!(cnot_count(&plan), 0);
        let plan = LayerPlan { ladder_layer: EntanglerMap::ladder(2), ..plan };
        assert_eq!(cnot_count(&plan), 2);
    }
}
