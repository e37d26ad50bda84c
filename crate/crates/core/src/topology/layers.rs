//! Finesse-ratio chunking and layer plans.

use serde::{Deserialize, Serialize};

use super::graph::{spanning_forest, Objective, WeightedGraph};
use crate::error::{Error, Result};
use crate::qmi::QmiMatrix;

/// How correlators are picked inside one chunk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionCriterion {
    /// Maximum spanning forest with the mutual information as weight.
    MaxCorrelation,
    /// Minimum spanning forest with the linear distance `|u − v|` as weight.
    DistanceReduction,
}

impl SelectionCriterion {
    pub fn label(self) -> &'static str {
        match self {
            SelectionCriterion::MaxCorrelation => "max",
            SelectionCriterion::DistanceReduction => "emp",
        }
    }
}

/// Ordered qubit pairs acted on by one layer of correlators.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EntanglerMap {
    pub pairs: Vec<(usize, usize)>,
}

impl EntanglerMap {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, _)) = pairs.iter().find(|(u, v)| u == v) {
            return Err(Error::Invalid(format!("pair ({u},{u}) acts on a single qubit")));
        }
        Ok(Self { pairs })
    }

    /// Adjacent pairs `(0,1), (1,2), …, (n−2,n−1)`.
    pub fn ladder(n_qubits: usize) -> Self {
        Self { pairs: (1..n_qubits).map(|q| (q - 1, q)).collect() }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// QIDA layers (one per finesse chunk) followed by the closing ladder layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerPlan {
    pub n_qubits: usize,
    pub criterion: SelectionCriterion,
    pub finesse_ratios: Vec<f64>,
    pub qida_layers: Vec<EntanglerMap>,
    pub ladder_layer: EntanglerMap,
}

impl LayerPlan {
    /// All layers in execution order, ladder last.
    pub fn layers(&self) -> impl Iterator<Item = &EntanglerMap> {
        self.qida_layers.iter().chain(std::iter::once(&self.ladder_layer))
    }

    pub fn correlator_count(&self) -> usize {
        self.layers().map(EntanglerMap::len).sum()
    }

    /// Every qubit touched by at least one layer.
    pub fn covers_all_qubits(&self) -> bool {
        let mut seen = vec![false; self.n_qubits];
        for &(u, v) in self.layers().flat_map(|l| l.pairs.iter()) {
            seen[u] = true;
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

/// Checks that the ratios are positive and strictly decreasing.
pub fn validate_ratios(ratios: &[f64]) -> Result<()> {
    if ratios.is_empty() {
        return Err(Error::Invalid("at least one finesse ratio is required".into()));
    }
    if let Some(r) = ratios.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return Err(Error::Invalid(format!("finesse ratio {r} is not positive")));
    }
    if let Some(w) = ratios.windows(2).find(|w| w[1] >= w[0]) {
        return Err(Error::Invalid(format!("finesse ratios must strictly decrease: {} then {}", w[0], w[1])));
    }
    Ok(())
}

/// Splits the upper-triangle pairs into one graph per ratio.
///
/// Chunk 0 holds `I ≥ μ₀`; chunk `m > 0` holds `μ_{m−1} > I ≥ μ_m`. Pairs
/// below the last ratio are not placed anywhere. Edge weights are the
/// mutual-information values.
pub fn chunk_pairs(qmi: &QmiMatrix, ratios: &[f64]) -> Result<Vec<WeightedGraph>> {
    validate_ratios(ratios)?;
    let n = qmi.n_qubits();
    let mut chunks: Vec<WeightedGraph> = ratios.iter().map(|_| WeightedGraph::new(n)).collect();
    for u in 0..n {
        for v in u + 1..n {
            let value = qmi.get(u, v);
            if let Some(m) = ratios.iter().position(|&r| value >= r) {
                chunks[m].add_edge(u, v, value)?;
            }
        }
    }
    Ok(chunks)
}

/// Builds the full layer plan for a mutual-information map.
pub fn build_layers(qmi: &QmiMatrix, ratios: &[f64], criterion: SelectionCriterion) -> Result<LayerPlan> {
    let n = qmi.n_qubits();
    if n < 2 {
        return Err(Error::Invalid("a layer plan needs at least two qubits".into()));
    }
    let chunks = chunk_pairs(qmi, ratios)?;
    let qida_layers = chunks
        .iter()
        .map(|graph| {
            let forest = match criterion {
                SelectionCriterion::MaxCorrelation => spanning_forest(graph, Objective::Maximize),
                SelectionCriterion::DistanceReduction => {
                    let weighted = graph.reweighted(|u, v, _| u.abs_diff(v) as f64);
                    spanning_forest(&weighted, Objective::Minimize)
                }
            };
            EntanglerMap { pairs: forest.iter().map(|e| e.key()).collect() }
        })
        .collect();
    Ok(LayerPlan {
        n_qubits: n,
        criterion,
        finesse_ratios: ratios.to_vec(),
        qida_layers,
        ladder_layer: EntanglerMap::ladder(n),
    })
}
