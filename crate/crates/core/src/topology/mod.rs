//! Correlator selection: finesse-ratio chunks, spanning forests, layer plans
//! and the hardware-efficient baseline.

mod graph;
mod hea;
mod layers;

pub use graph::{spanning_forest, Edge, Objective, UnionFind, WeightedGraph};
pub use hea::{cnot_count, hea_ladder_plan, AnsatzPlan, HeaPlan};
pub use layers::{build_layers, chunk_pairs, validate_ratios, EntanglerMap, LayerPlan, SelectionCriterion};
