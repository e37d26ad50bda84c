//! Evaluation quantities for VQE runs.

mod formulas;
mod summary;
mod symmetry;

pub use formulas::{correlation_energy_pct, mced, mean, mean_deviation_from_best, population_std};
pub use summary::{summarize, RunRecord, SummaryStats, SUMMARY_CSV_HEADER};
pub use symmetry::{symmetry_operators, SymmetryOperators};
