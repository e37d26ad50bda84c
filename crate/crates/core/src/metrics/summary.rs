use serde::{Deserialize, Serialize};

use super::formulas::{correlation_energy_pct, mean, mean_deviation_from_best, mced, population_std};
use crate::error::{Error, Result};

/// Outcome of one VQE run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_id: usize,
    pub ansatz_label: String,
    pub seed: u64,
    pub final_energy: f64,
    pub reference_energy: f64,
    pub exact_energy: f64,
    pub epsilon: f64,
    /// `|⟨ψ|ψ₀⟩|²` against the exact ground state.
    pub fidelity: f64,
    /// `|⟨ψ|ψ₀⟩|`.
    pub overlap: f64,
    /// Spin and particle-number expectations; absent for spin-lattice models.
    pub sz: Option<f64>,
    pub s2: Option<f64>,
    pub n_e: Option<f64>,
    pub cnot_count: usize,
    pub n_iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub ansatz_label: String,
    pub n_runs: usize,
    pub cnot_count: usize,
    pub epsilon_avg: f64,
    pub epsilon_std: f64,
    pub epsilon_best: f64,
    pub energy_avg: f64,
    pub energy_std: f64,
    pub energy_best: f64,
    pub mced_pct: f64,
    pub mced_hartree: f64,
    pub fidelity_best: f64,
}

pub const SUMMARY_CSV_HEADER: &str = "ansatz,n_runs,cnot_count,epsilon_avg,epsilon_std,epsilon_best,\
energy_avg,energy_std,energy_best,mced_pct,mced_hartree,fidelity_best";

impl SummaryStats {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.ansatz_label,
            self.n_runs,
            self.cnot_count,
            self.epsilon_avg,
            self.epsilon_std,
            self.epsilon_best,
            self.energy_avg,
            self.energy_std,
            self.energy_best,
            self.mced_pct,
            self.mced_hartree,
            self.fidelity_best
        )
    }
}

/// Aggregates runs of a single ansatz. Percentages are recomputed from the
/// final energies with the given reference and exact energies; the label and
/// CNOT count are taken from the first record.
pub fn summarize(records: &[RunRecord], e_hf: f64, e_exact: f64) -> Result<SummaryStats> {
    let first = records.first().ok_or_else(|| Error::UndefinedMetric("summary of zero runs".into()))?;
    let energies: Vec<f64> = records.iter().map(|r| r.final_energy).collect();
    let epsilons: Vec<f64> =
        energies.iter().map(|&e| correlation_energy_pct(e, e_hf, e_exact)).collect::<Result<_>>()?;
    let energy_best = energies.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(SummaryStats {
        ansatz_label: first.ansatz_label.clone(),
        n_runs: records.len(),
        cnot_count: first.cnot_count,
        epsilon_avg: mean(&epsilons),
        epsilon_std: population_std(&epsilons),
        epsilon_best: epsilons.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        energy_avg: mean(&energies),
        energy_std: population_std(&energies),
        energy_best,
        mced_pct: mced(&epsilons)?,
        mced_hartree: mean_deviation_from_best(&energies, energy_best),
        fidelity_best: records.iter().map(|r| r.fidelity).fold(0.0, f64::max),
    })
}
