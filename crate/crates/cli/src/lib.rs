//! Experiment runner: configuration, input loading and the four commands
//! exposed by the `multiqida` binary.

pub mod commands;
pub mod config;
pub mod problem;

pub use commands::{build_layers_command, qmi_command, run_command, summarize_command, RunOutcome};
pub use config::{AnsatzKind, ExperimentConfig, HamiltonianSource, Overrides, QmiSource};
pub use problem::Problem;

/// File names written inside the output directory.
pub mod files {
    pub const QMI_CSV: &str = "qmi.csv";
    pub const QMI_PAIRS: &str = "qmi_pairs.csv";
    pub const CNOT_REPORT: &str = "cnot_report.csv";
    pub const RUNS: &str = "runs.jsonl";
    pub const TRAJECTORIES: &str = "trajectories.jsonl";
    pub const SUMMARY: &str = "summary.csv";
    pub const FAILURES: &str = "failures.jsonl";

    pub fn plan(label: &str) -> String {
        format!("layers_{label}.json")
    }
}
