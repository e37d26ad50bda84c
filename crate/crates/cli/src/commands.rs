//! The `qmi`, `build-layers`, `run` and `summarize` commands.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use multiqida::metrics::{correlation_energy_pct, summarize, symmetry_operators, RunRecord, SummaryStats, SymmetryOperators, SUMMARY_CSV_HEADER};
use multiqida::qmi::QmiMatrix;
use multiqida::statesim::{apply_circuit, expectation, overlap, StateVector};
use multiqida::topology::{build_layers, cnot_count, hea_ladder_plan, LayerPlan, SelectionCriterion};
use multiqida::vqe::{hea_circuit, hea_vqe, incremental_vqe, LayeredAnsatz, Phase, TraceEntry};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{AnsatzKind, ExperimentConfig};
use crate::files;
use crate::problem::{load_plan, load_qmi, Problem};

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}

fn jsonl<T: Serialize>(items: &[T]) -> Result<String> {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item)?);
        out.push('\n');
    }
    Ok(out)
}

fn pairs_csv(q: &QmiMatrix) -> String {
    let mut out = String::from("u,v,qmi\n");
    for (u, v, value) in q.sorted_pairs() {
        writeln!(out, "{u},{v},{value}").expect("string write");
    }
    out
}

/// Writes `qmi.csv` and the descending pair list.
pub fn qmi_command(config: &ExperimentConfig) -> Result<QmiMatrix> {
    let loaded = load_qmi(config, None)?;
    let out = config.output_dir();
    let csv = loaded.verbatim.unwrap_or_else(|| loaded.matrix.to_csv());
    write_file(&out, files::QMI_CSV, &csv)?;
    write_file(&out, files::QMI_PAIRS, &pairs_csv(&loaded.matrix))?;
    Ok(loaded.matrix)
}

fn ratios(config: &ExperimentConfig) -> Result<&[f64]> {
    match &config.finesse_ratios {
        Some(r) => Ok(r),
        None => bail!("finesse_ratios must be configured to build layers"),
    }
}

fn plans_from_qmi(config: &ExperimentConfig, q: &QmiMatrix) -> Result<Vec<(AnsatzKind, LayerPlan)>> {
    let ratios = ratios(config)?;
    config
        .ansatz_kinds()
        .into_iter()
        .filter_map(|k| k.criterion().map(|c| (k, c)))
        .map(|(k, c)| Ok((k, build_layers(q, ratios, c)?)))
        .collect()
}

fn cnot_report(n_qubits: usize, config: &ExperimentConfig, plans: &[(AnsatzKind, LayerPlan)]) -> Result<String> {
    let mut out = String::from("ansatz,n_qubits,cnot_count\n");
    for kind in config.ansatz_kinds() {
        let count = match kind {
            AnsatzKind::Hea => cnot_count(&hea_ladder_plan(n_qubits, config.hea_depth)?),
            _ => match plans.iter().find(|(k, _)| *k == kind) {
                Some((_, plan)) => cnot_count(plan),
                None => continue,
            },
        };
        writeln!(out, "{},{n_qubits},{count}", kind.label()).expect("string write");
    }
    Ok(out)
}

fn write_plans(config: &ExperimentConfig, plans: &[(AnsatzKind, LayerPlan)]) -> Result<()> {
    let out = config.output_dir();
    for (kind, plan) in plans {
        let mut json = serde_json::to_string_pretty(plan)?;
        json.push('\n');
        write_file(&out, &files::plan(kind.criterion().map_or("hea", SelectionCriterion::label)), &json)?;
    }
    Ok(())
}

/// Builds a plan per selected QIDA criterion and writes it with a CNOT report.
pub fn build_layers_command(config: &ExperimentConfig) -> Result<Vec<(AnsatzKind, LayerPlan)>> {
    let q = load_qmi(config, None)?.matrix;
    let plans = plans_from_qmi(config, &q)?;
    write_plans(config, &plans)?;
    write_file(&config.output_dir(), files::CNOT_REPORT, &cnot_report(q.n_qubits(), config, &plans)?)?;
    Ok(plans)
}

/// One line of `trajectories.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryLine {
    pub run_id: usize,
    pub ansatz: String,
    pub seed: u64,
    pub phase: Phase,
    pub layer: usize,
    pub iteration: usize,
    pub energy: f64,
}

/// One line of `failures.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunFailure {
    pub run_id: usize,
    pub ansatz: String,
    pub seed: u64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub records: Vec<RunRecord>,
    pub failures: Vec<RunFailure>,
    pub summaries: Vec<SummaryStats>,
}

struct Batch<'a> {
    problem: &'a Problem,
    config: &'a ExperimentConfig,
    ground: StateVector,
    exact_energy: f64,
    reference_energy: f64,
    symmetry: Option<SymmetryOperators>,
}

impl Batch<'_> {
    fn run_one(&self, kind: AnsatzKind, plan: Option<&LayerPlan>, run_id: usize) -> Result<(RunRecord, Vec<TrajectoryLine>)> {
        let seed = self.config.seed.wrapping_add(run_id as u64);
        let vqe = self.config.vqe.with_seed(seed);
        let h = &self.problem.hamiltonian;
        let reference = self.problem.reference_bitstring;
        let n = self.problem.n_qubits();
        let (result, trace, circuit, cnots) = match plan {
            Some(plan) => {
                let r = incremental_vqe(plan, h, reference, &vqe)?;
                let circuit = LayeredAnsatz::from_plan(plan, reference)?.circuit()?;
                (r.result, r.trace, circuit, cnot_count(plan))
            }
            None => {
                let hea = hea_ladder_plan(n, self.config.hea_depth)?;
                let r = hea_vqe(n, self.config.hea_depth, h, reference, &vqe)?;
                let trace: Vec<TraceEntry> = r.trace(Phase::Global, 0);
                (r, trace, hea_circuit(&hea, reference)?, cnot_count(&hea))
            }
        };
        let state = apply_circuit(&circuit, &result.final_params)?;
        let amplitude = overlap(&state, &self.ground)?.norm();
        let sym = |op: fn(&SymmetryOperators) -> &multiqida::hamcore::PauliSum| -> Result<Option<f64>> {
            self.symmetry.as_ref().map(|ops| expectation(&state, op(ops))).transpose().map_err(Into::into)
        };
        let record = RunRecord {
            run_id,
            ansatz_label: kind.label().to_string(),
            seed,
            final_energy: result.final_energy,
            reference_energy: self.reference_energy,
            exact_energy: self.exact_energy,
            epsilon: correlation_energy_pct(result.final_energy, self.reference_energy, self.exact_energy)?,
            fidelity: amplitude * amplitude,
            overlap: amplitude,
            sz: sym(|o| &o.sz)?,
            s2: sym(|o| &o.s2)?,
            n_e: sym(|o| &o.ne)?,
            cnot_count: cnots,
            n_iterations: result.n_iterations,
            converged: result.converged,
        };
        let lines = trace
            .into_iter()
            .map(|t| TrajectoryLine {
                run_id,
                ansatz: kind.label().to_string(),
                seed,
                phase: t.phase,
                layer: t.layer,
                iteration: t.iteration,
                energy: t.energy,
            })
            .collect();
        Ok((record, lines))
    }
}

fn plans_for_run(config: &ExperimentConfig, problem: &Problem) -> Result<Vec<(AnsatzKind, LayerPlan)>> {
    let kinds: Vec<AnsatzKind> = config.ansatz_kinds().into_iter().filter(|k| k.criterion().is_some()).collect();
    if kinds.is_empty() {
        return Ok(Vec::new());
    }
    let plans = match &config.layer_plan {
        Some(path) => {
            let plan = load_plan(path)?;
            let matching: Vec<(AnsatzKind, LayerPlan)> =
                kinds.iter().filter(|k| k.criterion() == Some(plan.criterion)).map(|&k| (k, plan.clone())).collect();
            if matching.len() != kinds.len() {
                bail!("the supplied layer plan only serves the `{}` criterion", plan.criterion.label());
            }
            matching
        }
        None => plans_from_qmi(config, &load_qmi(config, Some(problem))?.matrix)?,
    };
    for (_, plan) in &plans {
        if plan.n_qubits != problem.n_qubits() {
            bail!("layer plan has {} qubits but the Hamiltonian has {}", plan.n_qubits, problem.n_qubits());
        }
    }
    Ok(plans)
}

/// Runs `n_runs` seeds of every selected ansatz and writes the run,
/// trajectory, failure and summary files.
pub fn run_command(config: &ExperimentConfig) -> Result<RunOutcome> {
    config.validate()?;
    let problem = Problem::from_config(config)?;
    let (exact_energy, ground) = problem.ground_state()?;
    let reference = StateVector::basis(problem.n_qubits(), problem.reference_bitstring)?;
    let reference_energy = expectation(&reference, &problem.hamiltonian)?;
    if reference_energy == exact_energy {
        bail!("the reference state is already exact; correlation energy is undefined");
    }
    let plans = plans_for_run(config, &problem)?;
    let symmetry = problem.n_spatial.map(symmetry_operators).transpose()?;
    let batch = Batch { problem: &problem, config, ground, exact_energy, reference_energy, symmetry };

    let jobs: Vec<(AnsatzKind, Option<&LayerPlan>, usize)> = config
        .ansatz_kinds()
        .into_iter()
        .flat_map(|kind| {
            let plan = plans.iter().find(|(k, _)| *k == kind).map(|(_, p)| p);
            (0..config.n_runs).map(move |i| (kind, plan, i))
        })
        .collect();
    let results: Vec<_> = jobs.par_iter().map(|&(kind, plan, i)| batch.run_one(kind, plan, i)).collect();

    let mut records = Vec::new();
    let mut trajectories = Vec::new();
    let mut failures = Vec::new();
    for (&(kind, _, run_id), result) in jobs.iter().zip(results) {
        match result {
            Ok((record, lines)) => {
                records.push(record);
                trajectories.extend(lines);
            }
            Err(e) => failures.push(RunFailure {
                run_id,
                ansatz: kind.label().to_string(),
                seed: config.seed.wrapping_add(run_id as u64),
                error: format!("{e:#}"),
            }),
        }
    }

    let out = config.output_dir();
    write_plans(config, &plans)?;
    write_file(&out, files::CNOT_REPORT, &cnot_report(problem.n_qubits(), config, &plans)?)?;
    write_file(&out, files::RUNS, &jsonl(&records)?)?;
    write_file(&out, files::TRAJECTORIES, &jsonl(&trajectories)?)?;
    write_file(&out, files::FAILURES, &jsonl(&failures)?)?;
    let (summaries, csv) = summary_table(&records)?;
    write_file(&out, files::SUMMARY, &csv)?;
    Ok(RunOutcome { records, failures, summaries })
}

/// Per-ansatz statistics in order of first appearance, plus the CSV text.
pub fn summary_table(records: &[RunRecord]) -> Result<(Vec<SummaryStats>, String)> {
    let mut labels: Vec<&str> = Vec::new();
    for r in records {
        if !labels.contains(&r.ansatz_label.as_str()) {
            labels.push(&r.ansatz_label);
        }
    }
    let mut stats = Vec::new();
    let mut csv = format!("{SUMMARY_CSV_HEADER}\n");
    for label in labels {
        let group: Vec<RunRecord> = records.iter().filter(|r| r.ansatz_label == label).cloned().collect();
        let s = summarize(&group, group[0].reference_energy, group[0].exact_energy)?;
        csv.push_str(&s.csv_row());
        csv.push('\n');
        stats.push(s);
    }
    Ok((stats, csv))
}

/// Recomputes `summary.csv` from a `runs.jsonl` file.
pub fn summarize_command(runs: &Path, out: &Path) -> Result<Vec<SummaryStats>> {
    let text = fs::read_to_string(runs).with_context(|| format!("reading {}", runs.display()))?;
    let records = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).with_context(|| format!("{}:{}", runs.display(), i + 1)))
        .collect::<Result<Vec<RunRecord>>>()?;
    if records.is_empty() {
        bail!("{} holds no runs", runs.display());
    }
    let (stats, csv) = summary_table(&records)?;
    write_file(out, files::SUMMARY, &csv)?;
    Ok(stats)
}
