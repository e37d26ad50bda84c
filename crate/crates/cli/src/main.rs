use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use multiqida_cli::{build_layers_command, qmi_command, run_command, summarize_command, AnsatzKind, ExperimentConfig, Overrides};

#[derive(Parser)]
#[command(name = "multiqida", version, about = "Mutual-information guided layered VQE experiments")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// TOML experiment configuration
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of runs per ansatz
    #[arg(long, global = true)]
    runs: Option<usize>,
    /// Restrict to these ansätze (repeatable)
    #[arg(long, value_enum, global = true)]
    ansatz: Vec<AnsatzKind>,
    /// Output directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    hea_depth: Option<usize>,
    /// Comma-separated, strictly decreasing
    #[arg(long, value_delimiter = ',', global = true)]
    finesse_ratios: Option<Vec<f64>>,
    #[arg(long, global = true)]
    fcidump: Option<PathBuf>,
    /// Sparse determinant file used as the QMI source
    #[arg(long, global = true)]
    determinants: Option<PathBuf>,
    /// Precomputed QMI matrix used as the QMI source
    #[arg(long, global = true)]
    qmi_file: Option<PathBuf>,
    /// Use the exact ground state as the QMI source
    #[arg(long, global = true)]
    exact_qmi: bool,
    /// Existing layer plan for QIDA runs
    #[arg(long, global = true)]
    layer_plan: Option<PathBuf>,
    #[arg(long, global = true)]
    gradient_tolerance: Option<f64>,
    #[arg(long, global = true)]
    max_iterations: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the QMI matrix
    Qmi,
    /// Build QIDA layer plans and a CNOT report
    BuildLayers,
    /// Run the VQE batch
    Run,
    /// Recompute summary.csv from a runs file
    Summarize {
        /// Defaults to runs.jsonl in the output directory
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let g = cli.global;
    let mut config = match &g.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    config.apply(Overrides {
        seed: g.seed,
        n_runs: g.runs,
        ansatz: g.ansatz,
        output_dir: g.out,
        hea_depth: g.hea_depth,
        finesse_ratios: g.finesse_ratios,
        fcidump: g.fcidump,
        determinants: g.determinants,
        qmi_file: g.qmi_file,
        exact_qmi: g.exact_qmi,
        layer_plan: g.layer_plan,
        gradient_tolerance: g.gradient_tolerance,
        max_iterations: g.max_iterations,
    })?;
    config.validate()?;
    let out = config.output_dir();
    match cli.command {
        Command::Qmi => {
            let q = qmi_command(&config)?;
            println!("{} qubits, QMI written to {}", q.n_qubits(), out.display());
        }
        Command::BuildLayers => {
            for (kind, plan) in build_layers_command(&config)? {
                println!("{}: {} correlators in {} QIDA layers", kind.label(), plan.correlator_count(), plan.qida_layers.len());
            }
        }
        Command::Run => {
            let outcome = run_command(&config)?;
            for s in &outcome.summaries {
                println!("{}: best ε = {} %, MCED = {} %", s.ansatz_label, s.epsilon_best, s.mced_pct);
            }
            if !outcome.failures.is_empty() {
                eprintln!("{} runs failed; see failures.jsonl", outcome.failures.len());
            }
        }
        Command::Summarize { input } => {
            let input = input.unwrap_or_else(|| out.join(multiqida_cli::files::RUNS));
            for s in summarize_command(&input, &out)? {
                println!("{}: {} runs, best ε = {} %", s.ansatz_label, s.n_runs, s.epsilon_best);
            }
        }
    }
    Ok(())
}
