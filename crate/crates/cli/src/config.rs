//! TOML experiment configuration.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use multiqida::hamcore::LatticeTopology;
use multiqida::qmi::{DEFAULT_CUTOFF, DEFAULT_MAX_DETERMINANTS};
use multiqida::topology::{validate_ratios, SelectionCriterion};
use multiqida::vqe::VqeConfig;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum HamiltonianSource {
    Fcidump { path: PathBuf },
    Heisenberg { n_qubits: usize, coupling: f64, topology: LatticeTopology },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum QmiSource {
    /// Sparse determinant expansion on disk.
    Determinants {
        path: PathBuf,
        #[serde(default = "default_cutoff")]
        cutoff: f64,
        #[serde(default = "default_max_determinants")]
        max_determinants: usize,
    },
    /// Exact ground state of the configured Hamiltonian.
    Exact,
    /// Precomputed matrix in the `qmi.csv` format.
    File { path: PathBuf },
}

fn default_cutoff() -> f64 {
    DEFAULT_CUTOFF
}

fn default_max_determinants() -> usize {
    DEFAULT_MAX_DETERMINANTS
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum AnsatzKind {
    QidaMax,
    QidaEmp,
    Hea,
}

impl AnsatzKind {
    pub const ALL: [AnsatzKind; 3] = [AnsatzKind::QidaMax, AnsatzKind::QidaEmp, AnsatzKind::Hea];

    /// Label used in output records.
    pub fn label(self) -> &'static str {
        match self {
            AnsatzKind::QidaMax => "qida_max",
            AnsatzKind::QidaEmp => "qida_emp",
            AnsatzKind::Hea => "hea",
        }
    }

    pub fn criterion(self) -> Option<SelectionCriterion> {
        match self {
            AnsatzKind::QidaMax => Some(SelectionCriterion::MaxCorrelation),
            AnsatzKind::QidaEmp => Some(SelectionCriterion::DistanceReduction),
            AnsatzKind::Hea => None,
        }
    }
}

fn default_runs() -> usize {
    50
}

fn default_depth() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub hamiltonian: Option<HamiltonianSource>,
    pub qmi: Option<QmiSource>,
    /// Existing plan used for QIDA runs instead of building one.
    #[serde(default)]
    pub layer_plan: Option<PathBuf>,
    #[serde(default)]
    pub finesse_ratios: Option<Vec<f64>>,
    #[serde(default = "default_depth")]
    pub hea_depth: usize,
    #[serde(default = "default_runs")]
    pub n_runs: usize,
    #[serde(default)]
    pub seed: u64,
    /// Empty means every ansatz.
    #[serde(default)]
    pub ansatz: Vec<AnsatzKind>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    /// `rng_seed` is replaced by `seed + run_index` for every run.
    #[serde(default)]
    pub vqe: VqeConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            hamiltonian: None,
            qmi: None,
            layer_plan: None,
            finesse_ratios: None,
            hea_depth: default_depth(),
            n_runs: default_runs(),
            seed: 0,
            ansatz: Vec::new(),
            output_dir: None,
            vqe: VqeConfig::default(),
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub n_runs: Option<usize>,
    pub ansatz: Vec<AnsatzKind>,
    pub output_dir: Option<PathBuf>,
    pub hea_depth: Option<usize>,
    pub finesse_ratios: Option<Vec<f64>>,
    pub fcidump: Option<PathBuf>,
    pub determinants: Option<PathBuf>,
    pub qmi_file: Option<PathBuf>,
    pub exact_qmi: bool,
    pub layer_plan: Option<PathBuf>,
    pub gradient_tolerance: Option<f64>,
    pub max_iterations: Option<usize>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    /// Reads a file; relative paths inside it resolve against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut config = Self::from_toml(&text).with_context(|| format!("parsing {}", path.display()))?;
        config.resolve_paths(path.parent().unwrap_or(Path::new(".")));
        Ok(config)
    }

    fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        match &mut self.hamiltonian {
            Some(HamiltonianSource::Fcidump { path }) => fix(path),
            Some(HamiltonianSource::Heisenberg { .. }) | None => {}
        }
        match &mut self.qmi {
            Some(QmiSource::Determinants { path, .. } | QmiSource::File { path }) => fix(path),
            Some(QmiSource::Exact) | None => {}
        }
        if let Some(p) = &mut self.layer_plan {
            fix(p);
        }
        if let Some(p) = &mut self.output_dir {
            fix(p);
        }
    }

    pub fn apply(&mut self, o: Overrides) -> Result<()> {
        let qmi_flags = usize::from(o.determinants.is_some()) + usize::from(o.qmi_file.is_some()) + usize::from(o.exact_qmi);
        if qmi_flags > 1 {
            bail!("give at most one of --determinants, --qmi-file and --exact-qmi");
        }
        if let Some(path) = o.fcidump {
            self.hamiltonian = Some(HamiltonianSource::Fcidump { path });
        }
        if let Some(path) = o.determinants {
            self.qmi = Some(QmiSource::Determinants {
                path,
                cutoff: DEFAULT_CUTOFF,
                max_determinants: DEFAULT_MAX_DETERMINANTS,
            });
        }
        if let Some(path) = o.qmi_file {
            self.qmi = Some(QmiSource::File { path });
        }
        if o.exact_qmi {
            self.qmi = Some(QmiSource::Exact);
        }
        if let Some(v) = o.seed {
            self.seed = v;
        }
        if let Some(v) = o.n_runs {
            self.n_runs = v;
        }
        if !o.ansatz.is_empty() {
            self.ansatz = o.ansatz;
        }
        if o.output_dir.is_some() {
            self.output_dir = o.output_dir;
        }
        if let Some(v) = o.hea_depth {
            self.hea_depth = v;
        }
        if o.finesse_ratios.is_some() {
            self.finesse_ratios = o.finesse_ratios;
        }
        if o.layer_plan.is_some() {
            self.layer_plan = o.layer_plan;
        }
        if let Some(v) = o.gradient_tolerance {
            self.vqe.gradient_tolerance = v;
        }
        if let Some(v) = o.max_iterations {
            self.vqe.max_iterations = v;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_runs == 0 {
            bail!("n_runs must be at least 1");
        }
        if self.hea_depth == 0 {
            bail!("hea_depth must be at least 1");
        }
        if let Some(r) = &self.finesse_ratios {
            validate_ratios(r)?;
        }
        if let Some(QmiSource::Determinants { cutoff, max_determinants, .. }) = &self.qmi {
            if cutoff.is_nan() || *cutoff < 0.0 || *max_determinants == 0 {
                bail!("determinant cutoff must be non-negative and max_determinants positive");
            }
        }
        self.vqe.validate()?;
        Ok(())
    }

    /// Selected ansätze in canonical order without repeats.
    pub fn ansatz_kinds(&self) -> Vec<AnsatzKind> {
        if self.ansatz.is_empty() {
            return AnsatzKind::ALL.to_vec();
        }
        let mut kinds = self.ansatz.clone();
        kinds.sort();
        kinds.dedup();
        kinds
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output_dir.clone().unwrap_or_else(|| PathBuf::from("out"))
    }
}
