//! Loading Hamiltonians, QMI maps and plans named by a configuration.

use std::path::Path;

use anyhow::{bail, Context, Result};
use multiqida::hamcore::{build_qubit_hamiltonian, hartree_fock_bitstring, heisenberg_hamiltonian, neel_bitstring, parse_fcidump, PauliSum};
use multiqida::qmi::{load_sparse_state, qmi_matrix, QmiMatrix};
use multiqida::statesim::{exact_ground_state, StateVector};
use multiqida::topology::LayerPlan;

use crate::config::{ExperimentConfig, HamiltonianSource, QmiSource};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Qubit Hamiltonian with its reference determinant.
#[derive(Debug, Clone)]
pub struct Problem {
    pub hamiltonian: PauliSum,
    /// HF determinant for molecules, Néel state for spin lattices.
    pub reference_bitstring: u64,
    /// Spatial orbitals of a molecular problem; `None` for spin lattices.
    pub n_spatial: Option<usize>,
}

impl Problem {
    pub fn load(source: &HamiltonianSource) -> Result<Self> {
        match source {
            HamiltonianSource::Fcidump { path } => {
                let mo = parse_fcidump(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
                Ok(Self {
                    hamiltonian: build_qubit_hamiltonian(&mo)?,
                    reference_bitstring: hartree_fock_bitstring(&mo),
                    n_spatial: Some(mo.n_spatial_orbitals()),
                })
            }
            HamiltonianSource::Heisenberg { n_qubits, coupling, topology } => Ok(Self {
                hamiltonian: heisenberg_hamiltonian(*n_qubits, *coupling, *topology)?,
                reference_bitstring: neel_bitstring(*n_qubits),
                n_spatial: None,
            }),
        }
    }

    pub fn from_config(config: &ExperimentConfig) -> Result<Self> {
        match &config.hamiltonian {
            Some(source) => Self::load(source),
            None => bail!("no Hamiltonian source configured"),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.hamiltonian.n_qubits()
    }

    pub fn ground_state(&self) -> Result<(f64, StateVector)> {
        Ok(exact_ground_state(&self.hamiltonian)?)
    }
}

/// QMI map plus the raw file text when it was read verbatim.
pub struct LoadedQmi {
    pub matrix: QmiMatrix,
    pub verbatim: Option<String>,
}

/// Resolves the configured QMI source. `problem` is only consulted for the
/// exact ground state.
pub fn load_qmi(config: &ExperimentConfig, problem: Option<&Problem>) -> Result<LoadedQmi> {
    match &config.qmi {
        None => bail!("no QMI source configured"),
        Some(QmiSource::File { path }) => {
            let text = read(path)?;
            let matrix = QmiMatrix::from_csv(&text).with_context(|| format!("parsing {}", path.display()))?;
            Ok(LoadedQmi { matrix, verbatim: Some(text) })
        }
        Some(QmiSource::Determinants { path, cutoff, max_determinants }) => {
            let state = load_sparse_state(&read(path)?, *cutoff, *max_determinants)
                .with_context(|| format!("parsing {}", path.display()))?;
            Ok(LoadedQmi { matrix: qmi_matrix(&state)?, verbatim: None })
        }
        Some(QmiSource::Exact) => {
            let owned;
            let problem = match problem {
                Some(p) => p,
                None => {
                    owned = Problem::from_config(config)?;
                    &owned
                }
            };
            let (_, psi) = problem.ground_state()?;
            Ok(LoadedQmi { matrix: qmi_matrix(&psi)?, verbatim: None })
        }
    }
}

pub fn load_plan(path: &Path) -> Result<LayerPlan> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}
