//! VQE drivers: plain minimization, layer-by-layer growth and the HEA baseline.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ansatz::{hea_circuit, LayeredAnsatz};
use super::bfgs::{bfgs, BfgsOptions};
use super::objective::EnergyModel;
use crate::error::{Error, Result};
use crate::hamcore::PauliSum;
use crate::statesim::{apply_circuit, Circuit};
use crate::topology::{hea_ladder_plan, LayerPlan};

/// Energy slack allowed before a layer's independent phase is flagged.
pub const LAYER_FLAG_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Layer0Init {
    /// Every first-layer parameter uniform in `[0, 2π)`.
    #[default]
    #[serde(rename = "uniform_0_2pi")]
    Uniform0To2Pi,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VqeConfig {
    pub gradient_tolerance: f64,
    pub max_iterations: usize,
    pub rng_seed: u64,
    /// New layers start from offsets uniform in `[0, halfwidth)`.
    pub layer_init_halfwidth: f64,
    pub layer0_init: Layer0Init,
}

impl Default for VqeConfig {
    fn default() -> Self {
        Self {
            gradient_tolerance: 1e-6,
            max_iterations: 2000,
            rng_seed: 0,
            layer_init_halfwidth: 0.1,
            layer0_init: Layer0Init::Uniform0To2Pi,
        }
    }
}

impl VqeConfig {
    pub fn with_seed(self, rng_seed: u64) -> Self {
        Self { rng_seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.gradient_tolerance.is_nan() || self.gradient_tolerance <= 0.0 {
            return Err(Error::Invalid(format!("gradient tolerance {} must be positive", self.gradient_tolerance)));
        }
        if self.layer_init_halfwidth.is_nan() || self.layer_init_halfwidth <= 0.0 {
            return Err(Error::Invalid(format!("layer init halfwidth {} must be positive", self.layer_init_halfwidth)));
        }
        Ok(())
    }

    fn bfgs_options(&self) -> BfgsOptions {
        BfgsOptions {
            gradient_tolerance: self.gradient_tolerance,
            max_iterations: self.max_iterations,
            ..BfgsOptions::default()
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.rng_seed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    pub final_energy: f64,
    pub final_params: Vec<f64>,
    /// Energy at the start and after every accepted iterate.
    pub energy_trace: Vec<f64>,
    pub n_iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    /// Only the newest layer is optimized.
    Independent,
    /// All layers are optimized together.
    Relaxation,
    /// Single optimization of a fixed circuit.
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub phase: Phase,
    pub layer: usize,
    pub iteration: usize,
    pub energy: f64,
}

fn trace_entries(result: &OptResult, phase: Phase, layer: usize) -> impl Iterator<Item = TraceEntry> + '_ {
    result.energy_trace.iter().enumerate().map(move |(iteration, &energy)| TraceEntry { phase, layer, iteration, energy })
}

impl OptResult {
    pub fn trace(&self, phase: Phase, layer: usize) -> Vec<TraceEntry> {
        trace_entries(self, phase, layer).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerRecord {
    pub layer: usize,
    pub n_correlators: usize,
    /// Energy right after the new layer's parameters are drawn.
    pub start_energy: f64,
    pub independent_energy: f64,
    pub relaxed_energy: f64,
    /// The independent phase ended above the previous relaxed energy.
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncrementalResult {
    pub result: OptResult,
    pub history: Vec<LayerRecord>,
    pub trace: Vec<TraceEntry>,
}

fn uniform(rng: &mut ChaCha8Rng, n: usize, upper: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.0..upper)).collect()
}

fn minimize_model(model: &EnergyModel<'_>, init: Vec<f64>, config: &VqeConfig) -> Result<OptResult> {
    if init.len() != model.n_parameters() {
        return Err(Error::ParameterLength { expected: model.n_parameters(), actual: init.len() });
    }
    let out = bfgs(|x| model.energy_and_gradient(x), init, &config.bfgs_options())?;
    Ok(OptResult {
        final_energy: out.f,
        final_params: out.x,
        energy_trace: out.trace,
        n_iterations: out.iterations,
        converged: out.converged,
    })
}

/// BFGS on the energy of `circuit` applied to its reference bitstring.
pub fn minimize(circuit: &Circuit, init_params: &[f64], hamiltonian: &PauliSum, config: &VqeConfig) -> Result<OptResult> {
    config.validate()?;
    minimize_model(&EnergyModel::new(circuit, hamiltonian)?, init_params.to_vec(), config)
}

/// Grows the ansatz one layer at a time.
///
/// The first layer is optimized from parameters uniform in `[0, 2π)`. Each
/// later layer is first optimized alone on top of the cached state of the
/// layers before it, starting from small offsets, and then the full circuit
/// is relaxed from the concatenated parameters with a fresh inverse-Hessian
/// estimate. Layers with no correlators are skipped.
pub fn incremental_vqe(
    plan: &LayerPlan,
    hamiltonian: &PauliSum,
    reference_bitstring: u64,
    config: &VqeConfig,
) -> Result<IncrementalResult> {
    config.validate()?;
    let ansatz = LayeredAnsatz::from_plan(plan, reference_bitstring)?;
    if ansatz.layers().is_empty() {
        return Err(Error::Invalid("layer plan contains no correlators".into()));
    }
    let mut rng = config.rng();
    let mut trace = Vec::new();
    let mut history = Vec::new();
    let mut all_energies = Vec::new();
    let mut total_iterations = 0;

    let first = ansatz.prefix_circuit(1)?;
    let init = match config.layer0_init {
        Layer0Init::Uniform0To2Pi => uniform(&mut rng, first.n_parameters(), TAU),
    };
    let mut current = minimize(&first, &init, hamiltonian, config)?;
    trace.extend(trace_entries(&current, Phase::Independent, 0));
    all_energies.extend_from_slice(&current.energy_trace);
    total_iterations += current.n_iterations;
    history.push(LayerRecord {
        layer: 0,
        n_correlators: ansatz.layers()[0].pairs.len(),
        start_energy: current.energy_trace[0],
        independent_energy: current.final_energy,
        relaxed_energy: current.final_energy,
        flagged: false,
    });

    for l in 1..ansatz.layers().len() {
        let previous_energy = current.final_energy;
        let cached = apply_circuit(&ansatz.prefix_circuit(l)?, &current.final_params)?;
        let layer_circuit = ansatz.layer_circuit(l)?;
        let layer_model = EnergyModel::with_initial_state(&layer_circuit, hamiltonian, cached)?;
        let offsets = uniform(&mut rng, layer_circuit.n_parameters(), config.layer_init_halfwidth);
        let independent = minimize_model(&layer_model, offsets, config)?;
        trace.extend(trace_entries(&independent, Phase::Independent, l));

        let mut joined = current.final_params.clone();
        joined.extend_from_slice(&independent.final_params);
        let relaxed = minimize(&ansatz.prefix_circuit(l + 1)?, &joined, hamiltonian, config)?;
        trace.extend(trace_entries(&relaxed, Phase::Relaxation, l));

        all_energies.extend_from_slice(&independent.energy_trace);
        all_energies.extend_from_slice(&relaxed.energy_trace);
        total_iterations += independent.n_iterations + relaxed.n_iterations;
        history.push(LayerRecord {
            layer: l,
            n_correlators: ansatz.layers()[l].pairs.len(),
            start_energy: independent.energy_trace[0],
            independent_energy: independent.final_energy,
            relaxed_energy: relaxed.final_energy,
            flagged: independent.final_energy > previous_energy + LAYER_FLAG_TOLERANCE,
        });
        current = relaxed;
    }

    let result = OptResult {
        final_energy: current.final_energy,
        final_params: current.final_params,
        energy_trace: all_energies,
        n_iterations: total_iterations,
        converged: current.converged,
    };
    Ok(IncrementalResult { result, history, trace })
}

/// HEA baseline: every parameter uniform in `[0, 2π)`, one global BFGS run.
pub fn hea_vqe(
    n_qubits: usize,
    depth: usize,
    hamiltonian: &PauliSum,
    reference_bitstring: u64,
    config: &VqeConfig,
) -> Result<OptResult> {
    let circuit = hea_circuit(&hea_ladder_plan(n_qubits, depth)?, reference_bitstring)?;
    let init = uniform(&mut config.rng(), circuit.n_parameters(), TAU);
    minimize(&circuit, &init, hamiltonian, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamcore::{Pauli, PauliString};
    use crate::statesim::GateOp;

    #[test]
    fn ry_against_z() {
        let mut c = Circuit::new(1, 0).unwrap();
        c.push(GateOp::Ry { qubit: 0, slot: 0 }).unwrap();
        let h = PauliSum::term(1.0.into(), PauliString::from_letters(1, &[(0, Pauli::Z)]).unwrap());
        let r = minimize(&c, &[1.0], &h, &VqeConfig::default()).unwrap();
        assert!(r.converged);
        assert!((r.final_energy + 1.0).abs() < 1e-8);
        assert_eq!(*r.energy_trace.last().unwrap(), r.final_energy);
    }

    #[test]
    fn config_validation() {
        assert!(VqeConfig { gradient_tolerance: 0.0, ..VqeConfig::default() }.validate().is_err());
        assert!(VqeConfig { layer_init_halfwidth: -1.0, ..VqeConfig::default() }.validate().is_err());
    }

    #[test]
    fn config_from_partial_json_fields() {
        let c: VqeConfig = serde::Deserialize::deserialize(serde::de::value::MapDeserializer::<
            _,
            serde::de::value::Error,
        >::new(std::iter::once(("rng_seed", 7u64))))
        .unwrap();
        assert_eq!(c.rng_seed, 7);
        assert_eq!(c.layer_init_halfwidth, 0.1);
    }
}
