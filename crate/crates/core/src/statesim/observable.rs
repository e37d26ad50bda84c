//! Expectation values of Pauli sums without dense matrices.

use num_complex::Complex64;

use super::state::StateVector;
use crate::error::{Error, Result};
use crate::hamcore::{i_pow, PauliSum};

/// Imaginary residue silently discarded by [`expectation`].
pub const IMAGINARY_DISCARD: f64 = 1e-10;
/// Imaginary residue above which [`expectation`] reports an error.
pub const IMAGINARY_ERROR: f64 = 1e-8;

/// `⟨ψ|O|ψ⟩ = Σ_i c_i ⟨ψ|P_i|ψ⟩`, term by term.
pub fn expectation(state: &StateVector, obs: &PauliSum) -> Result<f64> {
    if state.n_qubits() != obs.n_qubits() {
        return Err(Error::QubitMismatch { left: state.n_qubits(), right: obs.n_qubits() });
    }
    let amps = state.amplitudes();
    let mut total = Complex64::default();
    for &(c, s) in obs.terms() {
        let (x, z) = (s.x_mask() as usize, s.z_mask() as usize);
        let mut acc = Complex64::default();
        for (b, &a) in amps.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let term = amps[b ^ x].conj() * a;
            if (b & z).count_ones() % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        total += c * i_pow(s.y_count()) * acc;
    }
    real_part(total)
}

fn real_part(v: Complex64) -> Result<f64> {
    if v.im.abs() > IMAGINARY_ERROR {
        return Err(Error::Numerical(format!("expectation has imaginary part {:e}", v.im)));
    }
    Ok(v.re)
}

/// A Pauli sum regrouped by X mask for repeated `O|ψ⟩` products.
///
/// Each group stores `(z_mask, c·i^{#Y})` so that
/// `O|b⟩ = Σ_groups Σ_terms coeff·(−1)^{|b∧z|} |b ⊕ x⟩`.
#[derive(Debug, Clone)]
pub struct CompiledObservable {
    n_qubits: usize,
    groups: Vec<(usize, Vec<(usize, Complex64)>)>,
}

impl CompiledObservable {
    pub fn new(obs: &PauliSum) -> Self {
        let mut groups: Vec<(usize, Vec<(usize, Complex64)>)> = Vec::new();
        for &(c, s) in obs.terms() {
            let x = s.x_mask() as usize;
            let entry = (s.z_mask() as usize, c * i_pow(s.y_count()));
            match groups.binary_search_by_key(&x, |g| g.0) {
                Ok(i) => groups[i].1.push(entry),
                Err(i) => groups.insert(i, (x, vec![entry])),
            }
        }
        Self { n_qubits: obs.n_qubits(), groups }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// `O|ψ⟩` as raw amplitudes.
    pub fn apply(&self, amps: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); amps.len()];
        for (x, terms) in &self.groups {
            for (b, &a) in amps.iter().enumerate() {
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let mut coeff = Complex64::default();
                for &(z, c) in terms {
                    if (b & z).count_ones() % 2 == 1 {
                        coeff -= c;
                    } else {
                        coeff += c;
                    }
                }
                out[b ^ x] += coeff * a;
            }
        }
        out
    }

    /// `⟨ψ|O|ψ⟩` via one `O|ψ⟩` product.
    pub fn expectation(&self, state: &StateVector) -> Result<f64> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch { left: state.n_qubits(), right: self.n_qubits });
        }
        let applied = self.apply(state.amplitudes());
        real_part(super::state::dot(state.amplitudes(), &applied))
    }
}
