use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on the norm of a [`StateVector`].
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Dense amplitudes over `2^n` computational basis states. Qubit 0 is the
/// least-significant bit of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|b⟩` for basis index `b`.
    pub fn basis(n_qubits: usize, b: u64) -> Result<Self> {
        if n_qubits >= 40 {
            return Err(Error::TooLarge(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if b as usize >= dim {
            return Err(Error::Invalid(format!("basis index {b} outside {n_qubits}-qubit register")));
        }
        let mut amplitudes = vec![Complex64::default(); dim];
        amplitudes[b as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amplitudes })
    }

    /// Wraps amplitudes whose norm is already 1 within [`NORM_TOLERANCE`].
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = register_width(amplitudes.len())?;
        let norm = norm_sqr(&amplitudes).sqrt();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Numerical(format!("state norm {norm} differs from 1")));
        }
        Ok(Self { n_qubits, amplitudes })
    }

    /// Normalizes arbitrary nonzero amplitudes.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let n_qubits = register_width(amplitudes.len())?;
        let norm = norm_sqr(&amplitudes).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Numerical("cannot normalize a zero vector".into()));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { n_qubits, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm_sqr(&self.amplitudes).sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        Ok(dot(&self.amplitudes, &other.amplitudes))
    }
}

fn register_width(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::Invalid(format!("{len} amplitudes is not a power of two")));
    }
    Ok(len.trailing_zeros() as usize)
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}

/// `Σ conj(a_i) b_i`.
pub(crate) fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Raw overlap `⟨a|b⟩`.
pub fn overlap(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    a.inner(b)
}

/// Squared overlap magnitude `|⟨a|b⟩|²`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().min(1.0))
}
