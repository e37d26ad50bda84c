use std::fmt::Write as _;

use super::rdm::{von_neumann_entropy, QubitState};
use crate::error::{Error, Result};

/// Symmetric qubit mutual-information map with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct QmiMatrix {
    n_qubits: usize,
    values: Vec<f64>,
}

impl QmiMatrix {
    pub fn zeros(n_qubits: usize) -> Self {
        Self { n_qubits, values: vec![0.0; n_qubits * n_qubits] }
    }

    /// Builds from a row-major matrix, checking symmetry and the zero diagonal.
    pub fn from_values(n_qubits: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n_qubits * n_qubits {
            return Err(Error::Invalid(format!("{} values for a {n_qubits}×{n_qubits} matrix", values.len())));
        }
        for u in 0..n_qubits {
            if values[u * n_qubits + u] != 0.0 {
                return Err(Error::Invalid(format!("nonzero diagonal entry at {u}")));
            }
            for v in 0..u {
                let (a, b) = (values[u * n_qubits + v], values[v * n_qubits + u]);
                if a != b {
                    return Err(Error::Invalid(format!("asymmetric entries at ({u},{v}): {a} vs {b}")));
                }
                if !a.is_finite() || a < 0.0 {
                    return Err(Error::Invalid(format!("entry ({u},{v}) = {a} is not a nonnegative number")));
                }
            }
        }
        Ok(Self { n_qubits, values })
    }

    /// Sets `I_{u,v} = I_{v,u} = value`.
    pub fn set(&mut self, u: usize, v: usize, value: f64) {
        assert!(u != v, "diagonal entries are fixed at zero");
        self.values[u * self.n_qubits + v] = value;
        self.values[v * self.n_qubits + u] = value;
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.values[u * self.n_qubits + v]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Upper-triangle pairs `(u, v, I)` with `u < v`, sorted by descending
    /// value (ties by `(u, v)`).
    pub fn sorted_pairs(&self) -> Vec<(usize, usize, f64)> {
        let mut pairs: Vec<(usize, usize, f64)> = (0..self.n_qubits)
            .flat_map(|u| (u + 1..self.n_qubits).map(move |v| (u, v)))
            .map(|(u, v)| (u, v, self.get(u, v)))
            .collect();
        pairs.sort_by(|a, b| b.2.total_cmp(&a.2).then((a.0, a.1).cmp(&(b.0, b.1))));
        pairs
    }

    /// Relabels qubits: entry `(u, v)` moves to `(perm[u], perm[v])`.
    pub fn permuted(&self, perm: &[usize]) -> QmiMatrix {
        let mut out = QmiMatrix::zeros(self.n_qubits);
        for u in 0..self.n_qubits {
            for v in 0..self.n_qubits {
                out.values[perm[u] * self.n_qubits + perm[v]] = self.get(u, v);
            }
        }
        out
    }

    /// Comma-separated rows; values use the shortest round-trip formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for u in 0..self.n_qubits {
            let row: Vec<String> = (0..self.n_qubits).map(|v| format!("{}", self.get(u, v))).collect();
            writeln!(out, "{}", row.join(",")).expect("string write");
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut rows = 0;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            for field in line.split(',') {
                let v: f64 = field.trim().parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("non-numeric entry `{field}`"),
                })?;
                values.push(v);
            }
            rows += 1;
        }
        QmiMatrix::from_values(rows, values)
    }
}

/// `I_{u,v} = (S_u + S_v − S_{u,v})(1 − δ_{u,v})` with natural logarithms.
///
/// Tiny negative values from round-off are clamped to zero.
pub fn qmi_matrix(state: &impl QubitState) -> Result<QmiMatrix> {
    let n = state.n_qubits();
    if n < 2 {
        return Err(Error::Invalid("mutual information needs at least two qubits".into()));
    }
    let single: Vec<f64> =
        (0..n).map(|u| state.one_qubit_rdm(u).map(|r| von_neumann_entropy(&r))).collect::<Result<_>>()?;
    let mut out = QmiMatrix::zeros(n);
    for u in 0..n {
        for v in u + 1..n {
            let pair = von_neumann_entropy(&state.two_qubit_rdm(u, v)?);
            out.set(u, v, (single[u] + single[v] - pair).max(0.0));
        }
    }
    Ok(out)
}
