//! Sparse Slater-determinant expansions and their file format.
//!
//! ```text
//! <nqubits> <K>
//! <bitstring> <re> [<im>]      (K records)
//! ```
//!
//! The leftmost bitstring character is the highest qubit index; `1` marks an
//! occupied spin orbital. Coefficients must already be expressed in the
//! Jordan-Wigner qubit basis (any fermionic sign convention is applied by the
//! producer of the file).

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_CUTOFF: f64 = 1e-12;
pub const DEFAULT_MAX_DETERMINANTS: usize = 100_000;

/// Normalized map from occupation bitstring to amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState {
    n_qubits: usize,
    entries: BTreeMap<u64, Complex64>,
}

impl SparseState {
    /// Builds a state from raw entries: drops amplitudes below `cutoff`,
    /// keeps the `max_determinants` largest, then renormalizes.
    pub fn from_entries(
        n_qubits: usize,
        entries: impl IntoIterator<Item = (u64, Complex64)>,
        cutoff: f64,
        max_determinants: usize,
    ) -> Result<Self> {
        if n_qubits == 0 || n_qubits > 64 {
            return Err(Error::Invalid(format!("unsupported register width {n_qubits}")));
        }
        let mut merged: BTreeMap<u64, Complex64> = BTreeMap::new();
        for (b, a) in entries {
            if n_qubits < 64 && b >> n_qubits != 0 {
                return Err(Error::Invalid(format!("bitstring {b:#b} exceeds {n_qubits} qubits")));
            }
            *merged.entry(b).or_default() += a;
        }
        let mut kept: Vec<(u64, Complex64)> =
            merged.into_iter().filter(|(_, a)| a.norm() >= cutoff && a.norm() > 0.0).collect();
        // largest magnitude first, ties by bitstring
        kept.sort_by(|x, y| y.1.norm().total_cmp(&x.1.norm()).then(x.0.cmp(&y.0)));
        kept.truncate(max_determinants);
        if kept.is_empty() {
            return Err(Error::Invalid("no determinant survives the cutoff".into()));
        }
        let norm = kept.iter().map(|(_, a)| a.norm_sqr()).sum::<f64>().sqrt();
        let entries = kept.into_iter().map(|(b, a)| (b, a / norm)).collect();
        Ok(Self { n_qubits, entries })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Entries in ascending bitstring order.
    pub fn entries(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.entries.iter().map(|(&b, &a)| (b, a))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn amplitude(&self, b: u64) -> Complex64 {
        self.entries.get(&b).copied().unwrap_or_default()
    }

    pub fn norm(&self) -> f64 {
        self.entries.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Serializes in the determinant file format (imaginary column only when nonzero).
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n_qubits, self.entries.len());
        for (&b, a) in &self.entries {
            out.push_str(&format_bitstring(b, self.n_qubits));
            if a.im == 0.0 {
                out.push_str(&format!(" {}\n", a.re));
            } else {
                out.push_str(&format!(" {} {}\n", a.re, a.im));
            }
        }
        out
    }
}

/// Leftmost character is the highest qubit.
pub fn format_bitstring(b: u64, n_qubits: usize) -> String {
    (0..n_qubits).rev().map(|q| if b >> q & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn parse_bitstring(s: &str) -> Option<u64> {
    if s.is_empty() || s.len() > 64 {
        return None;
    }
    s.chars().try_fold(0u64, |acc, c| match c {
        '0' => Some(acc << 1),
        '1' => Some(acc << 1 | 1),
        _ => None,
    })
}

/// Reads a determinant file.
pub fn load_sparse_state(text: &str, cutoff: f64, max_determinants: usize) -> Result<SparseState> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (header_no, header) =
        lines.next().ok_or_else(|| Error::Parse { line: 1, message: "empty determinant file".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let parse_header = |f: Option<&&str>| f.and_then(|v| v.parse::<usize>().ok());
    let (Some(n_qubits), Some(count), 2) = (parse_header(fields.first()), parse_header(fields.get(1)), fields.len())
    else {
        return Err(Error::Parse { line: header_no + 1, message: "expected header `nqubits K`".into() });
    };

    let mut entries = Vec::with_capacity(count);
    for (idx, line) in lines {
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(Error::Parse { line: line_no, message: "expected `bitstring re [im]`".into() });
        }
        if fields[0].len() != n_qubits {
            return Err(Error::Parse {
                line: line_no,
                message: format!("bitstring `{}` does not have {n_qubits} characters", fields[0]),
            });
        }
        let b = parse_bitstring(fields[0]).ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("`{}` is not a bitstring", fields[0]),
        })?;
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::Parse { line: line_no, message: format!("non-numeric coefficient `{s}`") })
        };
        let re = num(fields[1])?;
        let im = if fields.len() == 3 { num(fields[2])? } else { 0.0 };
        entries.push((b, Complex64::new(re, im)));
    }
    if entries.len() != count {
        return Err(Error::Parse {
            line: header_no + 1,
            message: format!("header announces {count} records, found {}", entries.len()),
        });
    }
    SparseState::from_entries(n_qubits, entries, cutoff, max_determinants)
}
