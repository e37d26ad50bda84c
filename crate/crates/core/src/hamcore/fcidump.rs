//! FCIDUMP ingestion.
//!
//! Two-electron records are chemist-notation integrals `(ij|kl)` with
//! 1-based orbital indices. Records with `k = l = 0` are one-body integrals
//! and `0 0 0 0` is the core energy. Records of the form `i 0 0 0` (orbital
//! energies) are accepted and ignored.

use crate::error::{Error, Result};

/// Real-orbital integrals over `n_spatial_orbitals` spatial orbitals.
///
/// The two-electron tensor is stored in chemist notation, `eri(i,j,k,l) =
/// (ij|kl)`, densely with all eight permutational images populated.
#[derive(Debug, Clone, PartialEq)]
pub struct MolecularIntegrals {
    n_spatial_orbitals: usize,
    n_electrons: usize,
    spin_multiplicity: usize,
    core_energy: f64,
    h: Vec<f64>,
    g: Vec<f64>,
}

impl MolecularIntegrals {
    /// Empty (all-zero) integrals.
    pub fn new(n_spatial_orbitals: usize, n_electrons: usize, ms2: usize) -> Result<Self> {
        if n_spatial_orbitals == 0 {
            return Err(Error::Invalid("at least one orbital is required".into()));
        }
        if n_electrons == 0 || n_electrons > 2 * n_spatial_orbitals {
            return Err(Error::Invalid(format!(
                "{n_electrons} electrons do not fit in {n_spatial_orbitals} spatial orbitals"
            )));
        }
        if ms2 > n_electrons || !(n_electrons - ms2).is_multiple_of(2) {
            return Err(Error::Invalid(format!("MS2={ms2} is inconsistent with {n_electrons} electrons")));
        }
        let n = n_spatial_orbitals;
        Ok(Self {
            n_spatial_orbitals: n,
            n_electrons,
            spin_multiplicity: ms2 + 1,
            core_energy: 0.0,
            h: vec![0.0; n * n],
            g: vec![0.0; n * n * n * n],
        })
    }

    pub fn n_spatial_orbitals(&self) -> usize {
        self.n_spatial_orbitals
    }

    pub fn n_electrons(&self) -> usize {
        self.n_electrons
    }

    pub fn spin_multiplicity(&self) -> usize {
        self.spin_multiplicity
    }

    /// Number of α and β electrons implied by the multiplicity.
    pub fn electrons_by_spin(&self) -> (usize, usize) {
        let ms2 = self.spin_multiplicity - 1;
        ((self.n_electrons + ms2) / 2, (self.n_electrons - ms2) / 2)
    }

    pub fn core_energy(&self) -> f64 {
        self.core_energy
    }

    pub fn set_core_energy(&mut self, e: f64) {
        self.core_energy = e;
    }

    pub fn h(&self, i: usize, j: usize) -> f64 {
        self.h[i * self.n_spatial_orbitals + j]
    }

    /// Chemist-notation two-electron integral `(ij|kl)`.
    pub fn eri(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.g[self.eri_index(i, j, k, l)]
    }

    /// Sets `h_ij = h_ji = value`.
    pub fn set_h(&mut self, i: usize, j: usize, value: f64) {
        let n = self.n_spatial_orbitals;
        self.h[i * n + j] = value;
        self.h[j * n + i] = value;
    }

    /// Sets `(ij|kl)` and its seven symmetry images.
    pub fn set_eri(&mut self, i: usize, j: usize, k: usize, l: usize, value: f64) {
        for (a, b, c, d) in eri_images(i, j, k, l) {
            let idx = self.eri_index(a, b, c, d);
            self.g[idx] = value;
        }
    }

    fn eri_index(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        let n = self.n_spatial_orbitals;
        ((i * n + j) * n + k) * n + l
    }
}

/// The eight index permutations that leave a real chemist-notation integral unchanged.
pub fn eri_images(i: usize, j: usize, k: usize, l: usize) -> [(usize, usize, usize, usize); 8] {
    [
        (i, j, k, l),
        (j, i, k, l),
        (i, j, l, k),
        (j, i, l, k),
        (k, l, i, j),
        (l, k, i, j),
        (k, l, j, i),
        (l, k, j, i),
    ]
}

/// Parses FCIDUMP text.
pub fn parse_fcidump(text: &str) -> Result<MolecularIntegrals> {
    let lines: Vec<&str> = text.lines().collect();
    let (header, body_start) = read_header(&lines)?;

    let norb = header_value(&header, "NORB")
        .ok_or_else(|| Error::Parse { line: 1, message: "header is missing NORB".into() })?;
    let nelec = header_value(&header, "NELEC")
        .ok_or_else(|| Error::Parse { line: 1, message: "header is missing NELEC".into() })?;
    let ms2 = header_value(&header, "MS2").unwrap_or(0);
    let mut ints = MolecularIntegrals::new(norb, nelec, ms2)
        .map_err(|e| Error::Parse { line: 1, message: e.to_string() })?;

    for (offset, raw) in lines[body_start..].iter().enumerate() {
        let line_no = body_start + offset + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 5 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `value i j k l`, found {} fields", fields.len()),
            });
        }
        let value = parse_real(fields[0]).ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("non-numeric value `{}`", fields[0]),
        })?;
        let mut idx = [0usize; 4];
        for (slot, field) in idx.iter_mut().zip(&fields[1..]) {
            *slot = field.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("non-integer index `{field}`"),
            })?;
            if *slot > norb {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("index {slot} exceeds NORB={norb}"),
                });
            }
        }
        match idx {
            [0, 0, 0, 0] => ints.set_core_energy(value),
            [i, j, 0, 0] if i > 0 && j > 0 => ints.set_h(i - 1, j - 1, value),
            [_, 0, 0, 0] => {}
            [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => {
                ints.set_eri(i - 1, j - 1, k - 1, l - 1, value)
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("unsupported index pattern {idx:?}"),
                })
            }
        }
    }
    Ok(ints)
}

/// Collects the namelist text between the opening `&` and `&END` (or `/`).
fn read_header(lines: &[&str]) -> Result<(String, usize)> {
    let first = lines
        .iter()
        .position(|l| !l.trim().is_empty())
        .ok_or_else(|| Error::Parse { line: 1, message: "empty input".into() })?;
    let opening = lines[first].trim_start();
    if !opening.starts_with('&') {
        return Err(Error::Parse {
            line: first + 1,
            message: "expected a namelist header starting with `&FCI`".into(),
        });
    }
    let mut header = String::new();
    for (i, line) in lines.iter().enumerate().skip(first) {
        let mut text = line.trim();
        if i == first {
            // drop the group name (`&FCI` / `&FCIDUMP`)
            text = text[1..].trim_start_matches(|c: char| c.is_ascii_alphabetic());
        }
        let upper = text.to_ascii_uppercase();
        let end = upper.find("&END").or_else(|| upper.find('/'));
        match end {
            Some(pos) => {
                header.push_str(&text[..pos]);
                return Ok((header, i + 1));
            }
            None => {
                header.push_str(text);
                header.push(',');
            }
        }
    }
    Err(Error::Parse { line: lines.len(), message: "header is not terminated by &END".into() })
}

fn header_value(header: &str, key: &str) -> Option<usize> {
    let upper = header.to_ascii_uppercase();
    let tokens: Vec<&str> =
        upper.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).collect();
    for (i, tok) in tokens.iter().enumerate() {
        let Some((name, rest)) = tok.split_once('=') else { continue };
        if name != key {
            continue;
        }
        let value = if rest.is_empty() { tokens.get(i + 1).copied()? } else { rest };
        return value.parse().ok();
    }
    None
}

/// Accepts Fortran `D` exponents as well as the usual `E`.
fn parse_real(s: &str) -> Option<f64> {
    s.replace(['D', 'd'], "E").parse().ok()
}
