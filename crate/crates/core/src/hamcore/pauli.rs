//! Pauli strings and weighted sums of them.
//!
//! A string is stored in symplectic form: bit `q` of `x` and `z` encodes the
//! letter on qubit `q` as I=(0,0), X=(1,0), Z=(0,1), Y=(1,1). The letter Y is
//! the genuine Pauli Y, not the product XZ, so multiplication carries an
//! explicit phase table.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients whose magnitude falls below this are dropped on simplification.
pub const PRUNE_TOLERANCE: f64 = 1e-14;

/// Largest register a [`PauliString`] can describe.
pub const MAX_QUBITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Powers of `i` indexed modulo 4.
const I_POW: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

pub(crate) fn i_pow(k: u32) -> Complex64 {
    I_POW[(k % 4) as usize]
}

/// A tensor product of single-qubit Pauli operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        assert!(n_qubits <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        Self { n_qubits, x: 0, z: 0 }
    }

    /// Builds a string from raw masks. Bits above `n_qubits` must be clear.
    pub fn from_masks(n_qubits: usize, x: u64, z: u64) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::TooLarge(n_qubits));
        }
        let valid = if n_qubits == 64 { u64::MAX } else { (1u64 << n_qubits) - 1 };
        if (x | z) & !valid != 0 {
            return Err(Error::Invalid(format!(
                "masks {x:#x}/{z:#x} exceed {n_qubits} qubits"
            )));
        }
        Ok(Self { n_qubits, x, z })
    }

    /// Builds a string from `(qubit, letter)` pairs; unlisted qubits are I.
    pub fn from_letters(n_qubits: usize, letters: &[(usize, Pauli)]) -> Result<Self> {
        let mut s = Self::identity(n_qubits);
        for &(q, p) in letters {
            if q >= n_qubits {
                return Err(Error::IndexOutOfRange { index: q, len: n_qubits });
            }
            s.set(q, p);
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Number of Y letters.
    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (xb, zb) = p.bits();
        let bit = 1u64 << q;
        self.x = if xb { self.x | bit } else { self.x & !bit };
        self.z = if zb { self.z | bit } else { self.z & !bit };
    }

    /// Letters ordered by qubit index.
    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.n_qubits).map(|q| self.get(q)).collect()
    }

    /// Product `self · other`, returned as a phase exponent `k` (phase `i^k`)
    /// together with the resulting string.
    pub fn multiply(&self, other: &PauliString) -> Result<(u32, PauliString)> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        let mut k = 0u32;
        let mut overlap = (self.x | self.z) & (other.x | other.z);
        while overlap != 0 {
            let q = overlap.trailing_zeros() as usize;
            overlap &= overlap - 1;
            k += single_phase(self.get(q), other.get(q));
        }
        let product = PauliString { n_qubits: self.n_qubits, x: self.x ^ other.x, z: self.z ^ other.z };
        Ok((k % 4, product))
    }

    /// True when the two strings commute.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// Action on a computational basis state: `P|b⟩ = phase · |b ^ x⟩`.
    pub fn apply_to_basis(&self, b: u64) -> (Complex64, u64) {
        let sign = if (b & self.z).count_ones() % 2 == 1 { 2 } else { 0 };
        (i_pow(self.y_count() + sign), b ^ self.x)
    }
}

/// Phase exponent of `a · b` for single-qubit letters.
fn single_phase(a: Pauli, b: Pauli) -> u32 {
    use Pauli::*;
    match (a, b) {
        (X, Y) | (Y, Z) | (Z, X) => 1,
        (Y, X) | (Z, Y) | (X, Z) => 3,
        _ => 0,
    }
}

impl fmt::Display for PauliString {
    /// Highest qubit first, matching the bitstring convention of the file formats.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in (0..self.n_qubits).rev() {
            write!(f, "{}", self.get(q).symbol())?;
        }
        Ok(())
    }
}

/// A weighted sum of Pauli strings on a fixed register.
///
/// Every constructor and arithmetic operation returns a simplified sum: no
/// duplicated strings, no coefficient below [`PRUNE_TOLERANCE`], terms in a
/// canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<(Complex64, PauliString)>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        Self { n_qubits, terms: Vec::new() }
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self::term(Complex64::new(1.0, 0.0), PauliString::identity(n_qubits))
    }

    pub fn term(coeff: Complex64, string: PauliString) -> Self {
        Self::from_terms(string.n_qubits(), vec![(coeff, string)]).expect("single term")
    }

    pub fn from_terms(n_qubits: usize, terms: Vec<(Complex64, PauliString)>) -> Result<Self> {
        let mut acc = PauliAccumulator::new(n_qubits);
        for (c, s) in terms {
            acc.add(c, s)?;
        }
        Ok(acc.finish())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(Complex64, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, s: &PauliString) -> Complex64 {
        self.terms
            .binary_search_by(|(_, t)| t.cmp(s))
            .map(|i| self.terms[i].0)
            .unwrap_or_default()
    }

    /// Re-merges and prunes the terms. Sums built through the public API are
    /// already simple; this is exposed for callers that want the canonical
    /// form of an arbitrary term list.
    pub fn simplify(&self) -> PauliSum {
        Self::from_terms(self.n_qubits, self.terms.clone()).expect("terms share width")
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_width(other)?;
        let mut acc = PauliAccumulator::new(self.n_qubits);
        for &(c, s) in self.terms.iter().chain(other.terms.iter()) {
            acc.add(c, s)?;
        }
        Ok(acc.finish())
    }

    pub fn sub(&self, other: &PauliSum) -> Result<PauliSum> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> PauliSum {
        let terms = self.terms.iter().map(|&(c, s)| (c * factor, s)).collect();
        Self::from_terms(self.n_qubits, terms).expect("terms share width")
    }

    pub fn multiply(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_width(other)?;
        let mut acc = PauliAccumulator::new(self.n_qubits);
        acc.add_product(self, other, Complex64::new(1.0, 0.0))?;
        Ok(acc.finish())
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &PauliSum) -> Result<PauliSum> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    /// `self·other + other·self`.
    pub fn anticommutator(&self, other: &PauliSum) -> Result<PauliSum> {
        self.multiply(other)?.add(&other.multiply(self)?)
    }

    /// Hermitian conjugate: every Pauli string is self-adjoint, so only the
    /// coefficients are conjugated.
    pub fn adjoint(&self) -> PauliSum {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|&(c, s)| (c.conj(), s)).collect(),
        }
    }

    /// Largest imaginary part among the coefficients.
    pub fn max_imaginary(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_imaginary() <= tol
    }

    /// True when every coefficient is within `tol` of zero.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.terms.iter().all(|(c, _)| c.norm() <= tol)
    }

    /// Dense `2^n × 2^n` matrix in row-major order. Intended for small
    /// registers (tests, exact diagonalization).
    pub fn to_dense(&self) -> Vec<Complex64> {
        let dim = 1usize << self.n_qubits;
        let mut m = vec![Complex64::default(); dim * dim];
        for &(c, s) in &self.terms {
            for b in 0..dim as u64 {
                let (phase, row) = s.apply_to_basis(b);
                m[row as usize * dim + b as usize] += c * phase;
            }
        }
        m
    }

    fn check_width(&self, other: &PauliSum) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::QubitMismatch { left: self.n_qubits, right: other.n_qubits });
        }
        Ok(())
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, s)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:+.12}{:+.12}i) {}", c.re, c.im, s)?;
        }
        Ok(())
    }
}

/// Hash-map backed builder for large sums (Hamiltonian construction).
#[derive(Debug, Clone)]
pub struct PauliAccumulator {
    n_qubits: usize,
    terms: HashMap<PauliString, Complex64>,
}

impl PauliAccumulator {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, terms: HashMap::new() }
    }

    pub fn add(&mut self, coeff: Complex64, string: PauliString) -> Result<()> {
        if string.n_qubits() != self.n_qubits {
            return Err(Error::QubitMismatch { left: self.n_qubits, right: string.n_qubits() });
        }
        *self.terms.entry(string).or_default() += coeff;
        Ok(())
    }

    pub fn add_sum(&mut self, sum: &PauliSum, factor: Complex64) -> Result<()> {
        for &(c, s) in sum.terms() {
            self.add(c * factor, s)?;
        }
        Ok(())
    }

    /// Adds `factor · a · b`.
    pub fn add_product(&mut self, a: &PauliSum, b: &PauliSum, factor: Complex64) -> Result<()> {
        for &(ca, sa) in a.terms() {
            for &(cb, sb) in b.terms() {
                let (k, s) = sa.multiply(&sb)?;
                self.add(factor * ca * cb * i_pow(k), s)?;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> PauliSum {
        let mut terms: Vec<(Complex64, PauliString)> = self
            .terms
            .into_iter()
            .filter(|(_, c)| c.norm() >= PRUNE_TOLERANCE)
            .map(|(s, c)| (c, s))
            .collect();
        terms.sort_by_key(|t| t.1);
        PauliSum { n_qubits: self.n_qubits, terms }
    }
}
