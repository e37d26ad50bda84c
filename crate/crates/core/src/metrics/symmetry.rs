use num_complex::Complex64;

use crate::error::Result;
use crate::hamcore::{spin_orbital, LadderTable, PauliAccumulator, PauliSum};

/// Spin projection, total spin and particle number on `2·n_spatial` qubits
/// (α block first).
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryOperators {
    pub sz: PauliSum,
    pub s2: PauliSum,
    pub ne: PauliSum,
}

/// `Ŝz = ½(N̂α − N̂β)`, `Ŝ² = Ŝ₋Ŝ₊ + Ŝz(Ŝz + 1)`, `N̂e = Σ a†a`.
pub fn symmetry_operators(n_spatial: usize) -> Result<SymmetryOperators> {
    let n = 2 * n_spatial;
    let table = LadderTable::new(n);
    let alpha = |i| spin_orbital(i, false, n_spatial);
    let beta = |i| spin_orbital(i, true, n_spatial);
    let half = Complex64::new(0.5, 0.0);
    let one = Complex64::new(1.0, 0.0);

    let mut sz = PauliAccumulator::new(n);
    let mut ne = PauliAccumulator::new(n);
    let mut raise = PauliAccumulator::new(n);
    let mut lower = PauliAccumulator::new(n);
    for i in 0..n_spatial {
        let (na, nb) = (table.excitation(alpha(i), alpha(i)), table.excitation(beta(i), beta(i)));
        sz.add_sum(&na, half)?;
        sz.add_sum(&nb, -half)?;
        ne.add_sum(&na, one)?;
        ne.add_sum(&nb, one)?;
        raise.add_sum(&table.excitation(alpha(i), beta(i)), one)?;
        lower.add_sum(&table.excitation(beta(i), alpha(i)), one)?;
    }
    let (sz, ne) = (sz.finish(), ne.finish());
    let (raise, lower) = (raise.finish(), lower.finish());

    let mut s2 = PauliAccumulator::new(n);
    s2.add_product(&lower, &raise, one)?;
    s2.add_product(&sz, &sz, one)?;
    s2.add_sum(&sz, one)?;
    let s2 = s2.finish();
    Ok(SymmetryOperators { sz, s2, ne })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statesim::{expectation, StateVector};

    fn expect(op: &PauliSum, b: u64) -> f64 {
        expectation(&StateVector::basis(op.n_qubits(), b).unwrap(), op).unwrap()
    }

    #[test]
    fn closed_shell_singlet() {
        let ops = symmetry_operators(2).unwrap();
        assert_eq!(expect(&ops.sz, 0b0101), 0.0);
        assert!(expect(&ops.s2, 0b0101).abs() < 1e-14);
        assert!((expect(&ops.ne, 0b0101) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn single_alpha_doublet() {
        let ops = symmetry_operators(1).unwrap();
        assert!((expect(&ops.sz, 0b01) - 0.5).abs() < 1e-14);
        assert!((expect(&ops.s2, 0b01) - 0.75).abs() < 1e-14);
    }

    #[test]
    fn triplet_component() {
        let ops = symmetry_operators(2).unwrap();
        // both electrons α in different orbitals: S = 1, Sz = 1
        assert!((expect(&ops.s2, 0b0011) - 2.0).abs() < 1e-14);
        assert!((expect(&ops.sz, 0b0011) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hermitian() {
        let ops = symmetry_operators(3).unwrap();
        for op in [&ops.sz, &ops.s2, &ops.ne] {
            assert!(op.is_hermitian(1e-12));
        }
    }
}
