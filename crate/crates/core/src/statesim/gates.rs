//! Gate matrices and the SO(4) correlator.
//!
//! Two-qubit matrices act on the local basis `(bit_first << 1) | bit_second`,
//! i.e. the first qubit of the pair is the more significant local bit.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use num_complex::Complex64;

pub type Mat2 = [[Complex64; 2]; 2];
pub type Mat4 = [[Complex64; 4]; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn ry(theta: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [[c.into(), (-s).into()], [s.into(), c.into()]]
}

pub fn rz(theta: f64) -> Mat2 {
    let e = Complex64::from_polar(1.0, theta / 2.0);
    [[e.conj(), ZERO], [ZERO, e]]
}

/// `d Ry(θ)/dθ`.
pub fn ry_derivative(theta: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [[(-0.5 * s).into(), (-0.5 * c).into()], [(0.5 * c).into(), (-0.5 * s).into()]]
}

/// `d Rz(θ)/dθ`.
pub fn rz_derivative(theta: f64) -> Mat2 {
    let e = Complex64::from_polar(1.0, theta / 2.0);
    let half_i = Complex64::new(0.0, 0.5);
    [[-half_i * e.conj(), ZERO], [ZERO, half_i * e]]
}

pub fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mul4(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[i >> 1][j >> 1] * b[i & 1][j & 1];
        }
    }
    out
}

pub fn dagger2(a: &Mat2) -> Mat2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

pub fn dagger4(a: &Mat4) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

fn identity2() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

/// CNOT with the second qubit of the pair as control and the first as target.
fn cnot_second_controls_first() -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    m[0][0] = ONE; // |00> -> |00>
    m[3][1] = ONE; // |01> -> |11>
    m[2][2] = ONE; // |10> -> |10>
    m[1][3] = ONE; // |11> -> |01>
    m
}

/// Magic-basis change: `S ⊗ S`, then `R` on the second qubit, then one CNOT,
/// with `S = Rz(π/2)` and `R = Ry(π/2)`.
pub fn magic_basis() -> &'static Mat4 {
    static MAGIC: OnceLock<Mat4> = OnceLock::new();
    MAGIC.get_or_init(|| {
        let s = rz(FRAC_PI_2);
        let phase = kron2(&s, &s);
        let rot = kron2(&identity2(), &ry(FRAC_PI_2));
        mul4(&cnot_second_controls_first(), &mul4(&rot, &phase))
    })
}

/// `Rz(a)·Ry(b)·Rz(c)`.
pub fn zyz(p: &[f64]) -> Mat2 {
    mul2(&rz(p[0]), &mul2(&ry(p[1]), &rz(p[2])))
}

/// Derivatives of [`zyz`] with respect to its three angles.
fn zyz_derivatives(p: &[f64]) -> [Mat2; 3] {
    let (z0, y, z1) = (rz(p[0]), ry(p[1]), rz(p[2]));
    [
        mul2(&rz_derivative(p[0]), &mul2(&y, &z1)),
        mul2(&z0, &mul2(&ry_derivative(p[1]), &z1)),
        mul2(&z0, &mul2(&y, &rz_derivative(p[2]))),
    ]
}

fn conjugate_by_magic(inner: &Mat4) -> Mat4 {
    let m = magic_basis();
    mul4(&dagger4(m), &mul4(inner, m))
}

/// The SO(4) correlator `M†·(A⊗B)·M` with `A = Rz(p₀)Ry(p₁)Rz(p₂)` on the
/// first qubit and `B = Rz(p₃)Ry(p₄)Rz(p₅)` on the second.
///
/// The image is a real orthogonal matrix with unit determinant; all-zero
/// parameters give the identity.
pub fn so4_unitary(params: &[f64; 6]) -> Mat4 {
    conjugate_by_magic(&kron2(&zyz(&params[..3]), &zyz(&params[3..])))
}

/// `∂U/∂p_k` for the six SO(4) parameters.
pub fn so4_derivatives(params: &[f64; 6]) -> [Mat4; 6] {
    let a = zyz(&params[..3]);
    let b = zyz(&params[3..]);
    let da = zyz_derivatives(&params[..3]);
    let db = zyz_derivatives(&params[3..]);
    [
        conjugate_by_magic(&kron2(&da[0], &b)),
        conjugate_by_magic(&kron2(&da[1], &b)),
        conjugate_by_magic(&kron2(&da[2], &b)),
        conjugate_by_magic(&kron2(&a, &db[0])),
        conjugate_by_magic(&kron2(&a, &db[1])),
        conjugate_by_magic(&kron2(&a, &db[2])),
    ]
}

/// Divides by the phase of the largest-magnitude entry (first on ties).
pub fn remove_global_phase(m: &Mat4) -> Mat4 {
    let mut best = m[0][0];
    for row in m {
        for &v in row {
            if v.norm() > best.norm() {
                best = v;
            }
        }
    }
    let phase = if best.norm() > 0.0 { best / best.norm() } else { ONE };
    let mut out = *m;
    out.iter_mut().flatten().for_each(|v| *v /= phase);
    out
}
