//! Reference implementations used as test oracles. Nothing here calls into
//! the library's kernels; matrices are built entry by entry or with Kronecker
//! products.
#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn fixture(name: &str) -> String {
    // resolves from either workspace crate
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

// ---- dense gates ---------------------------------------------------------

pub fn ry(t: f64) -> CMat {
    let (s, co) = (t / 2.0).sin_cos();
    CMat::from_row_slice(2, 2, &[c(co), c(-s), c(s), c(co)])
}

pub fn rz(t: f64) -> CMat {
    CMat::from_row_slice(
        2,
        2,
        &[Complex64::from_polar(1.0, -t / 2.0), c(0.0), c(0.0), Complex64::from_polar(1.0, t / 2.0)],
    )
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Full-register operator for a one-qubit matrix; qubit 0 is the least
/// significant index bit, so the Kronecker product runs from the top qubit.
pub fn embed_one(n: usize, q: usize, m: &CMat) -> CMat {
    let id = CMat::identity(2, 2);
    let mut out = CMat::identity(1, 1);
    for k in (0..n).rev() {
        out = kron(&out, if k == q { m } else { &id });
    }
    out
}

/// Full-register operator for a 4×4 matrix on the local basis
/// `(bit_a << 1) | bit_b`, defined entrywise.
pub fn embed_two(n: usize, a: usize, b: usize, m: &CMat) -> CMat {
    let dim = 1usize << n;
    let mask = (1 << a) | (1 << b);
    let local = |i: usize| ((i >> a & 1) << 1) | (i >> b & 1);
    CMat::from_fn(dim, dim, |r, col| if r & !mask == col & !mask { m[(local(r), local(col))] } else { c(0.0) })
}

pub fn cnot(n: usize, control: usize, target: usize) -> CMat {
    let dim = 1usize << n;
    CMat::from_fn(dim, dim, |r, col| {
        let image = if col >> control & 1 == 1 { col ^ (1 << target) } else { col };
        if r == image {
            c(1.0)
        } else {
            c(0.0)
        }
    })
}

/// `M†(A⊗B)M` with the magic basis assembled from its gate sequence.
pub fn so4(p: &[f64]) -> CMat {
    let zyz = |q: &[f64]| rz(q[0]) * ry(q[1]) * rz(q[2]);
    let s = rz(FRAC_PI_2);
    let id = CMat::identity(2, 2);
    // two-qubit register: local qubit 1 = first, local qubit 0 = second
    let cnot_second_controls_first = cnot(2, 0, 1);
    let m = cnot_second_controls_first * kron(&id, &ry(FRAC_PI_2)) * kron(&s, &s);
    m.adjoint() * kron(&zyz(&p[..3]), &zyz(&p[3..])) * m
}

pub fn basis_vector(n: usize, b: usize) -> DVector<Complex64> {
    let mut v = DVector::from_element(1 << n, c(0.0));
    v[b] = c(1.0);
    v
}

pub fn random_state(rng: &mut impl Rng, n: usize) -> DVector<Complex64> {
    let v = DVector::from_fn(1 << n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let norm = v.norm();
    v / c(norm)
}

// ---- fermions --------------------------------------------------------------

/// `a_p` on occupation-number states with the sign `(−1)^{#occupied below p}`.
pub fn annihilator(n: usize, p: usize) -> CMat {
    let dim = 1usize << n;
    let mut m = CMat::zeros(dim, dim);
    for col in 0..dim {
        if col >> p & 1 == 1 {
            let below = (col & ((1 << p) - 1)).count_ones();
            m[(col ^ (1 << p), col)] = c(if below.is_multiple_of(2) { 1.0 } else { -1.0 });
        }
    }
    m
}

pub fn creator(n: usize, p: usize) -> CMat {
    annihilator(n, p).adjoint()
}

/// Chemist-notation electronic Hamiltonian built from dense ladder matrices.
/// `h(i,j)` and `eri(i,j,k,l)` are spatial integrals; qubits hold the α block
/// then the β block.
pub fn dense_electronic_hamiltonian(
    n_spatial: usize,
    core: f64,
    h: impl Fn(usize, usize) -> f64,
    eri: impl Fn(usize, usize, usize, usize) -> f64,
) -> CMat {
    let n = 2 * n_spatial;
    let dim = 1usize << n;
    let cr: Vec<CMat> = (0..n).map(|p| creator(n, p)).collect();
    let an: Vec<CMat> = (0..n).map(|p| annihilator(n, p)).collect();
    let so = |i: usize, s: usize| i + s * n_spatial;
    let mut out = CMat::identity(dim, dim) * c(core);
    for s in 0..2 {
        for i in 0..n_spatial {
            for j in 0..n_spatial {
                out += &cr[so(i, s)] * &an[so(j, s)] * c(h(i, j));
            }
        }
    }
    for s in 0..2 {
        for t in 0..2 {
            for i in 0..n_spatial {
                for j in 0..n_spatial {
                    for k in 0..n_spatial {
                        for l in 0..n_spatial {
                            let v = eri(i, j, k, l);
                            if v != 0.0 {
                                out += &cr[so(i, s)] * &cr[so(k, t)] * &an[so(l, t)] * &an[so(j, s)] * c(0.5 * v);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Slater–Condon energy of a determinant given as occupied spin orbitals
/// (`(spatial, spin)` pairs).
pub fn slater_condon_energy(
    occupied: &[(usize, usize)],
    core: f64,
    h: impl Fn(usize, usize) -> f64,
    eri: impl Fn(usize, usize, usize, usize) -> f64,
) -> f64 {
    let mut e = core;
    for &(i, _) in occupied {
        e += h(i, i);
    }
    for (a, &(i, si)) in occupied.iter().enumerate() {
        for &(j, sj) in &occupied[a + 1..] {
            e += eri(i, i, j, j);
            if si == sj {
                e -= eri(i, j, j, i);
            }
        }
    }
    e
}

// ---- linear algebra --------------------------------------------------------

/// Cyclic Jacobi eigenvalues of a real symmetric matrix, ascending.
pub fn jacobi_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let mut m = a.clone();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| m[(i, j)].powi(2)).sum();
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * m[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                for k in 0..n {
                    let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = cs * mkp - sn * mkq;
                    m[(k, q)] = sn * mkp + cs * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = cs * mpk - sn * mqk;
                    m[(q, k)] = sn * mpk + cs * mqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Real part of a Hermitian matrix whose imaginary part must vanish.
pub fn real_part(m: &CMat, tol: f64) -> DMatrix<f64> {
    assert!(m.iter().all(|v| v.im.abs() < tol), "matrix is not real");
    m.map(|v| v.re)
}

// ---- reduced density matrices ---------------------------------------------

/// RDM of `qubits` (first = least significant local bit) by reordering the
/// amplitudes into a `2^k × 2^(n−k)` matrix `Ψ` and forming `ΨΨ†`.
pub fn reduced_density_matrix(psi: &[Complex64], n: usize, qubits: &[usize]) -> CMat {
    let k = qubits.len();
    let rest: Vec<usize> = (0..n).filter(|q| !qubits.contains(q)).collect();
    let mut big = CMat::zeros(1 << k, 1 << (n - k));
    for (idx, &amp) in psi.iter().enumerate() {
        let row: usize = qubits.iter().enumerate().map(|(j, &q)| (idx >> q & 1) << j).sum();
        let col: usize = rest.iter().enumerate().map(|(j, &q)| (idx >> q & 1) << j).sum();
        big[(row, col)] = amp;
    }
    &big * big.adjoint()
}

pub fn entropy(rho: &CMat) -> f64 {
    let ev = rho.clone().symmetric_eigen().eigenvalues;
    ev.iter().map(|&l| l.clamp(0.0, 1.0)).filter(|&l| l > 0.0).map(|l| -l * l.ln()).sum()
}

pub fn dense_qmi(psi: &[Complex64], n: usize) -> Vec<Vec<f64>> {
    let single: Vec<f64> = (0..n).map(|u| entropy(&reduced_density_matrix(psi, n, &[u]))).collect();
    let mut out = vec![vec![0.0; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            let i = single[u] + single[v] - entropy(&reduced_density_matrix(psi, n, &[u, v]));
            out[u][v] = i;
            out[v][u] = i;
        }
    }
    out
}

// ---- graphs ---------------------------------------------------------------

/// Merges endpoint labels edge by edge; `None` once an edge closes a cycle.
fn union_labels(n: usize, edges: impl Iterator<Item = (usize, usize)>, reject_cycles: bool) -> Option<Vec<usize>> {
    let mut label: Vec<usize> = (0..n).collect();
    for (u, v) in edges {
        let (a, b) = (label[u], label[v]);
        if a == b {
            if reject_cycles {
                return None;
            }
            continue;
        }
        for l in label.iter_mut() {
            if *l == b {
                *l = a;
            }
        }
    }
    Some(label)
}

/// Best total weight over every spanning forest, found by enumerating edge
/// subsets of size `n − #components` and keeping the acyclic ones.
pub fn brute_force_forest_weight(n: usize, edges: &[(usize, usize, f64)], maximize: bool) -> f64 {
    let mut labels = union_labels(n, edges.iter().map(|e| (e.0, e.1)), false).unwrap();
    labels.sort_unstable();
    labels.dedup();
    let target = n - labels.len();
    let mut best: Option<f64> = None;
    for mask in 0u32..(1 << edges.len()) {
        if mask.count_ones() as usize != target {
            continue;
        }
        let chosen = || edges.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, e)| e);
        if union_labels(n, chosen().map(|e| (e.0, e.1)), true).is_none() {
            continue;
        }
        let w: f64 = chosen().map(|e| e.2).sum();
        best = Some(match best {
            None => w,
            Some(b) if maximize => b.max(w),
            Some(b) => b.min(w),
        });
    }
    best.unwrap_or(0.0)
}

/// Central finite differences.
pub fn finite_difference(f: impl Fn(&[f64]) -> f64, x: &[f64], step: f64) -> Vec<f64> {
    (0..x.len())
        .map(|i| {
            let mut plus = x.to_vec();
            let mut minus = x.to_vec();
            plus[i] += step;
            minus[i] -= step;
            (f(&plus) - f(&minus)) / (2.0 * step)
        })
        .collect()
}
