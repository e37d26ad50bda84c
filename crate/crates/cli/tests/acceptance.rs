//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::f64::consts::{FRAC_1_SQRT_2, LN_2, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use multiqida::hamcore::*;
use multiqida::metrics::{correlation_energy_pct, mced, symmetry_operators};
use multiqida::qmi::{qmi_matrix, QmiMatrix, SparseState, DEFAULT_CUTOFF};
use multiqida::statesim::*;
use multiqida::topology::*;
use multiqida::vqe::{energy, gradient, incremental_vqe, IncrementalResult, LayeredAnsatz, VqeConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

// ---- 1 --------------------------------------------------------------------

fn cnot_arithmetic() -> Check {
    for (n, d, expected) in [(12, 5, 55), (12, 6, 66), (14, 5, 65), (8, 5, 35)] {
        let got = cnot_count(&hea_ladder_plan(n, d).unwrap());
        ensure(got == expected, || format!("HEA ({n}, {d}) gives {got}, expected {expected}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for trial in 0..200 {
        let n = rng.gen_range(2..=14);
        let mut q = QmiMatrix::zeros(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.6) {
                    q.set(u, v, rng.gen_range(0.0..1.4));
                }
            }
        }
        let ratios = [0.8, 0.4, 0.2, 0.05];
        let max = build_layers(&q, &ratios, SelectionCriterion::MaxCorrelation).unwrap();
        let emp = build_layers(&q, &ratios, SelectionCriterion::DistanceReduction).unwrap();
        ensure(cnot_count(&max) == cnot_count(&emp), || format!("trial {trial}: max/emp CNOT counts differ"))?;
    }
    Ok(())
}

// ---- 2 --------------------------------------------------------------------

fn jordan_wigner() -> Check {
    for n in 1..=6 {
        let cr: Vec<PauliSum> = (0..n).map(|q| jw_ladder(q, LadderKind::Creation, n).unwrap()).collect();
        let an: Vec<PauliSum> = (0..n).map(|q| jw_ladder(q, LadderKind::Annihilation, n).unwrap()).collect();
        for i in 0..n {
            for j in 0..n {
                let delta = if i == j { PauliSum::identity(n) } else { PauliSum::zero(n) };
                let mixed = an[i].anticommutator(&cr[j]).unwrap().sub(&delta).unwrap();
                ensure(mixed.is_zero(1e-12), || format!("{{a_{i}, a†_{j}}} ≠ δ on {n} qubits"))?;
                ensure(an[i].anticommutator(&an[j]).unwrap().is_zero(1e-12), || format!("{{a_{i}, a_{j}}} ≠ 0"))?;
                ensure(cr[i].anticommutator(&cr[j]).unwrap().is_zero(1e-12), || format!("{{a†_{i}, a†_{j}}} ≠ 0"))?;
            }
        }
    }
    Ok(())
}

// ---- 3 --------------------------------------------------------------------

fn random_circuit(rng: &mut ChaCha8Rng, n: usize) -> (Circuit, Vec<f64>, common::CMat) {
    let mut circuit = Circuit::new(n, 0).unwrap();
    let mut params = Vec::new();
    let mut unitary = common::CMat::identity(1 << n, 1 << n);
    for _ in 0..12 {
        let kind = if n == 1 { rng.gen_range(0..2) } else { rng.gen_range(0..4) };
        let q = rng.gen_range(0..n);
        let other = (q + rng.gen_range(1..n.max(2))) % n;
        let slot = params.len();
        let gate = match kind {
            0 => {
                params.push(rng.gen_range(-7.0..7.0));
                circuit.push(GateOp::Ry { qubit: q, slot }).unwrap();
                common::embed_one(n, q, &common::ry(params[slot]))
            }
            1 => {
                params.push(rng.gen_range(-7.0..7.0));
                circuit.push(GateOp::Rz { qubit: q, slot }).unwrap();
                common::embed_one(n, q, &common::rz(params[slot]))
            }
            2 => {
                circuit.push(GateOp::Cnot { control: q, target: other }).unwrap();
                common::cnot(n, q, other)
            }
            _ => {
                let p: Vec<f64> = (0..6).map(|_| rng.gen_range(-7.0..7.0)).collect();
                params.extend_from_slice(&p);
                circuit.push(GateOp::so4(q, other, slot)).unwrap();
                common::embed_two(n, q, other, &common::so4(&p))
            }
        };
        unitary = gate * unitary;
    }
    (circuit, params, unitary)
}

fn simulator() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for trial in 0..200 {
        let n = 1 + trial % 4;
        let (circuit, params, unitary) = random_circuit(&mut rng, n);
        let input = common::random_state(&mut rng, n);
        let mut state = StateVector::from_amplitudes(input.iter().copied().collect()).unwrap();
        circuit.apply_to(&mut state, &params).unwrap();
        let expected = &unitary * &input;
        let diff = state.amplitudes().iter().zip(expected.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        ensure(diff < 1e-12, || format!("circuit {trial} deviates by {diff:e}"))?;
    }
    for sample in 0..1000 {
        let p: [f64; 6] = std::array::from_fn(|_| rng.gen_range(0.0..TAU));
        let u = so4_unitary(&p);
        let m = nalgebra::DMatrix::<f64>::from_fn(4, 4, |r, c| u[r][c].re);
        let imag = u.iter().flatten().map(|v| v.im.abs()).fold(0.0, f64::max);
        let gram = (m.transpose() * &m - nalgebra::DMatrix::<f64>::identity(4, 4)).amax();
        let det = m.determinant();
        ensure(imag < 1e-10 && gram < 1e-10 && (det - 1.0).abs() < 1e-10, || {
            format!("sample {sample}: imag {imag:e}, gram {gram:e}, det {det}")
        })?;
    }
    Ok(())
}

// ---- 4 --------------------------------------------------------------------

fn qmi_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for trial in 0..100 {
        let n = 5 + trial % 4;
        let k = rng.gen_range(1..40);
        let entries: Vec<(u64, Complex64)> = (0..k)
            .map(|_| (rng.gen_range(0..1u64 << n), Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
            .collect();
        let state = SparseState::from_entries(n, entries, 0.0, usize::MAX).unwrap();
        let mut dense = vec![Complex64::default(); 1 << n];
        for (b, a) in state.entries() {
            dense[b as usize] = a;
        }
        let q = qmi_matrix(&state).unwrap();
        let oracle = common::dense_qmi(&dense, n);
        for u in 0..n {
            for v in 0..n {
                let diff = (q.get(u, v) - oracle[u][v].max(0.0)).abs();
                ensure(diff < 1e-10, || format!("state {trial} pair ({u},{v}) deviates by {diff:e}"))?;
            }
        }
    }
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let bell = SparseState::from_entries(4, [(0b0000, h), (0b0110, h)], DEFAULT_CUTOFF, 10).unwrap();
    let q = qmi_matrix(&bell).unwrap();
    for u in 0..4 {
        for v in u + 1..4 {
            let value = q.get(u, v);
            if (u, v) == (1, 2) {
                ensure((value - 2.0 * LN_2).abs() <= 1e-12, || format!("Bell pair gives {value}"))?;
            } else {
                ensure(value < 1e-12, || format!("pair ({u},{v}) gives {value:e}"))?;
            }
        }
    }
    Ok(())
}

// ---- 5 --------------------------------------------------------------------

fn spanning_forests() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for trial in 0..500 {
        let n = rng.gen_range(2..=6);
        let mut pairs: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        for u in 0..n {
            for v in u + 1..n {
                if !pairs.contains(&(u, v)) && rng.gen_bool(0.5) {
                    pairs.push((u, v));
                }
            }
        }
        // dyadic weights keep every sum exact and make ties frequent
        let edges: Vec<(usize, usize, f64)> = pairs.iter().map(|&(u, v)| (u, v, rng.gen_range(0..16) as f64 / 8.0)).collect();
        let mut g = WeightedGraph::new(n);
        for &(u, v, w) in &edges {
            g.add_edge(u, v, w).unwrap();
        }
        for (objective, maximize) in [(Objective::Maximize, true), (Objective::Minimize, false)] {
            let forest = spanning_forest(&g, objective);
            let weight: f64 = forest.iter().map(|e| e.weight).sum();
            let best = common::brute_force_forest_weight(n, &edges, maximize);
            ensure(forest.len() == n - 1, || format!("trial {trial}: {} edges on {n} vertices", forest.len()))?;
            ensure(weight == best, || format!("trial {trial} ({objective:?}): {weight} vs {best}"))?;
        }
    }
    Ok(())
}

// ---- 6 --------------------------------------------------------------------

fn gradients() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for trial in 0..50 {
        let n = 2 + trial % 5;
        let maps: Vec<EntanglerMap> = (0..1 + trial % 3)
            .map(|_| {
                let pairs = (0..rng.gen_range(1..n))
                    .map(|_| {
                        let u = rng.gen_range(0..n);
                        (u, (u + rng.gen_range(1..n)) % n)
                    })
                    .collect();
                EntanglerMap::new(pairs).unwrap()
            })
            .collect();
        let circuit = LayeredAnsatz::from_layers(n, rng.gen_range(0..1 << n), &maps).unwrap().circuit().unwrap();
        let h = heisenberg_hamiltonian(n, rng.gen_range(0.5..1.5), LatticeTopology::Ring).unwrap();
        let p: Vec<f64> = (0..circuit.n_parameters()).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let analytic = gradient(&circuit, &p, &h).unwrap();
        let fd = common::finite_difference(|x| energy(&circuit, x, &h).unwrap(), &p, 1e-5);
        let diff = analytic.iter().zip(&fd).map(|(a, f)| (a - f).abs()).fold(0.0, f64::max);
        ensure(diff < 1e-6, || format!("circuit {trial}: max deviation {diff:e}"))?;
    }
    Ok(())
}

// ---- 7, 8, 9 --------------------------------------------------------------

struct Fixture {
    plan: LayerPlan,
    reference_bitstring: u64,
    exact_energy: f64,
    reference_energy: f64,
    runs: Vec<IncrementalResult>,
}

impl Fixture {
    fn solve(hamiltonian: PauliSum, reference_bitstring: u64, ratios: &[f64], n_seeds: u64) -> Self {
        let (exact_energy, psi) = exact_ground_state(&hamiltonian).unwrap();
        let plan = build_layers(&qmi_matrix(&psi).unwrap(), ratios, SelectionCriterion::MaxCorrelation).unwrap();
        let reference = StateVector::basis(hamiltonian.n_qubits(), reference_bitstring).unwrap();
        let reference_energy = expectation(&reference, &hamiltonian).unwrap();
        let config = VqeConfig { gradient_tolerance: 1e-7, ..VqeConfig::default() };
        let runs = (0..n_seeds)
            .map(|seed| incremental_vqe(&plan, &hamiltonian, reference_bitstring, &config.with_seed(seed)).unwrap())
            .collect();
        Self { plan, reference_bitstring, exact_energy, reference_energy, runs }
    }
}

fn h2_hamiltonian() -> (PauliSum, u64) {
    let mo = parse_fcidump(&common::fixture("h2_sto3g.fcidump")).unwrap();
    (build_qubit_hamiltonian(&mo).unwrap(), hartree_fock_bitstring(&mo))
}

fn h2_fixture() -> &'static Fixture {
    static CELL: OnceLock<Fixture> = OnceLock::new();
    CELL.get_or_init(|| {
        let (h, hf) = h2_hamiltonian();
        Fixture::solve(h, hf, &[0.05], 20)
    })
}

fn heisenberg_fixture() -> &'static Fixture {
    static CELL: OnceLock<Fixture> = OnceLock::new();
    CELL.get_or_init(|| {
        let h = heisenberg_hamiltonian(4, 1.0, LatticeTopology::Ring).unwrap();
        Fixture::solve(h, neel_bitstring(4), &[0.5, 0.3, 0.1], 50)
    })
}

fn ground_state_recovery() -> Check {
    let h2 = h2_fixture();
    let best = h2.runs.iter().map(|r| r.result.final_energy).fold(f64::INFINITY, f64::min);
    ensure((best - h2.exact_energy).abs() <= 1e-6, || format!("H2 best {best} vs exact {}", h2.exact_energy))?;

    let ring = heisenberg_fixture();
    let reached = ring
        .runs
        .iter()
        .filter(|r| correlation_energy_pct(r.result.final_energy, ring.reference_energy, ring.exact_energy).unwrap() >= 99.0)
        .count();
    ensure(reached * 10 >= ring.runs.len() * 9, || format!("Heisenberg: {reached}/{} runs reach 99 %", ring.runs.len()))
}

fn monotonicity() -> Check {
    for (name, fixture) in [("H2", h2_fixture()), ("Heisenberg", heisenberg_fixture())] {
        for (seed, run) in fixture.runs.iter().enumerate() {
            for w in run.history.windows(2) {
                ensure(w[1].relaxed_energy <= w[0].relaxed_energy + 1e-9, || {
                    format!(
                        "{name} seed {seed}: layer {} relaxed to {} after {}",
                        w[1].layer, w[1].relaxed_energy, w[0].relaxed_energy
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn symmetry_metrics() -> Check {
    let (h, _) = h2_hamiltonian();
    let ops = symmetry_operators(2).unwrap();
    let (_, psi) = exact_ground_state(&h).unwrap();
    let (sz, s2, ne) =
        (expectation(&psi, &ops.sz).unwrap(), expectation(&psi, &ops.s2).unwrap(), expectation(&psi, &ops.ne).unwrap());
    ensure(sz.abs() <= 1e-10 && s2.abs() <= 1e-10 && (ne - 2.0).abs() <= 1e-10, || {
        format!("exact ground state: Sz {sz:e}, S² {s2:e}, Ne {ne}")
    })?;

    let fixture = h2_fixture();
    let best = fixture
        .runs
        .iter()
        .filter(|r| r.result.converged)
        .min_by(|a, b| a.result.final_energy.total_cmp(&b.result.final_energy))
        .ok_or("no converged H2 run")?;
    let circuit = LayeredAnsatz::from_plan(&fixture.plan, fixture.reference_bitstring).unwrap().circuit().unwrap();
    let state = apply_circuit(&circuit, &best.result.final_params).unwrap();
    let (s2, ne) = (expectation(&state, &ops.s2).unwrap(), expectation(&state, &ops.ne).unwrap());
    ensure(s2 <= 1e-3 && (ne - 2.0).abs() <= 1e-3, || format!("best run: S² {s2:e}, Ne {ne}"))
}

// ---- 10 -------------------------------------------------------------------

fn run_binary(config: &Path, out: &Path) -> Check {
    let output = Command::new(env!("CARGO_BIN_EXE_multiqida"))
        .arg("run")
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(output.status.success(), || String::from_utf8_lossy(&output.stderr).into_owned())
}

fn metric_formulas() -> Check {
    let m = mced(&[100.0, 90.0, 80.0]).unwrap();
    ensure(m == 10.0, || format!("MCED of {{100, 90, 80}} is {m}"))?;
    let eps = correlation_energy_pct(-75.9, -76.0, -76.2).unwrap();
    ensure(eps < 0.0, || format!("energy above reference gives ε = {eps}"))?;

    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let fcidump = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/h2_sto3g.fcidump");
    let config = dir.path().join("exp.toml");
    let text = format!(
        "seed = 5\nn_runs = 4\nfinesse_ratios = [0.05]\nqmi = \"exact\"\n[hamiltonian.fcidump]\npath = {:?}\n",
        fcidump.to_str().unwrap()
    );
    std::fs::write(&config, text).map_err(|e| e.to_string())?;
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    run_binary(&config, &a)?;
    run_binary(&config, &b)?;
    let mut names: Vec<_> = std::fs::read_dir(&a).map_err(|e| e.to_string())?.map(|e| e.unwrap().file_name()).collect();
    names.sort();
    ensure(!names.is_empty(), || "no output files".into())?;
    for name in names {
        let (x, y) = (std::fs::read(a.join(&name)).unwrap(), std::fs::read(b.join(&name)).ok());
        ensure(Some(x) == y, || format!("{name:?} differs between reruns"))?;
    }
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    check: fn() -> Check,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "CNOT arithmetic and max/emp parity", budget: secs(1), check: cnot_arithmetic },
        Criterion { id: 2, name: "Jordan-Wigner anticommutation up to 6 qubits", budget: secs(10), check: jordan_wigner },
        Criterion { id: 3, name: "simulator vs dense products, SO(4) orthogonality", budget: secs(30), check: simulator },
        Criterion { id: 4, name: "sparse vs dense QMI, Bell pair", budget: secs(60), check: qmi_oracle },
        Criterion { id: 5, name: "spanning forests vs enumeration", budget: secs(60), check: spanning_forests },
        Criterion { id: 6, name: "adjoint vs finite-difference gradients", budget: secs(120), check: gradients },
        Criterion { id: 7, name: "ground-state recovery on H2 and Heisenberg ring", budget: secs(600), check: ground_state_recovery },
        Criterion { id: 8, name: "relaxed layer energies are monotone", budget: None, check: monotonicity },
        Criterion { id: 9, name: "symmetry metrics", budget: None, check: symmetry_metrics },
        Criterion { id: 10, name: "metric formulas and rerun determinism", budget: None, check: metric_formulas },
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = match catch_unwind(AssertUnwindSafe(c.check)) {
            Ok(result) => result,
            Err(payload) => Err(payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into())),
        };
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| match c.budget {
            Some(limit) if elapsed > limit => Err(format!("took {elapsed:.2?}, budget {limit:?}")),
            _ => Ok(()),
        });
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {} ({:.2?})", c.id, c.name, elapsed),
            Err(reason) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {} ({:.2?}): {reason}", c.id, c.name, elapsed);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
