//! Simulator properties checked against explicit dense matrices.

#![allow(clippy::needless_range_loop)] // explicit matrix indexing

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;
use qsolve_core::circuit::{build_qft, parse_text};
use qsolve_core::{Circuit, GateKind, Parallelism, StateVector};

const TOL: f64 = 1e-10;

type Matrix = Vec<Vec<Complex64>>;

/// Dense matrix of `kind` on `targets` with `controls`, built entry by entry
/// from the definition: if every control bit is set, the gate matrix acts on
/// the target bits, otherwise the basis state is unchanged.
fn oracle_matrix(n: usize, kind: GateKind, controls: &[usize], targets: &[usize]) -> Matrix {
    let dim = 1usize << n;
    let g = kind.matrix();
    let bit = |q: usize| n - 1 - q;
    let sub = |i: usize| {
        targets
            .iter()
            .fold(0usize, |acc, &t| (acc << 1) | ((i >> bit(t)) & 1))
    };
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for col in 0..dim {
        if !controls.iter().all(|&c| (col >> bit(c)) & 1 == 1) {
            m[col][col] = Complex64::new(1.0, 0.0);
            continue;
        }
        let rest = targets.iter().fold(col, |acc, &t| acc & !(1 << bit(t)));
        for (out, row) in g.iter().enumerate() {
            let mut idx = rest;
            for (k, &t) in targets.iter().enumerate() {
                if (out >> (targets.len() - 1 - k)) & 1 == 1 {
                    idx |= 1 << bit(t);
                }
            }
            m[idx][col] += row[sub(col)];
        }
    }
    m
}

fn mat_vec(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Columns of `circuit` obtained by simulating every basis state.
fn simulated_matrix(circuit: &Circuit) -> Matrix {
    let n = circuit.num_qubits();
    let dim = 1usize << n;
    let mut cols = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut s = StateVector::basis_with_cap(n, i, 26).unwrap();
        circuit.apply_to(&mut s).unwrap();
        cols.push(s.into_amplitudes());
    }
    (0..dim)
        .map(|r| (0..dim).map(|c| cols[c][r]).collect())
        .collect()
}

fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
}

fn kind_strategy() -> impl Strategy<Value = GateKind> {
    prop_oneof![
        Just(GateKind::H),
        Just(GateKind::X),
        Just(GateKind::Z),
        (-TAU..TAU).prop_map(GateKind::Phase),
        Just(GateKind::Swap),
    ]
}

/// A gate with distinct random operands on `n` qubits.
fn op_strategy(n: usize) -> impl Strategy<Value = (GateKind, Vec<usize>, Vec<usize>)> {
    (
        kind_strategy(),
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        0..n,
    )
        .prop_filter_map("not enough qubits", move |(kind, perm, nc)| {
            let nt = kind.num_targets();
            if nt > n {
                return None;
            }
            let nc = nc.min(n - nt);
            let targets = perm[..nt].to_vec();
            let controls = perm[nt..nt + nc].to_vec();
            Some((kind, controls, targets))
        })
}

fn circuit_strategy(n: usize, max_len: usize) -> impl Strategy<Value = Circuit> {
    prop::collection::vec(op_strategy(n), 0..max_len).prop_map(move |ops| {
        let mut c = Circuit::new(n);
        for (kind, controls, targets) in ops {
            c.gate(kind, &controls, &targets).unwrap();
        }
        c
    })
}

fn state_strategy(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1usize << n).prop_filter_map(
        "zero vector",
        |raw| {
            let v: Vec<Complex64> = raw
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect();
            let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            (norm > 1e-3).then(|| {
                StateVector::from_amplitudes(v.into_iter().map(|a| a / norm).collect()).unwrap()
            })
        },
    )
}

fn sized_state_and_circuit() -> impl Strategy<Value = (StateVector, Circuit)> {
    (1usize..=5).prop_flat_map(|n| (state_strategy(n), circuit_strategy(n, 24)))
}

proptest! {
    #[test]
    fn gates_match_dense_oracle(
        (n, op, state) in (1usize..=4).prop_flat_map(|n| (Just(n), op_strategy(n), state_strategy(n)))
    ) {
        let (kind, controls, targets) = op;
        let expected = mat_vec(&oracle_matrix(n, kind, &controls, &targets), state.amplitudes());
        let mut s = state.clone();
        s.apply_gate(kind, &controls, &targets).unwrap();
        prop_assert!(close(s.amplitudes(), &expected, TOL));
    }

    #[test]
    fn norm_is_preserved((state, circuit) in sized_state_and_circuit()) {
        let mut s = state;
        circuit.apply_to(&mut s).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn circuit_then_inverse_is_identity((state, circuit) in sized_state_and_circuit()) {
        let mut s = state.clone();
        circuit.apply_to(&mut s).unwrap();
        circuit.inverse().apply_to(&mut s).unwrap();
        prop_assert!(close(s.amplitudes(), state.amplitudes(), 1e-9));
    }

    #[test]
    fn hermitian_gates_are_self_inverse(
        (op, state) in (1usize..=5).prop_flat_map(|n| (op_strategy(n), state_strategy(n)))
    ) {
        let (kind, controls, targets) = op;
        let kind = match kind {
            GateKind::Phase(_) => GateKind::Z,
            k => k,
        };
        let mut s = state.clone();
        s.apply_gate(kind, &controls, &targets).unwrap();
        s.apply_gate(kind, &controls, &targets).unwrap();
        prop_assert!(close(s.amplitudes(), state.amplitudes(), TOL));
    }

    #[test]
    fn circuits_are_unitary(circuit in (1usize..=4).prop_flat_map(|n| circuit_strategy(n, 16))) {
        let m = simulated_matrix(&circuit);
        let dim = m.len();
        for a in 0..dim {
            for b in 0..dim {
                let dot: Complex64 = (0..dim).map(|r| m[r][a].conj() * m[r][b]).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                prop_assert!((dot - want).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn text_format_round_trips(circuit in (1usize..=6).prop_flat_map(|n| circuit_strategy(n, 20))) {
        let parsed = parse_text(&circuit.export_text()).unwrap();
        prop_assert_eq!(parsed, circuit);
    }

    #[test]
    fn parallel_matches_sequential(circuit in circuit_strategy(13, 12)) {
        // 13 qubits is above the parallel chunk threshold
        let run = |mode| {
            let mut s = StateVector::zero(13).unwrap().with_parallelism(mode);
            for q in 0..13 {
                s.apply_gate(GateKind::H, &[], &[q]).unwrap();
            }
            circuit.apply_to(&mut s).unwrap();
            s.into_amplitudes()
        };
        prop_assert_eq!(run(Parallelism::Sequential), run(Parallelism::Parallel));
    }
}

#[test]
fn qft_equals_dft_matrix() {
    for m in 1..=5 {
        let dim = 1usize << m;
        let qft = build_qft(m, &(0..m).collect::<Vec<_>>()).unwrap();
        let sim = simulated_matrix(&qft);
        let scale = 1.0 / (dim as f64).sqrt();
        for (j, row) in sim.iter().enumerate() {
            for (k, &entry) in row.iter().enumerate() {
                let dft = Complex64::from_polar(scale, TAU * (j * k) as f64 / dim as f64);
                assert!((entry - dft).norm() < 1e-10, "m={m} [{j}][{k}]");
            }
        }
    }
}

#[test]
fn inverse_qft_undoes_qft() {
    let qft = build_qft(4, &[0, 1, 2, 3]).unwrap();
    let m = simulated_matrix(&qft.inverse());
    let f = simulated_matrix(&qft);
    for i in 0..16 {
        for j in 0..16 {
            let prod: Complex64 = (0..16).map(|k| m[i][k] * f[k][j]).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((prod - want).norm() < 1e-10);
        }
    }
}

#[test]
fn bell_sampling_within_three_sigma() {
    let mut c = Circuit::new(2);
    c.h(0).unwrap().cx(0, 1).unwrap();
    let shots = 1_000_000u64;
    let h = c.execute(shots, 7, &[0, 1]).unwrap().histogram.unwrap();
    assert_eq!(h.count("01") + h.count("10"), 0);
    let sigma = (shots as f64 * 0.25).sqrt();
    let dev = (h.count("00") as f64 - shots as f64 / 2.0).abs();
    assert!(dev < 3.0 * sigma, "deviation {dev} vs σ {sigma}");
}

#[test]
fn phase_gate_applies_exact_angle() {
    let mut s = StateVector::zero(1).unwrap();
    s.apply_gate(GateKind::H, &[], &[0]).unwrap();
    s.apply_gate(GateKind::Phase(PI / 3.0), &[], &[0]).unwrap();
    let a = s.amplitudes();
    assert!((a[1] / a[0] - Complex64::from_polar(1.0, PI / 3.0)).norm() < 1e-12);
}
