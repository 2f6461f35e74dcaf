//! Oracle and amplification properties checked by brute force.

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use qsolve_core::sat::{
    build_oracle, classical_check, grover_circuit, grover_iterations, qubit_layout, solve,
    Assignment, Constraint, QubitLayout, SatProblem, SolveConfig, VarDecl,
};
use qsolve_core::StateVector;

fn assignment_of(x: usize, layout: &QubitLayout) -> Assignment {
    let pairs: Vec<(&str, u64)> = layout
        .vars
        .iter()
        .map(|s| {
            let shift = layout.search_width - s.offset - s.width;
            (
                s.name.as_str(),
                ((x >> shift) & ((1 << s.width) - 1)) as u64,
            )
        })
        .collect();
    Assignment::from_pairs(pairs)
}

/// Run the oracle once on the uniform superposition of the search register
/// and compare every amplitude with `±2^(-n/2)` signed by the classical check.
/// Returns the probability that leaked out of the clean-ancilla subspace.
fn check_oracle(problem: &SatProblem) -> Result<f64, TestCaseError> {
    let layout = qubit_layout(problem, 24).unwrap();
    let n = layout.search_width;
    let shift = layout.num_qubits - n;
    let mut s = StateVector::zero(layout.num_qubits).unwrap();
    for q in 0..n {
        s.apply_gate(qsolve_core::GateKind::H, &[], &[q]).unwrap();
    }
    build_oracle(problem, &layout)
        .unwrap()
        .apply_to(&mut s)
        .unwrap();
    let amp = 1.0 / ((1usize << n) as f64).sqrt();
    let mut clean = 0.0;
    for x in 0..1usize << n {
        let sign = if classical_check(&assignment_of(x, &layout), problem) {
            -1.0
        } else {
            1.0
        };
        let a = s.amplitudes()[x << shift];
        prop_assert!(
            (a - Complex64::new(sign * amp, 0.0)).norm() < 1e-9,
            "x={x:b} amplitude {a}"
        );
        clean += a.norm_sqr();
    }
    Ok(1.0 - clean)
}

fn problem_strategy() -> impl Strategy<Value = SatProblem> {
    prop::collection::vec(1usize..=3, 2..=4)
        .prop_filter("search register too wide", |bits| {
            bits.iter().sum::<usize>() <= 8
        })
        .prop_flat_map(|bits| {
            let nv = bits.len();
            let names: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
            let constraint = (0..3u8, 0..nv, 0..nv, 0u64..16).prop_map({
                let names = names.clone();
                move |(kind, i, j, value)| match kind {
                    0 => Constraint::not_equal(&names[i], &names[(i + 1 + j % (nv - 1)) % nv]),
                    1 => Constraint::equal_const(&names[i], value % 4),
                    _ => Constraint::sum_equals(&[&names[i], &names[(i + 1) % nv]], value % 8),
                }
            });
            let vars: Vec<VarDecl> = names
                .iter()
                .zip(&bits)
                .map(|(n, &b)| VarDecl::new(n, b))
                .collect();
            (Just(vars), prop::collection::vec(constraint, 1..=4))
        })
        .prop_map(|(vars, constraints)| SatProblem::new(vars, constraints))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn oracle_sign_matches_classical_check(problem in problem_strategy()) {
        prop_assume!(qubit_layout(&problem, 24).is_ok());
        let leakage = check_oracle(&problem)?;
        prop_assert!(leakage < 1e-9, "leakage {leakage}");
    }

    #[test]
    fn reported_solutions_pass_the_check(problem in problem_strategy(), seed in 0u64..1000) {
        prop_assume!(qubit_layout(&problem, 24).is_ok());
        let config = SolveConfig { shots: 512, seed, ..SolveConfig::default() };
        let report = solve(&problem, &config).unwrap();
        for a in &report.solutions {
            prop_assert!(classical_check(a, &problem));
        }
    }
}

/// Unit-sum Kakuro: four 1-bit cells, two solutions.
fn unit_kakuro() -> SatProblem {
    SatProblem::new(
        ["a", "b", "c", "d"]
            .iter()
            .map(|n| VarDecl::new(*n, 1))
            .collect(),
        vec![
            Constraint::not_equal("a", "b"),
            Constraint::not_equal("b", "d"),
            Constraint::not_equal("c", "d"),
        ],
    )
}

#[test]
fn amplification_follows_the_rotation_formula() {
    let problem = unit_kakuro();
    let layout = qubit_layout(&problem, 24).unwrap();
    let n = layout.search_width;
    let solutions: Vec<usize> = (0..1usize << n)
        .filter(|&x| classical_check(&assignment_of(x, &layout), &problem))
        .collect();
    assert_eq!(solutions, vec![0b0110, 0b1001]);
    let k = solutions.len() as f64;
    let theta = (k / 16.0).sqrt().asin();
    for t in 0..=5u64 {
        let mut s = StateVector::zero(layout.num_qubits).unwrap();
        grover_circuit(&problem, &layout, t)
            .unwrap()
            .apply_to(&mut s)
            .unwrap();
        let p = s.marginal_probabilities(&layout.search_qubits()).unwrap();
        let good = ((2 * t + 1) as f64 * theta).sin().powi(2);
        for (x, &px) in p.iter().enumerate() {
            let want = if solutions.contains(&x) {
                good / k
            } else {
                (1.0 - good) / (16.0 - k)
            };
            assert!((px - want).abs() < 1e-9, "t={t} x={x:04b}: {px} vs {want}");
        }
    }
    assert_eq!(grover_iterations(4, 2).unwrap(), 2);
}

#[test]
fn generated_corpus_oracles() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let mut checked = 0;
    while checked < 20 {
        let problem = problem_strategy().new_tree(&mut runner).unwrap().current();
        if qubit_layout(&problem, 24).is_err() {
            continue;
        }
        let leakage = check_oracle(&problem).unwrap();
        assert!(leakage < 1e-9);
        checked += 1;
    }
}
