//! Sequential vs rayon kernels on the workloads the solvers actually run.

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qsolve_core::sat::{
    build_diffuser, build_oracle, qubit_layout, Constraint, SatProblem, VarDecl,
};
use qsolve_core::tsp::{self, TspConfig, TspInstance};
use qsolve_core::{GateKind, Parallelism, StateVector};

const MODES: [Parallelism; 2] = [Parallelism::Sequential, Parallelism::Parallel];

fn label(mode: Parallelism) -> &'static str {
    match mode {
        Parallelism::Sequential => "sequential",
        Parallelism::Parallel => "parallel",
    }
}

/// One H and one CX per qubit over a 20-qubit register.
fn gate_sweep(c: &mut Criterion) {
    let n = 20;
    let mut group = c.benchmark_group("gate_sweep_20q");
    for mode in MODES {
        let mut s = StateVector::zero(n).unwrap().with_parallelism(mode);
        group.bench_function(BenchmarkId::from_parameter(label(mode)), |b| {
            b.iter(|| {
                for q in 0..n {
                    s.apply_gate(GateKind::H, &[], &[q]).unwrap();
                    s.apply_gate(GateKind::X, &[q], &[(q + 1) % n]).unwrap();
                }
                black_box(s.amplitudes()[0])
            })
        });
    }
    group.finish();
}

/// One oracle plus diffuser on the 19-qubit Kakuro case study.
fn grover_iteration(c: &mut Criterion) {
    let problem = SatProblem::new(
        ["a", "b", "c", "d"]
            .iter()
            .map(|n| VarDecl::new(*n, 2))
            .collect(),
        vec![
            Constraint::sum_equals(&["a", "c"], 5),
            Constraint::not_equal("a", "c"),
            Constraint::sum_equals(&["b", "d"], 4),
            Constraint::not_equal("b", "d"),
            Constraint::sum_equals(&["a", "b"], 4),
            Constraint::not_equal("a", "b"),
            Constraint::sum_equals(&["c", "d"], 5),
            Constraint::not_equal("c", "d"),
        ],
    );
    let layout = qubit_layout(&problem, 26).unwrap();
    let mut step = build_oracle(&problem, &layout).unwrap();
    step.extend(&build_diffuser(layout.search_width, layout.num_qubits).unwrap())
        .unwrap();

    let mut group = c.benchmark_group("grover_iteration_case_study");
    for mode in MODES {
        let mut s = StateVector::zero(layout.num_qubits)
            .unwrap()
            .with_parallelism(mode);
        group.bench_function(BenchmarkId::from_parameter(label(mode)), |b| {
            b.iter(|| {
                step.apply_to(&mut s).unwrap();
                black_box(s.amplitudes()[0])
            })
        });
    }
    group.finish();
}

/// Full phase-estimation solve of a 5-node instance (12 cycles, 21 qubits).
fn tsp_solve(c: &mut Criterion) {
    let w = [
        [0, 4, 9, 2, 7],
        [4, 0, 3, 8, 1],
        [9, 3, 0, 5, 6],
        [2, 8, 5, 0, 3],
        [7, 1, 6, 3, 0],
    ];
    let g = TspInstance::new(w.iter().map(|r| r.to_vec()).collect()).unwrap();
    let mut group = c.benchmark_group("tsp_solve_5_nodes");
    for mode in MODES {
        let config = TspConfig {
            shots_per_cycle: 256,
            parallelism: mode,
            ..TspConfig::default()
        };
        group.bench_function(BenchmarkId::from_parameter(label(mode)), |b| {
            b.iter(|| black_box(tsp::solve(&g, &config).unwrap().best_length))
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default()
        .sample_size(10)
        .warm_up_time(Duration::from_millis(500))
        .measurement_time(Duration::from_secs(3));
    targets = gate_sweep, grover_iteration, tsp_solve
}
criterion_main!(benches);
