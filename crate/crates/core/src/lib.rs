//! Solve classical problems by compiling them to quantum circuits and running
//! them on a built-in statevector simulator.
//!
//! * [`sat`] encodes integer constraint problems as a Grover search: a phase
//!   oracle synthesized from the constraints, a diffuser, and a dynamic
//!   iteration schedule whose candidates are verified classically.
//! * [`tsp`] encodes every Hamiltonian cycle of a weighted graph as an
//!   eigenstate of a diagonal unitary and reads tour lengths back with
//!   quantum phase estimation.
//! * [`circuit`] and [`statevector`] are the shared circuit IR and simulator.
//!
//! The `parallel` feature (on by default) runs the gate kernels and the
//! per-cycle phase estimations on rayon; see [`parallel::Parallelism`].

pub mod circuit;
pub mod parallel;
pub mod sat;
pub mod statevector;
pub mod tsp;

pub use circuit::{Circuit, CircuitError, CircuitOp, QubitRegister};
pub use parallel::Parallelism;
pub use statevector::{GateKind, Histogram, SimError, StateVector};
