//! Quantum adiabatic evolution for Max-Cut on dense statevectors.
//!
//! * [`graph`]: instances, partitions and the exhaustive Max-Cut oracle.
//! * [`hamiltonian`]: mixer, problem and interpolated Hamiltonians with an
//!   exact Jacobi diagonalization.
//! * [`statevector`], [`evolution`], [`histogram`]: gate kernels, the
//!   Trotterized adiabatic circuit and seeded shot sampling.
//! * [`flow`]: eigenphase flow of the fixed-`s` circuit unitary and the
//!   intersection index of the real-axis flow.
//! * [`noise`]: depolarizing and readout noise as Pauli trajectories.

pub mod error;
pub mod evolution;
pub mod flow;
pub mod graph;
pub mod hamiltonian;
pub mod histogram;
pub mod linalg;
pub mod noise;
pub mod seed;
pub mod statevector;

pub use error::{Error, ErrorKind, Result};
pub use evolution::{ground_manifold_overlap, qaa_evolve, TrotterSchedule};
pub use graph::{brute_force_maxcut, cut_value, parse_graph, Graph, MaxCutSolution, Partition};
pub use histogram::{sample_measurements, Histogram};
pub use statevector::StateVector;
