//! Graph-based Bell inequalities with low detection efficiency.
//!
//! The crate builds Bell functionals from orthogonality graphs of structured
//! quantum state sets (Pauli states, Newman states, Hadamard rows), computes
//! their local bounds and quantum values exactly, derives critical detection
//! efficiencies and critical visibilities, and optimizes the functionals for
//! fixed quantum correlations with a symmetry-reduced Gilbert distance
//! algorithm over the local polytope.
//!
//! The main pipeline is:
//!
//! 1. [`states`] generates a vector family and its orthogonality [`graph`].
//! 2. [`invariants`] computes the independence number, clique number, xi
//!    number, and fractional packing number of the graph.
//! 3. [`bell`] assembles the graph Bell functional, evaluates it at the
//!    maximally-entangled quantum point, and reports `eta_crit` / `w_crit`.
//! 4. [`gilbert`] enumerates deterministic-assignment classes under the graph
//!    automorphism group, runs the symmetrized Gilbert iteration against the
//!    quantum point, extracts a rounded separating inequality, and certifies
//!    optimality with an exact-rational LP.
//!
//! All functional coefficients, probabilities, and bounds are exact rationals
//! end to end; floating point only appears inside the Gilbert iteration and
//! in rendered decimal output.

pub mod aut;
pub mod bell;
pub mod bitset;
pub mod error;
pub mod fixtures;
pub mod gauss;
pub mod gilbert;
pub mod graph;
pub mod hadamard;
pub mod invariants;
pub mod mis;
pub mod perm;
pub mod simplex;
pub mod states;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
