//! Two-qubit entanglement geometry in the Hilbert-Schmidt space.
//!
//! States and observables live in the same real inner-product space. The
//! crate computes the Euclidean distance from a state to the convex set of
//! separable states, builds the tangent-plane witness certifying that
//! distance, and evaluates how the resulting generalized inequality compares
//! with the CHSH and original Bell inequalities. A companion geometry module
//! exports the tetrahedron / double-pyramid picture of the diagonal
//! correlation states.

// dense small-matrix code reads most clearly with explicit index loops
#![allow(clippy::needless_range_loop)]

pub mod bell;
pub mod distance;
pub mod eigen;
pub mod error;
pub mod geometry;
mod hull;
pub mod io;
mod la;
pub mod oracle;
pub mod pauli;
pub mod sample;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
pub use pauli::{
    from_bloch, from_pauli, hs_distance, hs_inner, hs_norm, kron, sigma, sigma_dot_sigma, to_pauli,
    HermitianOp, PauliCoeffs2Q, Unitary,
};
pub use states::{
    bell_projectors, is_ppt, partial_transpose_b, product_state, w_c_state, werner, DensityMatrix,
    ProductState,
};

pub use bell::{
    bell_max_violation, bell_operator, chsh_max_violation, chsh_operator, violation_summary,
    BellSetting, ChshSetting,
};
pub use distance::{
    distance, distance_sz_model, distance_sz_numeric, variational_bounds, DistanceReport,
    SolverConfig, SzState,
};
pub use oracle::{
    grid_min_over_separable, max_over_anticorrelated, max_over_separable, min_over_separable,
    OracleConfig, OracleResult,
};
pub use witness::{a_max, b_of_w, gbi_violation, is_tangent, witness_sensitivity, Witness};
