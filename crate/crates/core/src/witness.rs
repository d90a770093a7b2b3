//! Entanglement witnesses and the generalized inequality they induce.
//!
//! A witness is a Hermitian `A` with `(rho|A) >= 0` on every separable state
//! but `(w|A) < 0` for some entangled `w`; it is tangent when the separable
//! minimum is exactly zero. From a state and its nearest separable point the
//! maximally violating observable is
//!
//! ```text
//! A = ( rho0 - w - (rho0 | rho0 - w) 1 ) / ||rho0 - w||,
//! ```
//!
//! whose traceless part has unit norm and which vanishes on `rho0` by
//! construction. Evaluating its violation bracket reproduces the distance,
//! which is the numerical content of the equality between maximal violation
//! and Hilbert-Schmidt distance.

use serde::Serialize;

use crate::distance::{distance, SolverConfig};
use crate::error::{Error, Result};
use crate::la::{norm3, outer3};
use crate::oracle::{min_over_separable, OracleConfig, OracleResult};
use crate::pauli::{from_pauli, hs_inner, hs_norm, sigma_dot_sigma, HermitianOp, PauliCoeffs2Q};
use crate::states::{DensityMatrix, ProductState};

/// Tolerance for the tangency condition `sep_min = 0`.
pub const TANGENCY_TOL: f64 = 1e-9;

/// A normalized witness with its separable minimum and target-state value.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    /// The observable.
    pub op: HermitianOp,
    /// `min over separable rho of (rho|op)`.
    pub sep_min: f64,
    /// `(w|op)` for the state the witness was built against.
    pub violation_state_value: f64,
    /// Whether the traceless part has unit HS norm.
    pub normalized: bool,
}

impl Witness {
    /// The violation bracket `sep_min - (w|op)`; positive iff the witness
    /// certifies entanglement of its target state.
    pub fn violation(&self) -> f64 {
        self.sep_min - self.violation_state_value
    }
}

fn sep_min_of(op: &HermitianOp, cfg: &OracleConfig) -> Result<f64> {
    match op.dim() {
        4 => Ok(min_over_separable(op, cfg)?.value),
        2 => {
            // model set: the sigma_z segment, extreme points lambda = +1, -1
            let vals: Result<Vec<f64>> = [1.0, -1.0]
                .iter()
                .map(|&l| hs_inner(crate::states::qubit_state([0.0, 0.0, l]).op(), op))
                .collect();
            Ok(vals?.into_iter().fold(f64::INFINITY, f64::min))
        }
        d => Err(Error::DimMismatch {
            expected: 4,
            got: d,
        }),
    }
}

/// The maximally violating observable for `w` given its nearest separable
/// state `rho0`. Works for two qubits against the separable set and for one
/// qubit against the `sigma_z` segment model.
pub fn a_max(w: &DensityMatrix, rho0: &DensityMatrix, cfg: &OracleConfig) -> Result<Witness> {
    let diff = rho0.op() - w.op();
    let norm = hs_norm(&diff);
    if norm < 1e-12 {
        return Err(Error::ZeroDirection);
    }
    let shift = hs_inner(rho0.op(), &diff)?;
    let id = HermitianOp::identity(w.dim());
    let op = &(&diff - &(&id * shift)) * (1.0 / norm);

    let traceless_norm = hs_norm(&op.traceless_part());
    let normalized = (traceless_norm - 1.0).abs() < 1e-10;
    debug_assert!(normalized, "traceless part norm {traceless_norm}");

    let sep_min = sep_min_of(&op, cfg)?;
    let violation_state_value = hs_inner(w.op(), &op)?;
    Ok(Witness {
        op,
        sep_min,
        violation_state_value,
        normalized,
    })
}

/// Violation bracket of a fixed observable against a state:
/// `min over separable rho of (rho|A) - (w|A)`. Positive values certify
/// entanglement; the bracket is invariant under `A -> A + c 1`.
pub fn gbi_violation(w: &DensityMatrix, a: &HermitianOp, cfg: &OracleConfig) -> Result<f64> {
    let min = min_over_separable(a, cfg)?.value;
    Ok(min - hs_inner(w.op(), a)?)
}

/// Maximal violation computed through the tangent construction: solve the
/// distance problem, build the maximal witness from its minimizer, and
/// evaluate the bracket. Equals the distance up to solver tolerance.
///
/// The bracket is linearly sensitive to minimizer error along flat faces of
/// the separable set, so the internal solve runs to a much tighter gap than
/// the distance itself needs; states within tolerance of the set have no
/// usable tangent direction and report zero violation.
pub fn b_of_w(w: &DensityMatrix, cfg: &SolverConfig) -> Result<f64> {
    let deep = SolverConfig {
        tol: cfg.tol.min(1e-13),
        ..cfg.clone()
    };
    let rep = distance(w, &deep)?;
    if rep.distance <= cfg.tol.max(1e-12) {
        return Ok(0.0);
    }
    let wit = a_max(w, &rep.minimizer, &cfg.oracle)?;
    Ok(wit.violation())
}

/// Whether `A` is a tangent functional (separable minimum zero within
/// tolerance), along with the minimizing product state as certificate.
pub fn is_tangent(a: &HermitianOp, cfg: &OracleConfig) -> Result<(bool, OracleResult)> {
    let r = min_over_separable(a, cfg)?;
    Ok((r.value.abs() <= TANGENCY_TOL, r))
}

/// The flip operator `1/4 (1 + s.s)`: the tangent functional touching every
/// anti-correlated product state.
pub fn flip_operator() -> HermitianOp {
    &(&HermitianOp::identity(4) + &sigma_dot_sigma()) * 0.25
}

/// The two-parameter witness family tangent at the `(+z, +z)` product state:
/// `[[0,0,0,ab],[0,a^2,0,0],[0,0,b^2,0],[ab,0,0,0]] / (a^2+b^2)`. Its partial
/// transpose is positive, so it can only ever detect states with a negative
/// partial transpose.
pub fn corner_tangent_witness(a: f64, b: f64) -> Result<HermitianOp> {
    let denom = a * a + b * b;
    if denom < 1e-300 {
        return Err(Error::ZeroDirection);
    }
    let mut m = vec![0.0; 16];
    m[3] = a * b / denom;
    m[12] = a * b / denom;
    m[5] = a * a / denom;
    m[10] = b * b / denom;
    HermitianOp::from_real(4, &m)
}

/// Expectation of `1 + s.s` in the perturbed anti-correlated family
/// `1/4 (1 + n.s (x) 1 - 1 (x) n.s - (n n^T + eps) . s (x) s)`.
///
/// At `eps = 0` the operator is the pure product `(n, -n)` and the value is
/// exactly zero; the response is linear, `-tr(eps)`. The family leaves the
/// state space at first order for any nonzero `eps`, so positivity is
/// enforced to first order: perturbations beyond `||eps|| = 1/2` or
/// eigenvalues below `-(||eps|| + tol)` are rejected.
pub fn witness_sensitivity(n: [f64; 3], eps: [[f64; 3]; 3]) -> Result<f64> {
    let n_norm = norm3(n);
    if (n_norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnitVector { norm: n_norm });
    }
    let eps_norm: f64 = eps.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    if eps_norm > 0.5 {
        return Err(Error::NotAState(format!(
            "perturbation norm {eps_norm} beyond the tangent regime"
        )));
    }

    let mut p = PauliCoeffs2Q::zero();
    p.alpha = 0.25;
    let nn = outer3(n, n);
    for i in 0..3 {
        p.a[i] = n[i] / 4.0;
        p.b[i] = -n[i] / 4.0;
        for j in 0..3 {
            p.c[i][j] = -(nn[i][j] + eps[i][j]) / 4.0;
        }
    }
    let rho = from_pauli(&p);
    let min = crate::eigen::min_eigenvalue(&rho);
    if min < -(eps_norm + 1e-10) {
        return Err(Error::NotAState(format!(
            "eigenvalue {min:.3e} below the first-order envelope"
        )));
    }
    let probe = &HermitianOp::identity(4) + &sigma_dot_sigma();
    hs_inner(&rho, &probe)
}

/// Convenience: the witness family member detects only states with negative
/// partial transpose (consistency helper used by tests and the CLI).
pub fn detects_only_npt(a: &HermitianOp, w: &DensityMatrix) -> Result<bool> {
    let pt_positive =
        crate::eigen::min_eigenvalue(&crate::states::partial_transpose_b(a)?) >= -1e-10;
    if !pt_positive {
        return Ok(true); // no claim for witnesses without positive partial transpose
    }
    let value = hs_inner(w.op(), a)?;
    Ok(value >= -1e-9 || !crate::states::is_ppt(w)?)
}

/// Minimizing product state certificate re-exported for reporting.
pub fn tangency_certificate(r: &OracleResult) -> ProductState {
    r.state
}
