//! Distance from a state to the separable set.
//!
//! `D(w) = min over separable rho of ||rho - w||` is computed by projecting
//! `w` onto the convex hull of pure product states, using the see-saw oracle
//! for the linear subproblems. Every iterate carries a certified sandwich:
//! for any separable `rho'`,
//!
//! ```text
//! min_rho ( rho - w | (rho' - w)/||rho' - w|| )  <=  D(w)  <=  ||rho' - w||,
//! ```
//!
//! and the solver stops when the two sides meet. The one-spin model (states
//! diagonal in `sigma_z`) has the closed form `D = sqrt((wx^2 + wy^2)/2)`,
//! which doubles as an analytic cross-check of the same machinery on a
//! one-parameter hull.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::{project_to_hull, HullConfig};
use crate::la::norm3;
use crate::oracle::{min_over_separable, OracleConfig};
use crate::pauli::{from_pauli, hs_norm, to_pauli, HermitianOp, PauliCoeffs2Q};
use crate::states::{is_ppt, DensityMatrix, ProductState};

/// Range bound on the distance: `0 <= D(w) <= sqrt(2)` for any state.
pub const DISTANCE_MAX: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Stop when the upper/lower bound gap falls below this.
    pub tol: f64,
    /// Cap on oracle calls.
    pub max_iters: usize,
    /// Configuration forwarded to the product-state oracle.
    pub oracle: OracleConfig,
    /// Short-circuit separable inputs through the partial-transpose test.
    pub trust_ppt: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-7,
            max_iters: 10_000,
            oracle: OracleConfig::default(),
            trust_ppt: false,
        }
    }
}

/// One weighted atom of the minimizer's convex decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct Atom {
    pub weight: f64,
    pub state: DensityMatrix,
    /// Alice Bloch vector when the atom is a pure product (or the one-spin
    /// model's Bloch vector).
    pub alice: Option<[f64; 3]>,
    /// Bob Bloch vector when the atom is a pure product.
    pub bob: Option<[f64; 3]>,
}

/// Certified projection result.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceReport {
    /// `D(w)`, reported as the certified upper bound.
    pub distance: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    /// `upper_bound - lower_bound`.
    pub gap: f64,
    /// Oracle calls performed.
    pub iterations: usize,
    /// Whether the gap closed below tolerance.
    pub converged: bool,
    /// Nearest separable state found.
    pub minimizer: DensityMatrix,
    /// Convex decomposition of the minimizer (at most 16 atoms).
    pub atoms: Vec<Atom>,
    /// `(upper, lower)` per iteration.
    pub trace: Vec<(f64, f64)>,
}

/// Isometric coordinates for two-qubit operators: `||x||` equals the
/// Euclidean norm of twice the Pauli coefficients.
fn coords_2q(x: &HermitianOp) -> Vec<f64> {
    let p = to_pauli(x).expect("dim 4");
    let mut v = Vec::with_capacity(16);
    v.push(2.0 * p.alpha);
    v.extend(p.a.iter().map(|x| 2.0 * x));
    v.extend(p.b.iter().map(|x| 2.0 * x));
    for row in &p.c {
        v.extend(row.iter().map(|x| 2.0 * x));
    }
    v
}

fn op_from_coords_2q(v: &[f64]) -> HermitianOp {
    let mut p = PauliCoeffs2Q::zero();
    p.alpha = v[0] / 2.0;
    for i in 0..3 {
        p.a[i] = v[1 + i] / 2.0;
        p.b[i] = v[4 + i] / 2.0;
        for j in 0..3 {
            p.c[i][j] = v[7 + 3 * i + j] / 2.0;
        }
    }
    from_pauli(&p)
}

fn coords_product(ps: &ProductState) -> Vec<f64> {
    let (n, m) = (ps.alice(), ps.bob());
    let mut v = Vec::with_capacity(16);
    v.push(0.5);
    v.extend(n.iter().map(|x| 0.5 * x));
    v.extend(m.iter().map(|x| 0.5 * x));
    for i in 0..3 {
        for j in 0..3 {
            v.push(0.5 * n[i] * m[j]);
        }
    }
    v
}

/// The four axis products whose uniform mixture is the maximally mixed state.
fn initial_products() -> Vec<ProductState> {
    let z = [0.0, 0.0, 1.0];
    let nz = [0.0, 0.0, -1.0];
    [(z, z), (z, nz), (nz, z), (nz, nz)]
        .into_iter()
        .map(|(n, m)| ProductState::new(n, m).expect("axis vectors"))
        .collect()
}

/// Hilbert-Schmidt distance from `w` to the separable set, with the
/// minimizing separable state and a certified bound sandwich.
pub fn distance(w: &DensityMatrix, cfg: &SolverConfig) -> Result<DistanceReport> {
    if w.dim() != 4 {
        return Err(Error::DimMismatch {
            expected: 4,
            got: w.dim(),
        });
    }
    if cfg.trust_ppt && is_ppt(w)? {
        return Ok(DistanceReport {
            distance: 0.0,
            lower_bound: 0.0,
            upper_bound: 0.0,
            gap: 0.0,
            iterations: 0,
            converged: true,
            minimizer: w.clone(),
            atoms: vec![Atom {
                weight: 1.0,
                state: w.clone(),
                alice: None,
                bob: None,
            }],
            trace: Vec::new(),
        });
    }

    let target = coords_2q(w.op());
    let mut registry = initial_products();
    let initial: Vec<(usize, Vec<f64>)> = registry
        .iter()
        .enumerate()
        .map(|(i, ps)| (i, coords_product(ps)))
        .collect();
    let hull_cfg = HullConfig {
        tol: cfg.tol,
        max_iters: cfg.max_iters,
        max_atoms: 64,
        final_atoms: 16,
    };
    let oracle_cfg = cfg.oracle.clone();

    let proj = project_to_hull(
        &target,
        &initial,
        |dir| {
            let dir_op = op_from_coords_2q(dir);
            let r = min_over_separable(&dir_op, &oracle_cfg).expect("dim 4 direction");
            let coords = coords_product(&r.state);
            registry.push(r.state);
            (registry.len() - 1, coords, r.value)
        },
        &hull_cfg,
    );

    let mut minimizer_op = HermitianOp::zeros(4);
    let mut atoms = Vec::with_capacity(proj.weights.len());
    for &(id, weight) in &proj.weights {
        let ps = registry[id];
        let state = ps.density();
        minimizer_op = &minimizer_op + &(state.op() * weight);
        atoms.push(Atom {
            weight,
            state,
            alice: Some(ps.alice()),
            bob: Some(ps.bob()),
        });
    }
    debug_assert!(
        coords_2q(&minimizer_op)
            .iter()
            .zip(&proj.point)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0_f64, f64::max)
            < 1e-10,
        "minimizer drifted from the hull point"
    );
    let minimizer = DensityMatrix::new(minimizer_op)?;

    Ok(DistanceReport {
        distance: proj.upper,
        lower_bound: proj.lower,
        upper_bound: proj.upper,
        gap: proj.upper - proj.lower,
        iterations: proj.iterations,
        converged: proj.converged,
        minimizer,
        atoms,
        trace: proj.trace,
    })
}

/// The two-sided bound for an arbitrary separable reference state `rho'`:
/// `lower <= D(w) <= upper` with `upper = ||rho' - w||` and `lower` the
/// oracle minimum of `( rho - w | unit direction )`.
pub fn variational_bounds(
    w: &DensityMatrix,
    rho_prime: &DensityMatrix,
    cfg: &OracleConfig,
) -> Result<(f64, f64)> {
    if !is_ppt(rho_prime)? {
        return Err(Error::NotSeparable);
    }
    let diff = rho_prime.op() - w.op();
    let upper = hs_norm(&diff);
    if upper < 1e-12 {
        return Err(Error::ZeroDirection);
    }
    let unit = &diff * (1.0 / upper);
    let min = min_over_separable(&unit, cfg)?;
    let lower = min.value - crate::pauli::hs_inner(w.op(), &unit)?;
    Ok((lower, upper))
}

/// One-qubit Bloch vector constrained to the ball, playing the role of the
/// target state in the one-spin model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SzState {
    w: [f64; 3],
}

impl SzState {
    pub fn new(w: [f64; 3]) -> Result<Self> {
        if norm3(w) > 1.0 + 1e-12 {
            return Err(Error::NotAState(format!(
                "Bloch vector {w:?} lies outside the unit ball"
            )));
        }
        Ok(Self { w })
    }

    pub fn bloch(&self) -> [f64; 3] {
        self.w
    }

    pub fn density(&self) -> DensityMatrix {
        crate::states::qubit_state(self.w)
    }
}

/// Closed-form distance from a one-qubit state to the `sigma_z` segment:
/// `D = sqrt((wx^2 + wy^2)/2)`, attained at `lambda = wz`.
pub fn distance_sz_model(w: &SzState) -> (f64, f64) {
    let [x, y, z] = w.bloch();
    (((x * x + y * y) / 2.0).sqrt(), z)
}

fn coords_1q(x: &HermitianOp) -> Vec<f64> {
    let (alpha, a) = crate::pauli::bloch_coeffs(x).expect("dim 2");
    let s = std::f64::consts::SQRT_2;
    vec![s * alpha, s * a[0], s * a[1], s * a[2]]
}

/// The generic hull machinery run on the one-parameter `sigma_z` segment
/// (extreme points `lambda = +1, -1`); validates the solver against the
/// closed form.
pub fn distance_sz_numeric(w: &SzState, cfg: &SolverConfig) -> DistanceReport {
    let endpoints = [1.0_f64, -1.0];
    let atom_state = |lambda: f64| crate::states::qubit_state([0.0, 0.0, lambda]);
    let atom_coords: Vec<Vec<f64>> = endpoints
        .iter()
        .map(|&l| coords_1q(atom_state(l).op()))
        .collect();

    let target = coords_1q(w.density().op());
    let initial: Vec<(usize, Vec<f64>)> = (0..2).map(|i| (i, atom_coords[i].clone())).collect();
    let hull_cfg = HullConfig {
        tol: cfg.tol.min(1e-10),
        max_iters: cfg.max_iters,
        max_atoms: 8,
        final_atoms: 2,
    };
    let proj = project_to_hull(
        &target,
        &initial,
        |dir| {
            let vals: Vec<f64> = atom_coords
                .iter()
                .map(|c| c.iter().zip(dir).map(|(a, b)| a * b).sum())
                .collect();
            let i = if vals[0] <= vals[1] { 0 } else { 1 };
            (i, atom_coords[i].clone(), vals[i])
        },
        &hull_cfg,
    );

    let mut minimizer_op = HermitianOp::zeros(2);
    let mut atoms = Vec::new();
    for &(id, weight) in &proj.weights {
        let lambda = endpoints[id];
        let state = atom_state(lambda);
        minimizer_op = &minimizer_op + &(state.op() * weight);
        atoms.push(Atom {
            weight,
            state,
            alice: Some([0.0, 0.0, lambda]),
            bob: None,
        });
    }
    let minimizer = DensityMatrix::new(minimizer_op).expect("segment mixture");

    DistanceReport {
        distance: proj.upper,
        lower_bound: proj.lower,
        upper_bound: proj.upper,
        gap: proj.upper - proj.lower,
        iterations: proj.iterations,
        converged: proj.converged,
        minimizer,
        atoms,
        trace: proj.trace,
    }
}

/// `1/2 (1 + lambda sigma_z)` for tests and the model oracle.
pub fn sz_segment_state(lambda: f64) -> Result<DensityMatrix> {
    if lambda.abs() > 1.0 + 1e-12 {
        return Err(Error::NotAState(format!("|lambda| = {} > 1", lambda.abs())));
    }
    Ok(crate::states::qubit_state([0.0, 0.0, lambda]))
}
