//! Linear optimization over the separable set.
//!
//! Extrema of a linear functional over the convex set of separable states are
//! attained at pure product states, so minimizing `(rho|X)` reduces to the
//! bilinear objective
//!
//! ```text
//! f(n, m) = alpha + a.n + b.m + n^T C m,     |n| = |m| = 1,
//! ```
//!
//! in the Pauli coordinates of `X`. With one side fixed the optimum over the
//! other is a closed-form sphere point, so alternating updates descend
//! monotonically; a deterministic multistart (six axis starts plus seeded
//! random starts) handles the nonconvexity. A Fibonacci-sphere grid search
//! provides an independent brute-force cross-check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::la::{dot3, matvec3, norm3, scale3, tmatvec3, unit3};
use crate::pauli::{hs_inner, to_pauli, HermitianOp, PauliCoeffs2Q};
use crate::states::ProductState;

/// Multistart and convergence knobs for the alternating oracle.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct OracleConfig {
    /// Random restarts on top of the six deterministic axis starts.
    pub restarts: usize,
    /// Iteration cap per start.
    pub max_iters: usize,
    /// Stop when the objective improves by less than this.
    pub tol: f64,
    /// Seed for the restart stream.
    pub seed: u64,
    /// Points per sphere for the grid cross-check.
    pub grid_resolution: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_iters: 500,
            tol: 1e-13,
            seed: 0x5EED,
            grid_resolution: 200,
        }
    }
}

/// Result of a separable-set optimization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleResult {
    /// Extremal expectation value `(rho|X)`.
    pub value: f64,
    /// The extremizing pure product state.
    pub state: ProductState,
    /// Number of starts executed.
    pub restarts_used: usize,
    /// Whether the winning start reached the improvement tolerance.
    pub converged: bool,
}

struct Objective {
    alpha: f64,
    a: [f64; 3],
    b: [f64; 3],
    c: [[f64; 3]; 3],
}

impl Objective {
    fn from_op(x: &HermitianOp) -> Result<Self> {
        if x.dim() != 4 {
            return Err(Error::DimMismatch {
                expected: 4,
                got: x.dim(),
            });
        }
        let PauliCoeffs2Q { alpha, a, b, c } = to_pauli(x)?;
        Ok(Self { alpha, a, b, c })
    }

    fn eval(&self, n: [f64; 3], m: [f64; 3]) -> f64 {
        self.alpha + dot3(self.a, n) + dot3(self.b, m) + dot3(n, matvec3(&self.c, m))
    }
}

const AXIS_STARTS: [[f64; 3]; 6] = [
    [1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, -1.0, 0.0],
    [0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0],
];

/// One see-saw run from an initial Bob vector. Each half-step is the exact
/// sphere minimizer with the other side frozen, so the objective never
/// increases; a zero update direction means every point is optimal for that
/// half-step and the previous vector is kept.
fn seesaw_min(
    obj: &Objective,
    m0: [f64; 3],
    cfg: &OracleConfig,
) -> ([f64; 3], [f64; 3], f64, bool) {
    let mut m = m0;
    let mut n = unit3([
        -(obj.a[0] + matvec3(&obj.c, m)[0]),
        -(obj.a[1] + matvec3(&obj.c, m)[1]),
        -(obj.a[2] + matvec3(&obj.c, m)[2]),
    ])
    .unwrap_or([0.0, 0.0, 1.0]);
    let mut value = obj.eval(n, m);
    let mut converged = false;
    for _ in 0..cfg.max_iters {
        let dn = scale3(
            [
                obj.a[0] + matvec3(&obj.c, m)[0],
                obj.a[1] + matvec3(&obj.c, m)[1],
                obj.a[2] + matvec3(&obj.c, m)[2],
            ],
            -1.0,
        );
        if let Some(u) = unit3(dn) {
            n = u;
        }
        let dm = scale3(
            [
                obj.b[0] + tmatvec3(&obj.c, n)[0],
                obj.b[1] + tmatvec3(&obj.c, n)[1],
                obj.b[2] + tmatvec3(&obj.c, n)[2],
            ],
            -1.0,
        );
        if let Some(u) = unit3(dm) {
            m = u;
        }
        let next = obj.eval(n, m);
        debug_assert!(next <= value + 1e-12, "see-saw step increased objective");
        if value - next < cfg.tol {
            value = next;
            converged = true;
            break;
        }
        value = next;
    }
    (n, m, value, converged)
}

/// Minimum of `(rho|X)` over separable states, with the minimizing pure
/// product state. The reported value is recomputed from the returned state
/// through the trace inner product, so it is self-consistent by construction.
pub fn min_over_separable(x: &HermitianOp, cfg: &OracleConfig) -> Result<OracleResult> {
    let obj = Objective::from_op(x)?;
    let mut rng = crate::sample::rng_from_seed(cfg.seed);
    let mut best: Option<([f64; 3], [f64; 3], f64, bool)> = None;
    let mut starts = 0usize;
    for m0 in AXIS_STARTS
        .into_iter()
        .chain((0..cfg.restarts).map(|_| crate::sample::unit_vector(&mut rng)))
    {
        starts += 1;
        let run = seesaw_min(&obj, m0, cfg);
        let better = match &best {
            None => true,
            Some(b) => run.2 < b.2,
        };
        if better {
            best = Some(run);
        }
    }
    let (n, m, _, converged) = best.expect("at least one start");
    let state = ProductState::new(n, m)?;
    let value = hs_inner(state.density().op(), x)?;
    Ok(OracleResult {
        value,
        state,
        restarts_used: starts,
        converged,
    })
}

/// Maximum of `(rho|X)` over separable states (sign-flipped minimum).
pub fn max_over_separable(x: &HermitianOp, cfg: &OracleConfig) -> Result<OracleResult> {
    let mut r = min_over_separable(&-x, cfg)?;
    r.value = -r.value;
    Ok(r)
}

/// Maximum of `(rho|X)` over the anti-correlated products `m = -n`, by
/// projected gradient ascent on the sphere with backtracking line search.
pub fn max_over_anticorrelated(x: &HermitianOp, cfg: &OracleConfig) -> Result<OracleResult> {
    let obj = Objective::from_op(x)?;
    // g(n) = alpha + (a - b).n - n^T C n
    let v = [
        obj.a[0] - obj.b[0],
        obj.a[1] - obj.b[1],
        obj.a[2] - obj.b[2],
    ];
    let eval = |n: [f64; 3]| obj.alpha + dot3(v, n) - dot3(n, matvec3(&obj.c, n));
    let grad = |n: [f64; 3]| {
        let cn = matvec3(&obj.c, n);
        let ctn = tmatvec3(&obj.c, n);
        [
            v[0] - cn[0] - ctn[0],
            v[1] - cn[1] - ctn[1],
            v[2] - cn[2] - ctn[2],
        ]
    };

    let mut rng = crate::sample::rng_from_seed(cfg.seed);
    let mut best_n = [0.0, 0.0, 1.0];
    let mut best_val = f64::NEG_INFINITY;
    let mut best_conv = false;
    let mut starts = 0usize;
    for n0 in AXIS_STARTS
        .into_iter()
        .chain((0..cfg.restarts).map(|_| crate::sample::unit_vector(&mut rng)))
    {
        starts += 1;
        let mut n = n0;
        let mut val = eval(n);
        let mut converged = false;
        for _ in 0..cfg.max_iters {
            let g = grad(n);
            let radial = dot3(g, n);
            let r = [
                g[0] - radial * n[0],
                g[1] - radial * n[1],
                g[2] - radial * n[2],
            ];
            if norm3(r) < 1e-12 {
                converged = true;
                break;
            }
            let mut step = 1.0;
            let mut improved = false;
            while step > 1e-16 {
                let cand = unit3([n[0] + step * r[0], n[1] + step * r[1], n[2] + step * r[2]])
                    .unwrap_or(n);
                let cv = eval(cand);
                if cv > val {
                    n = cand;
                    val = cv;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if !improved {
                converged = true;
                break;
            }
        }
        if val > best_val {
            best_val = val;
            best_n = n;
            best_conv = converged;
        }
    }
    let state = ProductState::new(best_n, scale3(best_n, -1.0))?;
    let value = hs_inner(state.density().op(), x)?;
    Ok(OracleResult {
        value,
        state,
        restarts_used: starts,
        converged: best_conv,
    })
}

/// Deterministic near-uniform sphere covering (golden-angle spiral).
pub fn fibonacci_sphere(count: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / count as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// Exact linear extremum over a Fibonacci point set: the grid point
/// maximizing `w . p`. Every maximizer lies within the covering radius of
/// the ideal direction, and Fibonacci points are ordered linearly in `z`,
/// so scanning a `z`-band around the ideal direction is equivalent to the
/// full scan.
fn grid_linear_max(points: &[[f64; 3]], w: [f64; 3]) -> (usize, f64) {
    let k = points.len();
    let wn = norm3(w);
    if wn < 1e-300 {
        return (0, 0.0);
    }
    let u = scale3(w, 1.0 / wn);
    // generous covering-radius bound for Fibonacci spheres
    let cap = 4.0 / (k as f64).sqrt();
    let z_lo = (u[2] - cap).max(-1.0);
    let z_hi = (u[2] + cap).min(1.0);
    // z_i = 1 - (2i + 1)/k is decreasing in i
    let i_lo = (((1.0 - z_hi) * k as f64 - 1.0) / 2.0).floor().max(0.0) as usize;
    let i_hi = ((((1.0 - z_lo) * k as f64 - 1.0) / 2.0).ceil() as usize).min(k - 1);
    let mut best = (i_lo, f64::NEG_INFINITY);
    for (i, p) in points[i_lo..=i_hi].iter().enumerate() {
        let d = dot3(*p, w);
        if d > best.1 {
            best = (i_lo + i, d);
        }
    }
    best
}

/// Brute-force minimum of `(rho|X)` over all pairs of points from a
/// Fibonacci sphere with `resolution^2` points per side. Independent of the
/// alternating oracle. The banded inner search returns exactly the pair-grid
/// minimum; the error against the true minimum shrinks like
/// `O(1 / resolution^2)`.
pub fn grid_min_over_separable(x: &HermitianOp, resolution: usize) -> Result<OracleResult> {
    assert!(resolution >= 8, "grid resolution must be at least 8");
    let obj = Objective::from_op(x)?;
    let points = fibonacci_sphere(resolution * resolution);
    let mut best = (f64::INFINITY, [0.0, 0.0, 1.0], [0.0, 0.0, 1.0]);
    for &n in &points {
        let base = obj.alpha + dot3(obj.a, n);
        let row = tmatvec3(&obj.c, n);
        // min over m of (b + C^T n) . m  =  -max of the negated direction
        let w = [
            -(obj.b[0] + row[0]),
            -(obj.b[1] + row[1]),
            -(obj.b[2] + row[2]),
        ];
        let (idx, dot) = grid_linear_max(&points, w);
        let f = base - dot;
        if f < best.0 {
            best = (f, n, points[idx]);
        }
    }
    let state = ProductState::new(best.1, best.2)?;
    let value = hs_inner(state.density().op(), x)?;
    Ok(OracleResult {
        value,
        state,
        restarts_used: 0,
        converged: true,
    })
}
