//! Projection of a point onto the convex hull of a set known only through a
//! linear-minimization oracle (Gilbert's scheme, with fully corrective
//! weight updates in the spirit of Wolfe's minimum-norm-point method).
//!
//! Each outer iteration asks the oracle for the extreme point minimizing
//! `<atom, p - target>`. That answer yields both a certified lower bound on
//! the projection distance (the tangent-plane bound) and a new atom for the
//! hull representation; the upper bound is the distance of the current hull
//! point. The loop stops when the two-sided gap closes. Weights over the
//! collected atoms are re-optimized exactly by an active-set solver for the
//! simplex-constrained least-squares subproblem, which keeps the upper bound
//! monotone and makes convergence effectively finite on polytopal faces.

use crate::la::{nullspace_vector, solve_dense};

#[derive(Debug, Clone)]
pub(crate) struct HullConfig {
    /// Stop when `upper - lower` falls below this.
    pub tol: f64,
    /// Outer iteration (oracle call) cap.
    pub max_iters: usize,
    /// Atom-list size that triggers a mid-run Caratheodory reduction.
    pub max_atoms: usize,
    /// Support size enforced on the final representation.
    pub final_atoms: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct HullProjection {
    /// `(atom id, weight)` for the final convex combination.
    pub weights: Vec<(usize, f64)>,
    /// Coordinates of the projected point.
    pub point: Vec<f64>,
    pub upper: f64,
    pub lower: f64,
    pub iterations: usize,
    pub converged: bool,
    /// `(upper, lower)` per oracle call.
    pub trace: Vec<(f64, f64)>,
}

struct Hull {
    ids: Vec<usize>,
    coords: Vec<Vec<f64>>,
    w: Vec<f64>,
    dim: usize,
}

impl Hull {
    fn point(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.dim];
        for (zi, &wi) in self.coords.iter().zip(&self.w) {
            for (pk, zk) in p.iter_mut().zip(zi) {
                *pk += wi * zk;
            }
        }
        p
    }

    fn find(&self, z: &[f64]) -> Option<usize> {
        self.coords.iter().position(|c| {
            c.iter()
                .zip(z)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0_f64, f64::max)
                < 1e-13
        })
    }

    fn prune(&mut self) {
        let keep: Vec<usize> = (0..self.w.len()).filter(|&i| self.w[i] > 1e-14).collect();
        if keep.len() == self.w.len() {
            return;
        }
        self.ids = keep.iter().map(|&i| self.ids[i]).collect();
        self.coords = keep.iter().map(|&i| self.coords[i].clone()).collect();
        self.w = keep.iter().map(|&i| self.w[i]).collect();
        let total: f64 = self.w.iter().sum();
        for wi in &mut self.w {
            *wi /= total;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn project_to_hull<F>(
    target: &[f64],
    initial: &[(usize, Vec<f64>)],
    mut oracle: F,
    cfg: &HullConfig,
) -> HullProjection
where
    F: FnMut(&[f64]) -> (usize, Vec<f64>, f64),
{
    let dim = target.len();
    let mut hull = Hull {
        ids: initial.iter().map(|(id, _)| *id).collect(),
        coords: initial.iter().map(|(_, z)| z.clone()).collect(),
        w: vec![1.0 / initial.len() as f64; initial.len()],
        dim,
    };

    let mut best_lower = 0.0_f64; // the projection distance is nonnegative
    let mut trace = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    let mut upper;
    let mut best_upper = f64::INFINITY;
    let mut last_progress = 0usize;

    loop {
        let p = hull.point();
        let g: Vec<f64> = p.iter().zip(target).map(|(a, b)| a - b).collect();
        upper = dot(&g, &g).sqrt();
        if upper < best_upper - 1e-15 {
            best_upper = upper;
            last_progress = iterations;
        }
        if upper < 1e-14 {
            best_lower = best_lower.min(upper);
            trace.push((upper, best_lower));
            converged = true;
            break;
        }
        // neither bound has moved for a while: the oracle noise floor
        if iterations >= cfg.max_iters || iterations > last_progress + 50 {
            break;
        }
        iterations += 1;

        let (id, z_new, value) = oracle(&g);
        debug_assert_eq!(z_new.len(), dim);
        // tangent-plane lower bound: min over the hull of <atom - target, g/|g|>
        let lower_k = (value - dot(target, &g)) / upper;
        if lower_k > best_lower + 1e-15 {
            last_progress = iterations;
        }
        best_lower = best_lower.max(lower_k);
        trace.push((upper, best_lower));
        if upper - best_lower <= cfg.tol {
            converged = true;
            break;
        }

        // descent step toward the new atom (closed-form, clipped to [0,1])
        let atom_idx = match hull.find(&z_new) {
            Some(i) => i,
            None => {
                hull.ids.push(id);
                hull.coords.push(z_new);
                hull.w.push(0.0);
                hull.w.len() - 1
            }
        };
        let d: Vec<f64> = hull.coords[atom_idx]
            .iter()
            .zip(&p)
            .map(|(z, pk)| z - pk)
            .collect();
        let dd = dot(&d, &d);
        if dd > 1e-300 {
            let t = (-dot(&g, &d) / dd).clamp(0.0, 1.0);
            for wi in hull.w.iter_mut() {
                *wi *= 1.0 - t;
            }
            hull.w[atom_idx] += t;
        }

        // fully corrective step: exact least-squares weights over all atoms
        let corrected = simplex_lsq(&hull.coords, target, &hull.w);
        let before = {
            let q = hull.point();
            let gq: Vec<f64> = q.iter().zip(target).map(|(a, b)| a - b).collect();
            dot(&gq, &gq)
        };
        let after = {
            let mut q = vec![0.0; dim];
            for (zi, &wi) in hull.coords.iter().zip(&corrected) {
                for (qk, zk) in q.iter_mut().zip(zi) {
                    *qk += wi * zk;
                }
            }
            let gq: Vec<f64> = q.iter().zip(target).map(|(a, b)| a - b).collect();
            dot(&gq, &gq)
        };
        if after <= before {
            hull.w = corrected;
        }
        hull.prune();
        if hull.w.len() > cfg.max_atoms {
            caratheodory_reduce(&mut hull, cfg.final_atoms);
        }
    }

    caratheodory_reduce(&mut hull, cfg.final_atoms);
    let point = hull.point();
    let g: Vec<f64> = point.iter().zip(target).map(|(a, b)| a - b).collect();
    upper = dot(&g, &g).sqrt();
    let lower = best_lower.min(upper);

    HullProjection {
        weights: hull
            .ids
            .iter()
            .copied()
            .zip(hull.w.iter().copied())
            .collect(),
        point,
        upper,
        lower,
        iterations,
        converged,
        trace,
    }
}

/// Minimize `|sum_i w_i z_i - y|^2` over the probability simplex by a primal
/// active-set method. Each working-set subproblem is the equality-constrained
/// least squares solved through its KKT system; negative coordinates trigger
/// a step to the boundary and a drop, and the outer loop re-admits atoms
/// whose multiplier violates optimality.
fn simplex_lsq(z: &[Vec<f64>], y: &[f64], warm: &[f64]) -> Vec<f64> {
    let k = z.len();
    if k == 1 {
        return vec![1.0];
    }
    let gram: Vec<Vec<f64>> = (0..k)
        .map(|i| (0..k).map(|j| dot(&z[i], &z[j])).collect())
        .collect();
    let rhs: Vec<f64> = (0..k).map(|i| dot(&z[i], y)).collect();
    let scale = gram
        .iter()
        .flat_map(|r| r.iter().map(|x| x.abs()))
        .fold(1e-300, f64::max);
    let ridge = 1e-13 * scale;

    let mut w: Vec<f64> = warm.iter().map(|&x| x.max(0.0)).collect();
    let total: f64 = w.iter().sum();
    if total <= 0.0 {
        w[0] = 1.0;
    } else {
        for wi in &mut w {
            *wi /= total;
        }
    }
    let mut active: Vec<bool> = w.iter().map(|&x| x > 0.0).collect();

    for _pivot in 0..4 * k + 16 {
        let idx: Vec<usize> = (0..k).filter(|&i| active[i]).collect();
        let na = idx.len();
        let mut a = vec![vec![0.0; na + 1]; na + 1];
        let mut b = vec![0.0; na + 1];
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                a[r][c] = gram[i][j];
            }
            a[r][r] += ridge;
            a[r][na] = 1.0;
            a[na][r] = 1.0;
            b[r] = rhs[i];
        }
        b[na] = 1.0;
        let sol = match solve_dense(a, b) {
            Some(s) => s,
            None => return w, // keep the feasible warm start
        };
        let mu = &sol[..na];
        let nu = sol[na];

        if mu.iter().all(|&v| v >= -1e-12) {
            let mut new_w = vec![0.0; k];
            for (r, &i) in idx.iter().enumerate() {
                new_w[i] = mu[r].max(0.0);
            }
            let s: f64 = new_w.iter().sum();
            for wi in &mut new_w {
                *wi /= s;
            }
            w = new_w;
            // check the excluded atoms' multipliers: grad_i = <z_i, p - y>
            let mut p = vec![0.0; y.len()];
            for (zi, &wi) in z.iter().zip(&w) {
                for (pk, zk) in p.iter_mut().zip(zi) {
                    *pk += wi * zk;
                }
            }
            let mut entering: Option<(usize, f64)> = None;
            for i in 0..k {
                if active[i] {
                    continue;
                }
                let q = dot(&z[i], &p) - rhs[i];
                let slack = q + nu;
                if slack < -1e-11 * (1.0 + scale) {
                    match entering {
                        Some((_, best)) if slack >= best => {}
                        _ => entering = Some((i, slack)),
                    }
                }
            }
            match entering {
                Some((i, _)) => active[i] = true,
                None => return w,
            }
        } else {
            // step from w toward mu until the first weight hits zero
            let mut t_max = 1.0_f64;
            let mut drop = None;
            for (r, &i) in idx.iter().enumerate() {
                if mu[r] < 0.0 && w[i] > mu[r] {
                    let t = w[i] / (w[i] - mu[r]);
                    if t < t_max {
                        t_max = t;
                        drop = Some(i);
                    }
                }
            }
            for (r, &i) in idx.iter().enumerate() {
                w[i] += t_max * (mu[r] - w[i]);
                if w[i] < 0.0 {
                    w[i] = 0.0;
                }
            }
            if let Some(i) = drop {
                w[i] = 0.0;
                active[i] = false;
            }
        }
    }
    w
}

/// Reduce the support of a convex combination without moving the combined
/// point: repeatedly shift along an affine dependence of the support atoms
/// until a weight reaches zero (Caratheodory).
fn caratheodory_reduce(hull: &mut Hull, max_support: usize) {
    loop {
        hull.prune();
        let k = hull.w.len();
        if k <= max_support {
            return;
        }
        // rows: coordinates plus the all-ones row (affine dependence)
        let mut rows: Vec<Vec<f64>> = (0..hull.dim)
            .map(|r| hull.coords.iter().map(|z| z[r]).collect())
            .collect();
        rows.push(vec![1.0; k]);
        let mut nv = match nullspace_vector(&rows, k) {
            Some(v) => v,
            None => return, // affinely independent; nothing to reduce
        };
        if nv.iter().all(|&x| x <= 0.0) {
            for x in &mut nv {
                *x = -*x;
            }
        }
        let mut tau = f64::INFINITY;
        let mut kill = None;
        for i in 0..k {
            if nv[i] > 1e-14 {
                let t = hull.w[i] / nv[i];
                if t < tau {
                    tau = t;
                    kill = Some(i);
                }
            }
        }
        let Some(kill) = kill else { return };
        for i in 0..k {
            hull.w[i] -= tau * nv[i];
            if hull.w[i] < 1e-15 {
                hull.w[i] = 0.0;
            }
        }
        hull.w[kill] = 0.0;
        let total: f64 = hull.w.iter().sum();
        for wi in &mut hull.w {
            *wi /= total;
        }
    }
}
