//! The reproduction suite: every closed-form anchor value the library is
//! built around, recomputed and compared against its expected value.

use entgeo::bell::{bell_max_violation, chsh_max_violation, chsh_operator};
use entgeo::distance::{distance, distance_sz_model, distance_sz_numeric, SolverConfig, SzState};
use entgeo::geometry::sample_regions;
use entgeo::oracle::{max_over_anticorrelated, max_over_separable, min_over_separable};
use entgeo::pauli::{hs_distance, hs_inner, hs_norm, sigma_dot_sigma, HermitianOp};
use entgeo::states::{bell_projectors, is_ppt, partial_transpose_b, product_state, werner};
use entgeo::witness::{a_max, b_of_w, flip_operator, is_tangent, witness_sensitivity};
use serde::Serialize;

use crate::output::{csv_num, round_sig};

#[derive(Debug, Serialize)]
pub struct ClaimResult {
    pub claim: String,
    pub expected: f64,
    pub computed: f64,
    pub abs_diff: f64,
    pub tol: f64,
    pub pass: bool,
}

struct Suite {
    cfg: SolverConfig,
    rows: Vec<ClaimResult>,
}

impl Suite {
    fn add(&mut self, claim: &str, expected: f64, computed: f64, tol: f64) {
        let abs_diff = (computed - expected).abs();
        self.rows.push(ClaimResult {
            claim: claim.to_string(),
            expected,
            computed,
            abs_diff,
            tol,
            pass: abs_diff <= tol,
        });
    }
}

fn werner_line(alpha: f64) -> f64 {
    3.0_f64.sqrt() / 2.0 * (alpha - 1.0 / 3.0)
}

fn matrix_dev(op: &HermitianOp, expect: &[[f64; 4]; 4], scale: f64) -> f64 {
    let mut dev = 0.0_f64;
    for i in 0..4 {
        for j in 0..4 {
            let z = op.entry(i, j);
            dev = dev.max((z.re - expect[i][j] * scale).abs().max(z.im.abs()));
        }
    }
    dev
}

/// Run every claim; returns the rows (callers decide presentation and exit).
pub fn run(cfg: &SolverConfig, filter: Option<&str>) -> Vec<ClaimResult> {
    let mut s = Suite {
        cfg: cfg.clone(),
        rows: Vec::new(),
    };
    let cfg = s.cfg.clone();
    let ocfg = cfg.oracle.clone();
    let sqrt3 = 3.0_f64.sqrt();
    let sqrt2 = std::f64::consts::SQRT_2;

    // -- the Hilbert-Schmidt space ------------------------------------------------
    s.add(
        "correlation operator norm = 2 sqrt 3",
        2.0 * sqrt3,
        hs_norm(&sigma_dot_sigma()),
        1e-12,
    );
    let singlet = werner(1.0).unwrap();
    s.add(
        "singlet is pure: HS norm 1",
        1.0,
        hs_norm(singlet.op()),
        1e-12,
    );
    s.add(
        "trace inner product of the tracial state with identity",
        1.0,
        hs_inner(
            entgeo::states::DensityMatrix::maximally_mixed(4).op(),
            &HermitianOp::identity(4),
        )
        .unwrap(),
        1e-14,
    );

    // -- singlet vs the correlation witness ---------------------------------------
    let neg_ss = -&sigma_dot_sigma();
    let singlet_val = hs_inner(singlet.op(), &neg_ss).unwrap();
    let sep_max = max_over_separable(&neg_ss, &ocfg).unwrap().value;
    s.add("singlet against -s.s = 3", 3.0, singlet_val, 1e-12);
    s.add("separable maximum of -s.s = 1", 1.0, sep_max, 1e-9);
    s.add(
        "violation gap of -s.s = 2",
        2.0,
        singlet_val - sep_max,
        1e-9,
    );
    s.add(
        "scaled witness on the werner line at alpha 0.8",
        0.8 * sqrt3 / 2.0,
        hs_inner(
            werner(0.8).unwrap().op(),
            &(&neg_ss * (1.0 / (2.0 * sqrt3))),
        )
        .unwrap(),
        1e-12,
    );

    // -- werner distances ----------------------------------------------------------
    for alpha in [0.4, 0.5, 2.0 / 3.0, 0.8, 1.0] {
        let d = distance(&werner(alpha).unwrap(), &cfg).unwrap().distance;
        s.add(
            &format!("werner distance at alpha {}", round_sig(alpha, 6)),
            werner_line(alpha),
            d,
            1e-6,
        );
    }
    for alpha in [0.0, 0.2, 1.0 / 3.0] {
        let d = distance(&werner(alpha).unwrap(), &cfg).unwrap().distance;
        s.add(
            &format!("werner separable at alpha {}", round_sig(alpha, 6)),
            0.0,
            d,
            1e-6,
        );
    }
    s.add(
        "werner violation at alpha 0.8",
        werner_line(0.8),
        b_of_w(&werner(0.8).unwrap(), &cfg).unwrap(),
        1e-6,
    );
    let rep = distance(
        &singlet,
        &SolverConfig {
            tol: 1e-12,
            ..cfg.clone()
        },
    )
    .unwrap();
    s.add(
        "singlet minimizer is the boundary werner state",
        0.0,
        hs_distance(rep.minimizer.op(), werner(1.0 / 3.0).unwrap().op()).unwrap(),
        1e-5,
    );
    let wit = a_max(&singlet, &werner(1.0 / 3.0).unwrap(), &ocfg).unwrap();
    let flip_normalized = &(&HermitianOp::identity(4) + &sigma_dot_sigma()) * (1.0 / (2.0 * sqrt3));
    s.add(
        "singlet witness is the normalized flip operator",
        0.0,
        hs_distance(&wit.op, &flip_normalized).unwrap(),
        1e-9,
    );
    s.add(
        "flip operator separable minimum",
        0.0,
        {
            let (tangent, r) = is_tangent(&flip_operator(), &ocfg).unwrap();
            if tangent {
                r.value
            } else {
                f64::INFINITY
            }
        },
        1e-10,
    );

    // -- explicit matrices ----------------------------------------------------------
    let flip_expect = [
        [2.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 2.0, 0.0],
        [0.0, 2.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 2.0],
    ];
    s.add(
        "flip operator matrix form",
        0.0,
        matrix_dev(&flip_operator(), &flip_expect, 0.25),
        1e-14,
    );
    let pt_expect = [
        [2.0, 0.0, 0.0, 2.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [2.0, 0.0, 0.0, 2.0],
    ];
    s.add(
        "partial transpose of the flip operator",
        0.0,
        matrix_dev(
            &partial_transpose_b(&flip_operator()).unwrap(),
            &pt_expect,
            0.25,
        ),
        1e-14,
    );
    let corner = [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ];
    s.add(
        "product state (+z,+z) matrix form",
        0.0,
        matrix_dev(
            product_state([0.0, 0.0, 1.0], [0.0, 0.0, 1.0])
                .unwrap()
                .op(),
            &corner,
            1.0,
        ),
        1e-14,
    );

    // -- spectra and separability ---------------------------------------------------
    let spectrum_dev = {
        let mut worst = 0.0_f64;
        for alpha in [-1.0 / 3.0, 0.0, 0.4, 0.8, 1.0] {
            let vals = werner(alpha).unwrap().eigenvalues();
            let mut expect = vec![
                (1.0 - alpha) / 4.0,
                (1.0 - alpha) / 4.0,
                (1.0 - alpha) / 4.0,
                (1.0 + 3.0 * alpha) / 4.0,
            ];
            expect.sort_by(f64::total_cmp);
            for (v, e) in vals.iter().zip(&expect) {
                worst = worst.max((v - e).abs());
            }
        }
        worst
    };
    s.add(
        "werner spectrum (1+3a)/4, (1-a)/4",
        0.0,
        spectrum_dev,
        1e-12,
    );
    s.add(
        "singlet has negative partial transpose",
        0.0,
        if is_ppt(&singlet).unwrap() { 1.0 } else { 0.0 },
        0.0,
    );
    s.add(
        "boundary werner state is separable",
        1.0,
        if is_ppt(&werner(1.0 / 3.0).unwrap()).unwrap() {
            1.0
        } else {
            0.0
        },
        0.0,
    );

    // -- bell projectors --------------------------------------------------------------
    let projs = bell_projectors();
    let mut ortho_dev = 0.0_f64;
    let mut sum = HermitianOp::zeros(4);
    for (i, p) in projs.iter().enumerate() {
        sum = &sum + p.op();
        for (j, q) in projs.iter().enumerate() {
            let expect = if i == j { 1.0 } else { 0.0 };
            ortho_dev = ortho_dev.max((hs_inner(p.op(), q.op()).unwrap() - expect).abs());
        }
    }
    s.add("bell projectors are orthonormal", 0.0, ortho_dev, 1e-13);
    s.add(
        "bell projectors sum to the identity",
        0.0,
        hs_distance(&sum, &HermitianOp::identity(4)).unwrap(),
        1e-13,
    );
    s.add(
        "singlet equals the first projector",
        0.0,
        hs_distance(singlet.op(), projs[0].op()).unwrap(),
        1e-13,
    );

    // -- chsh --------------------------------------------------------------------------
    let (chsh_val, setting) = chsh_max_violation(&ocfg).unwrap();
    s.add(
        "chsh singlet maximum = 2 sqrt 2",
        2.0 * sqrt2,
        chsh_val,
        1e-9,
    );
    let mut angles = setting.angles();
    angles.sort_by(f64::total_cmp);
    s.add(
        "chsh smallest angle = 45 degrees",
        45.0,
        angles[0].to_degrees(),
        1e-6,
    );
    s.add(
        "chsh largest angle = 135 degrees",
        135.0,
        angles[3].to_degrees(),
        1e-6,
    );
    s.add(
        "chsh separable maximum = sqrt 2",
        sqrt2,
        max_over_separable(&chsh_operator(&setting), &ocfg)
            .unwrap()
            .value,
        1e-6,
    );

    // -- original inequality --------------------------------------------------------------
    let bell = bell_max_violation(&ocfg).unwrap();
    s.add("bell singlet maximum = 3/2", 1.5, bell.value, 1e-9);
    let mut bangles = bell.setting.angles();
    bangles.sort_by(f64::total_cmp);
    s.add(
        "bell small angles = 60 degrees",
        60.0,
        bangles[0].to_degrees(),
        1e-5,
    );
    s.add(
        "bell large angle = 120 degrees",
        120.0,
        bangles[2].to_degrees(),
        1e-5,
    );
    s.add(
        "bell anticorrelated ceiling = 3/4",
        0.75,
        bell.sep_anticorr_max,
        1e-6,
    );
    s.add(
        "bell all-separable ceiling = sqrt(3)/2",
        sqrt3 / 2.0,
        bell.sep_all_max,
        1e-6,
    );

    // -- one-spin model ----------------------------------------------------------------------
    s.add(
        "one-spin distance at (1,0,0) = 1/sqrt 2",
        1.0 / sqrt2,
        distance_sz_numeric(&SzState::new([1.0, 0.0, 0.0]).unwrap(), &cfg).distance,
        1e-8,
    );
    s.add(
        "one-spin closed form at (0.6, 0.8, 0)",
        1.0 / sqrt2,
        distance_sz_model(&SzState::new([0.6, 0.8, 0.0]).unwrap()).0,
        1e-12,
    );
    let onespin = SzState::new([0.3, 0.4, 0.5]).unwrap();
    s.add(
        "one-spin numeric matches the closed form",
        distance_sz_model(&onespin).0,
        distance_sz_numeric(&onespin, &cfg).distance,
        1e-9,
    );

    // -- anticorrelated oracle ------------------------------------------------------------------
    s.add(
        "flip operator anticorrelated ceiling = 0",
        0.0,
        max_over_anticorrelated(&flip_operator(), &ocfg)
            .unwrap()
            .value,
        1e-10,
    );
    s.add(
        "identity oracle minimum = 1",
        1.0,
        min_over_separable(&HermitianOp::identity(4), &ocfg)
            .unwrap()
            .value,
        1e-12,
    );

    // -- witness response -------------------------------------------------------------------------
    s.add(
        "witness response at zero perturbation",
        0.0,
        witness_sensitivity([0.0, 0.0, 1.0], [[0.0; 3]; 3]).unwrap(),
        1e-12,
    );

    // -- c-space geometry --------------------------------------------------------------------------
    let samples = sample_regions(21);
    let frac = samples.iter().filter(|x| x.separable).count() as f64 / samples.len() as f64;
    s.add(
        "separable volume fraction of the cube = 1/6",
        1.0 / 6.0,
        frac,
        0.05 / 6.0,
    );

    match filter {
        Some(f) => s.rows.into_iter().filter(|r| r.claim.contains(f)).collect(),
        None => s.rows,
    }
}

/// Aligned text table.
pub fn format_table(rows: &[ClaimResult]) -> String {
    let name_w = rows.iter().map(|r| r.claim.len()).max().unwrap_or(8).max(8);
    let mut out = format!(
        "{:<name_w$}  {:>15}  {:>15}  {:>10}  {}\n",
        "claim", "expected", "computed", "|diff|", "pass"
    );
    for r in rows {
        out.push_str(&format!(
            "{:<name_w$}  {:>15}  {:>15}  {:>10.2e}  {}\n",
            r.claim,
            csv_num(r.expected),
            csv_num(r.computed),
            r.abs_diff,
            if r.pass { "ok" } else { "FAIL" }
        ));
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    out.push_str(&format!(
        "{} claims, {} passed, {} failed\n",
        rows.len(),
        rows.len() - failed,
        failed
    ));
    out
}
