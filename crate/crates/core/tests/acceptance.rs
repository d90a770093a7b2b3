//! Acceptance suite: every quantitative claim the library is built around,
//! one test per criterion, each printing a pass/fail line. Run with
//! `cargo test -p entgeo --test acceptance -- --nocapture` to see the table.

use std::time::Instant;

use entgeo::bell::{bell_max_violation, chsh_max_for_state, chsh_max_violation, chsh_operator};
use entgeo::distance::{distance, distance_sz_model, distance_sz_numeric, SolverConfig, SzState};
use entgeo::geometry::{ppt_agrees, sample_regions};
use entgeo::oracle::{
    grid_min_over_separable, max_over_separable, min_over_separable, OracleConfig,
};
use entgeo::pauli::{hs_distance, hs_inner, hs_norm, sigma, sigma_dot_sigma, HermitianOp};
use entgeo::states::{is_ppt, werner, DensityMatrix};
use entgeo::witness::{a_max, b_of_w};
use entgeo::{kron, to_pauli};

const SQRT2: f64 = std::f64::consts::SQRT_2;

struct Criterion {
    name: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }

    fn close(&mut self, actual: f64, expected: f64, tol: f64, label: &str) {
        let diff = (actual - expected).abs();
        self.check(diff < tol, || {
            format!("{label}: {actual} vs {expected} (|diff| = {diff:.3e}, tol {tol:.1e})")
        });
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("[PASS] {}", self.name);
        } else {
            println!("[FAIL] {}: {}", self.name, self.failures.join("; "));
        }
        assert!(
            self.failures.is_empty(),
            "{}: {:?}",
            self.name,
            self.failures
        );
    }
}

fn werner_line(alpha: f64) -> f64 {
    3.0_f64.sqrt() / 2.0 * (alpha - 1.0 / 3.0)
}

#[test]
fn acceptance_werner_line() {
    let mut c = Criterion::new("werner line: D and B follow sqrt(3)/2 (alpha - 1/3)");
    let cfg = SolverConfig::default();
    let start = Instant::now();
    for alpha in [0.4, 0.5, 2.0 / 3.0, 0.8, 1.0] {
        let w = werner(alpha).unwrap();
        let d = distance(&w, &cfg).unwrap().distance;
        let b = b_of_w(&w, &cfg).unwrap();
        c.close(
            d,
            werner_line(alpha),
            1e-6,
            &format!("D at alpha = {alpha}"),
        );
        c.close(
            b,
            werner_line(alpha),
            1e-6,
            &format!("B at alpha = {alpha}"),
        );
    }
    for alpha in [-1.0 / 3.0, 0.0, 0.2, 1.0 / 3.0] {
        let d = distance(&werner(alpha).unwrap(), &cfg).unwrap().distance;
        c.check(d < 1e-6, || {
            format!("separable alpha = {alpha} has distance {d}")
        });
    }
    let elapsed = start.elapsed();
    c.check(elapsed.as_secs_f64() < 5.0, || {
        format!("runtime {elapsed:?} exceeds 5 s")
    });
    c.finish();
}

#[test]
fn acceptance_theorem_violation_equals_distance() {
    let mut c = Criterion::new("maximal violation equals distance on 200 random states");
    let cfg = SolverConfig::default();
    let start = Instant::now();
    let mut rng = entgeo::sample::rng_from_seed(0xB0D);
    let mut entangled = 0;
    for i in 0..200 {
        let w = entgeo::sample::density_matrix(4, &mut rng);
        let rep = distance(&w, &cfg).unwrap();
        let b = b_of_w(&w, &cfg).unwrap();
        c.close(b, rep.distance, 1e-5, &format!("B vs D on state {i}"));
        if !is_ppt(&w).unwrap() {
            entangled += 1;
            let wit = a_max(&w, &rep.minimizer, &cfg.oracle).unwrap();
            let tangency = hs_inner(rep.minimizer.op(), &wit.op).unwrap();
            c.check(tangency.abs() < 1e-8, || {
                format!("tangency {tangency:.3e} on state {i}")
            });
        }
    }
    c.check(entangled > 20, || {
        format!("ensemble produced only {entangled} entangled states")
    });
    let elapsed = start.elapsed();
    c.check(elapsed.as_secs_f64() < 120.0, || {
        format!("runtime {elapsed:?} exceeds 2 min")
    });
    c.finish();
}

#[test]
fn acceptance_singlet_generalized_inequality() {
    let mut c = Criterion::new("singlet against the correlation witness: 3 vs 1, gap 2");
    // assemble -s.s as an explicit sum of three product terms
    let mut witness = HermitianOp::zeros(4);
    for k in 0..3 {
        witness = &witness + &(&kron(&sigma(k), &sigma(k)) * -1.0);
    }
    let singlet_value = hs_inner(werner(1.0).unwrap().op(), &witness).unwrap();
    c.close(singlet_value, 3.0, 1e-9, "singlet expectation");
    let sep = max_over_separable(&witness, &OracleConfig::default())
        .unwrap()
        .value;
    c.close(sep, 1.0, 1e-9, "separable maximum");
    c.close(singlet_value - sep, 2.0, 1e-9, "difference");
    c.finish();
}

#[test]
fn acceptance_chsh() {
    let mut c = Criterion::new("chsh: singlet 2 sqrt 2 at 135/135/135/45, separable sqrt 2");
    let cfg = OracleConfig::default();
    let (value, setting) = chsh_max_violation(&cfg).unwrap();
    c.close(value, 2.0 * SQRT2, 1e-9, "optimized singlet value");
    let mut angles = setting.angles();
    angles.sort_by(f64::total_cmp);
    c.close(angles[0], 45.0_f64.to_radians(), 1e-6, "smallest angle");
    for (k, a) in angles[1..].iter().enumerate() {
        c.close(
            *a,
            135.0_f64.to_radians(),
            1e-6,
            &format!("angle {}", k + 1),
        );
    }
    let sep = max_over_separable(&chsh_operator(&setting), &cfg)
        .unwrap()
        .value;
    c.close(
        sep,
        SQRT2,
        1e-6,
        "separable maximum of the extremal operator",
    );
    c.finish();
}

#[test]
fn acceptance_bell_original() {
    let mut c = Criterion::new("original inequality: 3/2 at 60/60/120, ceilings 3/4 and sqrt(3)/2");
    let rep = bell_max_violation(&OracleConfig::default()).unwrap();
    c.close(rep.value, 1.5, 1e-9, "optimized singlet value");
    let mut angles = rep.setting.angles();
    angles.sort_by(f64::total_cmp);
    c.close(angles[0], 60.0_f64.to_radians(), 1e-5, "first angle");
    c.close(angles[1], 60.0_f64.to_radians(), 1e-5, "second angle");
    c.close(angles[2], 120.0_f64.to_radians(), 1e-5, "third angle");
    c.close(
        rep.sep_anticorr_max,
        0.75,
        1e-6,
        "anticorrelated separable max",
    );
    c.close(
        rep.sep_all_max,
        3.0_f64.sqrt() / 2.0,
        1e-6,
        "all-separable max",
    );
    c.finish();
}

#[test]
fn acceptance_one_spin_model() {
    let mut c = Criterion::new("one-spin model: numeric distance and witness match closed forms");
    let cfg = SolverConfig::default();
    let ocfg = OracleConfig::default();
    let mut rng = entgeo::sample::rng_from_seed(0x51);
    let mut checked = 0;
    while checked < 100 {
        let bloch = entgeo::sample::bloch_in_ball(&mut rng);
        let planar = (bloch[0] * bloch[0] + bloch[1] * bloch[1]).sqrt();
        if planar < 1e-3 {
            continue; // witness direction is undefined in the degenerate limit
        }
        checked += 1;
        let w = SzState::new(bloch).unwrap();
        let rep = distance_sz_numeric(&w, &cfg);
        let (model, _) = distance_sz_model(&w);
        c.close(rep.distance, model, 1e-8, &format!("distance at {bloch:?}"));

        let wit = a_max(&w.density(), &rep.minimizer, &ocfg).unwrap();
        let denom = SQRT2 * planar;
        let formula = &(&(&sigma(0) * bloch[0]) + &(&sigma(1) * bloch[1])) * (-1.0 / denom);
        let dev = hs_distance(&wit.op, &formula).unwrap();
        c.check(dev < 1e-8, || {
            format!("witness deviates by {dev:.3e} at {bloch:?}")
        });
    }
    c.finish();
}

#[test]
fn acceptance_geometry() {
    let mut c = Criterion::new("c-space geometry: four-way agreement and volume fraction 1/6");
    let samples = sample_regions(21);
    let mut disagreements = 0usize;
    for s in &samples {
        let l1: f64 = s.c.iter().map(|x| x.abs()).sum();
        let cross = l1 <= 1.0 + entgeo::geometry::BOUNDARY_TOL;
        if s.separable != (s.in_tetrahedron && s.in_mirror && cross) || s.separable != cross {
            disagreements += 1;
        }
        if !ppt_agrees(s).unwrap() {
            disagreements += 1;
        }
    }
    c.check(disagreements == 0, || {
        format!("{disagreements} grid disagreements")
    });
    let sep = samples.iter().filter(|s| s.separable).count();
    let frac = sep as f64 / samples.len() as f64;
    c.check((frac * 6.0 - 1.0).abs() < 0.05, || {
        format!("separable fraction {frac} not within 5% of 1/6")
    });
    c.finish();
}

#[test]
fn acceptance_distance_properties() {
    let mut c =
        Criterion::new("distance properties: convex, 1-Lipschitz, locally invariant, bounded");
    let cfg = SolverConfig::default();
    let mut rng = entgeo::sample::rng_from_seed(0x9E0);
    for i in 0..500 {
        let w1 = entgeo::sample::density_matrix(4, &mut rng);
        let w2 = entgeo::sample::density_matrix(4, &mut rng);
        let t = rand::RngExt::random::<f64>(&mut rng);
        let mix = DensityMatrix::new(&(w1.op() * t) + &(w2.op() * (1.0 - t))).unwrap();

        let d1 = distance(&w1, &cfg).unwrap().distance;
        let d2 = distance(&w2, &cfg).unwrap().distance;
        let dmix = distance(&mix, &cfg).unwrap().distance;

        for (label, d) in [("w1", d1), ("w2", d2), ("mix", dmix)] {
            c.check((0.0..=SQRT2 + 1e-9).contains(&d), || {
                format!("range violation {d} on {label} (trial {i})")
            });
        }
        c.check(dmix <= t * d1 + (1.0 - t) * d2 + 1e-6, || {
            format!(
                "convexity violated at trial {i}: {dmix} > {}",
                t * d1 + (1.0 - t) * d2
            )
        });
        let delta = hs_distance(mix.op(), w1.op()).unwrap();
        c.check((dmix - d1).abs() <= delta + 1e-6, || {
            format!("Lipschitz violated at trial {i}: |{dmix} - {d1}| > {delta}")
        });

        let u = entgeo::sample::local_unitary(&mut rng);
        let rotated = DensityMatrix::new(u.conjugate(w1.op())).unwrap();
        let drot = distance(&rotated, &cfg).unwrap().distance;
        c.check((drot - d1).abs() < 1e-6, || {
            format!("local-unitary invariance violated at trial {i}: {drot} vs {d1}")
        });
    }
    c.finish();
}

#[test]
fn acceptance_oracle_cross_validation() {
    let mut c = Criterion::new("oracle cross-validation: grid agreement and PPT equivalence");
    let ocfg = OracleConfig::default();
    let mut rng = entgeo::sample::rng_from_seed(0xACCE);
    for i in 0..100 {
        let x = entgeo::sample::direction(4, &mut rng);
        let fine = min_over_separable(&x, &ocfg).unwrap().value;
        let grid = grid_min_over_separable(&x, 200).unwrap().value;
        c.check(fine <= grid + 1e-9, || {
            format!("see-saw worse than grid on direction {i}: {fine} > {grid}")
        });
        c.check(grid - fine < 2e-3, || {
            format!("grid gap {:.3e} on direction {i}", grid - fine)
        });
    }

    let cfg = SolverConfig::default();
    let mut rng = entgeo::sample::rng_from_seed(0xC0FFE);
    for i in 0..1000 {
        let w = entgeo::sample::density_matrix(4, &mut rng);
        let d = distance(&w, &cfg).unwrap().distance;
        let ppt = is_ppt(&w).unwrap();
        c.check((d < 1e-6) == ppt, || {
            format!("distance/PPT mismatch on state {i}: d = {d:.3e}, ppt = {ppt}")
        });
    }
    c.finish();
}

#[test]
fn acceptance_entangled_states_satisfying_chsh() {
    let mut c = Criterion::new("entangled states can satisfy chsh: alpha = 0.5");
    let w = werner(0.5).unwrap();
    let d = distance(&w, &SolverConfig::default()).unwrap().distance;
    c.check(d > 0.1, || format!("distance {d} not above 0.1"));
    let (best, _) = chsh_max_for_state(&w, &OracleConfig::default()).unwrap();
    c.check(best <= 2.0 + 1e-9, || {
        format!("optimized chsh value {best} violates the classical bound")
    });
    c.finish();
}

#[test]
fn acceptance_reference_norms() {
    // anchor values used throughout: the correlation operator norm and the
    // Werner coordinates
    let mut c = Criterion::new("reference operators: norms and coordinates");
    c.close(
        hs_norm(&sigma_dot_sigma()),
        2.0 * 3.0_f64.sqrt(),
        1e-12,
        "correlation operator norm",
    );
    let p = to_pauli(werner(1.0).unwrap().op()).unwrap();
    c.close(p.alpha, 0.25, 1e-14, "singlet identity coefficient");
    for i in 0..3 {
        c.close(p.c[i][i], -0.25, 1e-13, "singlet correlation coefficient");
    }
    c.finish();
}
