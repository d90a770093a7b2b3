//! Seeded random ensembles: Bloch vectors, pure and mixed states, product
//! states, and unitaries. Everything is driven by a ChaCha stream so results
//! are reproducible across platforms from a single root seed.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pauli::{kron, HermitianOp, Unitary};
use crate::states::{DensityMatrix, ProductState};

/// Deterministic RNG for a seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive a per-module stream seed from a root seed (SplitMix64 step).
pub fn split_seed(root: u64, stream: u64) -> u64 {
    let mut z = root
        .wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Standard normal deviate (polar Box-Muller).
pub fn gaussian<R: RngExt + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u = rng.random::<f64>() * 2.0 - 1.0;
        let v = rng.random::<f64>() * 2.0 - 1.0;
        let s = u * u + v * v;
        if s > 1e-300 && s < 1.0 {
            return u * (-2.0 * s.ln() / s).sqrt();
        }
    }
}

/// Uniform point on the unit sphere.
pub fn unit_vector<R: RngExt + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v = [gaussian(rng), gaussian(rng), gaussian(rng)];
        if let Some(u) = crate::la::unit3(v) {
            return u;
        }
    }
}

/// Uniform point in the closed unit ball.
pub fn bloch_in_ball<R: RngExt + ?Sized>(rng: &mut R) -> [f64; 3] {
    let u = unit_vector(rng);
    let r = rng.random::<f64>().cbrt();
    crate::la::scale3(u, r)
}

/// Random pure product state with independent uniform Bloch directions.
pub fn product_state<R: RngExt + ?Sized>(rng: &mut R) -> ProductState {
    ProductState::new(unit_vector(rng), unit_vector(rng)).expect("unit by construction")
}

/// Random Gaussian Hermitian matrix (GUE-like scaling is irrelevant here).
pub fn hermitian<R: RngExt + ?Sized>(dim: usize, rng: &mut R) -> HermitianOp {
    let mut m = vec![Complex64::ZERO; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = Complex64::new(gaussian(rng), 0.0);
        for j in 0..i {
            let z = Complex64::new(gaussian(rng), gaussian(rng));
            m[i * dim + j] = z;
            m[j * dim + i] = z.conj();
        }
    }
    HermitianOp::new(dim, m).expect("hermitian by construction")
}

/// Random traceless direction with unit HS norm.
pub fn direction<R: RngExt + ?Sized>(dim: usize, rng: &mut R) -> HermitianOp {
    loop {
        let x = hermitian(dim, rng).traceless_part();
        let n = crate::pauli::hs_norm(&x);
        if n > 1e-12 {
            return &x * (1.0 / n);
        }
    }
}

/// Haar-like random pure state: normalized complex Gaussian vector projector.
pub fn pure_state<R: RngExt + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
            .collect();
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq < 1e-12 {
            continue;
        }
        let mut m = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                m[i * dim + j] = v[i] * v[j].conj() / norm_sq;
            }
        }
        return DensityMatrix::new(HermitianOp::new(dim, m).expect("projector"))
            .expect("valid projector");
    }
}

/// Random mixed state: a Haar-like pure state blended with the maximally
/// mixed state at a uniform weight. Covers interior and near-boundary states.
pub fn density_matrix<R: RngExt + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let pure = pure_state(dim, rng);
    let t = rng.random::<f64>();
    let op = &(pure.op() * t) + &(DensityMatrix::maximally_mixed(dim).op() * (1.0 - t));
    DensityMatrix::new(op).expect("convex mixture of states")
}

/// Convex mixture of `atoms` random product states with uniform Dirichlet-ish
/// weights; always separable.
pub fn separable_mixture<R: RngExt + ?Sized>(atoms: usize, rng: &mut R) -> DensityMatrix {
    let mut weights: Vec<f64> = (0..atoms).map(|_| -rng.random::<f64>().ln()).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut op = HermitianOp::zeros(4);
    for &w in &weights {
        op = &op + &(product_state(rng).density().op() * w);
    }
    DensityMatrix::new(op).expect("convex mixture of product states")
}

/// Haar-ish random unitary from a random Hermitian generator.
pub fn unitary<R: RngExt + ?Sized>(dim: usize, rng: &mut R) -> Unitary {
    Unitary::from_generator(&hermitian(dim, rng))
}

/// Product unitary `U_A (x) U_B` on two qubits.
pub fn local_unitary<R: RngExt + ?Sized>(rng: &mut R) -> Unitary {
    unitary(2, rng).kron(&unitary(2, rng))
}

/// Random two-qubit product density matrix (kron of two random qubit states).
pub fn product_density<R: RngExt + ?Sized>(rng: &mut R) -> DensityMatrix {
    let a = mixed_qubit(rng);
    let b = mixed_qubit(rng);
    DensityMatrix::new(kron(a.op(), b.op())).expect("product of states")
}

fn mixed_qubit<R: RngExt + ?Sized>(rng: &mut R) -> DensityMatrix {
    let r = bloch_in_ball(rng);
    let op = &(&HermitianOp::identity(2) * 0.5) + &(&crate::pauli::dot_sigma(r) * 0.5);
    DensityMatrix::new(op).expect("Bloch ball state")
}
