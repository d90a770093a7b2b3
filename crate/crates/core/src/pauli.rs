//! The real Hilbert space of Hermitian operators.
//!
//! Observables and states are vectors in the same space, with the trace
//! inner product `(x|y) = Tr(x y)` and the Hilbert-Schmidt norm
//! `||x|| = sqrt(Tr x^2)`. For two qubits the coordinates in the (unnormalized)
//! Pauli product basis are
//!
//! ```text
//! x = alpha 1 + a_i s_i (x) 1 + b_i 1 (x) s_i + c_ij s_i (x) s_j
//! ```
//!
//! with the Parseval identity `||x||^2 / 4 = alpha^2 + sum a^2 + sum b^2 + sum c^2`.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) const HERMITICITY_TOL: f64 = 1e-12;

/// An N x N Hermitian matrix viewed as a vector in the real Hilbert-Schmidt space.
///
/// Construction symmetrizes inputs that are Hermitian to within `1e-12`
/// (relative to the largest entry) and rejects anything worse.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOp {
    dim: usize,
    m: Vec<Complex64>,
}

impl HermitianOp {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        assert!(dim > 0, "dimension must be positive");
        assert_eq!(entries.len(), dim * dim, "entry count must be dim^2");
        let scale = entries.iter().map(|z| z.norm()).fold(1.0_f64, f64::max);
        let mut dev = 0.0_f64;
        for i in 0..dim {
            for j in 0..=i {
                dev = dev.max((entries[i * dim + j] - entries[j * dim + i].conj()).norm());
            }
        }
        if dev > 2.0 * HERMITICITY_TOL * scale {
            return Err(Error::NotHermitian { deviation: dev });
        }
        Ok(Self::symmetrized(dim, entries))
    }

    /// Internal constructor for matrices Hermitian by construction.
    pub(crate) fn symmetrized(dim: usize, mut m: Vec<Complex64>) -> Self {
        for i in 0..dim {
            for j in 0..i {
                let avg = 0.5 * (m[i * dim + j] + m[j * dim + i].conj());
                m[i * dim + j] = avg;
                m[j * dim + i] = avg.conj();
            }
            let d = m[i * dim + i];
            m[i * dim + i] = Complex64::new(d.re, 0.0);
        }
        Self { dim, m }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            m: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut op = Self::zeros(dim);
        for i in 0..dim {
            op.m[i * dim + i] = Complex64::ONE;
        }
        op
    }

    /// Build from a real matrix (must be symmetric to within tolerance).
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            dim,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m[i * self.dim + j]
    }

    pub(crate) fn set_entry(&mut self, i: usize, j: usize, v: Complex64) {
        self.m[i * self.dim + j] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.m[i * self.dim + i].re).sum()
    }

    /// Traceless part `x - (Tr x / N) 1`.
    pub fn traceless_part(&self) -> HermitianOp {
        let alpha = self.trace() / self.dim as f64;
        self - &(&HermitianOp::identity(self.dim) * alpha)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub(crate) fn to_cmat(&self) -> CMat {
        CMat {
            dim: self.dim,
            m: self.m.clone(),
        }
    }
}

fn check_dims(x: &HermitianOp, y: &HermitianOp) -> Result<()> {
    if x.dim != y.dim {
        Err(Error::DimMismatch {
            expected: x.dim,
            got: y.dim,
        })
    } else {
        Ok(())
    }
}

/// Trace inner product `(x|y) = Tr(x y)`.
///
/// For Hermitian arguments the trace is real; any residual imaginary part
/// (roundoff, below 1e-12) is discarded.
pub fn hs_inner(x: &HermitianOp, y: &HermitianOp) -> Result<f64> {
    check_dims(x, y)?;
    let n = x.dim;
    let mut s = Complex64::ZERO;
    for i in 0..n {
        for j in 0..n {
            s += x.m[i * n + j] * y.m[j * n + i];
        }
    }
    debug_assert!(s.im.abs() < 1e-12 * (1.0 + s.re.abs()));
    Ok(s.re)
}

/// Hilbert-Schmidt norm `sqrt(Tr x^2)`.
pub fn hs_norm(x: &HermitianOp) -> f64 {
    hs_inner(x, x).expect("same operand").max(0.0).sqrt()
}

/// `||x - y||` in the Hilbert-Schmidt norm.
pub fn hs_distance(x: &HermitianOp, y: &HermitianOp) -> Result<f64> {
    check_dims(x, y)?;
    Ok(hs_norm(&(x - y)))
}

impl Add for &HermitianOp {
    type Output = HermitianOp;
    fn add(self, rhs: &HermitianOp) -> HermitianOp {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        HermitianOp {
            dim: self.dim,
            m: self.m.iter().zip(&rhs.m).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &HermitianOp {
    type Output = HermitianOp;
    fn sub(self, rhs: &HermitianOp) -> HermitianOp {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        HermitianOp {
            dim: self.dim,
            m: self.m.iter().zip(&rhs.m).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<f64> for &HermitianOp {
    type Output = HermitianOp;
    fn mul(self, s: f64) -> HermitianOp {
        HermitianOp {
            dim: self.dim,
            m: self.m.iter().map(|a| a * s).collect(),
        }
    }
}

impl Neg for &HermitianOp {
    type Output = HermitianOp;
    fn neg(self) -> HermitianOp {
        self * -1.0
    }
}

/// Pauli matrix for axis index 0, 1, 2 = x, y, z.
pub fn sigma(axis: usize) -> HermitianOp {
    assert!(axis < 3, "Pauli axis index out of range");
    let z = Complex64::ZERO;
    let one = Complex64::ONE;
    let i = Complex64::I;
    let m = match axis {
        0 => vec![z, one, one, z],
        1 => vec![z, -i, i, z],
        _ => vec![one, z, z, -one],
    };
    HermitianOp { dim: 2, m }
}

/// `n . sigma` for a real 3-vector `n`.
pub fn dot_sigma(n: [f64; 3]) -> HermitianOp {
    let mut acc = HermitianOp::zeros(2);
    for (k, &nk) in n.iter().enumerate() {
        acc = &acc + &(&sigma(k) * nk);
    }
    acc
}

/// Kronecker product of two Hermitian operators.
pub fn kron(a: &HermitianOp, b: &HermitianOp) -> HermitianOp {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut m = vec![Complex64::ZERO; n * n];
    for i in 0..na {
        for j in 0..na {
            let aij = a.m[i * na + j];
            for k in 0..nb {
                for l in 0..nb {
                    m[(i * nb + k) * n + (j * nb + l)] = aij * b.m[k * nb + l];
                }
            }
        }
    }
    HermitianOp { dim: n, m }
}

/// The correlation operator `sum_i s_i (x) s_i` with HS norm `2 sqrt(3)`.
pub fn sigma_dot_sigma() -> HermitianOp {
    let mut acc = HermitianOp::zeros(4);
    for k in 0..3 {
        acc = &acc + &kron(&sigma(k), &sigma(k));
    }
    acc
}

/// Coefficients of a two-qubit operator in the Pauli product basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliCoeffs2Q {
    pub alpha: f64,
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub c: [[f64; 3]; 3],
}

impl PauliCoeffs2Q {
    pub fn zero() -> Self {
        Self {
            alpha: 0.0,
            a: [0.0; 3],
            b: [0.0; 3],
            c: [[0.0; 3]; 3],
        }
    }

    /// Sum of squared coefficients; equals `||x||^2 / 4` by Parseval.
    pub fn coeff_norm_sq(&self) -> f64 {
        let sq = |v: &[f64; 3]| v.iter().map(|x| x * x).sum::<f64>();
        self.alpha * self.alpha + sq(&self.a) + sq(&self.b) + self.c.iter().map(sq).sum::<f64>()
    }
}

pub(crate) struct Basis2Q {
    pub id: HermitianOp,
    pub sa: [HermitianOp; 3],
    pub sb: [HermitianOp; 3],
    pub sab: [[HermitianOp; 3]; 3],
}

pub(crate) fn basis2q() -> &'static Basis2Q {
    static BASIS: OnceLock<Basis2Q> = OnceLock::new();
    BASIS.get_or_init(|| {
        let id2 = HermitianOp::identity(2);
        let s = [sigma(0), sigma(1), sigma(2)];
        Basis2Q {
            id: HermitianOp::identity(4),
            sa: std::array::from_fn(|i| kron(&s[i], &id2)),
            sb: std::array::from_fn(|i| kron(&id2, &s[i])),
            sab: std::array::from_fn(|i| std::array::from_fn(|j| kron(&s[i], &s[j]))),
        }
    })
}

fn trace_product(x: &HermitianOp, y: &HermitianOp) -> f64 {
    let n = x.dim;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += (x.m[i * n + j] * y.m[j * n + i]).re;
        }
    }
    s
}

/// Pauli coordinates of a two-qubit operator: `alpha = Tr(x)/4`,
/// `a_i = Tr(x s_i (x) 1)/4`, and so on.
pub fn to_pauli(x: &HermitianOp) -> Result<PauliCoeffs2Q> {
    if x.dim != 4 {
        return Err(Error::DimMismatch {
            expected: 4,
            got: x.dim,
        });
    }
    let b = basis2q();
    let mut p = PauliCoeffs2Q::zero();
    p.alpha = x.trace() / 4.0;
    for i in 0..3 {
        p.a[i] = trace_product(x, &b.sa[i]) / 4.0;
        p.b[i] = trace_product(x, &b.sb[i]) / 4.0;
        for j in 0..3 {
            p.c[i][j] = trace_product(x, &b.sab[i][j]) / 4.0;
        }
    }
    Ok(p)
}

/// Inverse of [`to_pauli`].
pub fn from_pauli(p: &PauliCoeffs2Q) -> HermitianOp {
    let b = basis2q();
    let mut acc = &b.id * p.alpha;
    for i in 0..3 {
        acc = &acc + &(&b.sa[i] * p.a[i]);
        acc = &acc + &(&b.sb[i] * p.b[i]);
        for j in 0..3 {
            acc = &acc + &(&b.sab[i][j] * p.c[i][j]);
        }
    }
    acc
}

/// Bloch coordinates of a one-qubit operator: `x = alpha 1 + a . sigma`.
pub fn bloch_coeffs(x: &HermitianOp) -> Result<(f64, [f64; 3])> {
    if x.dim != 2 {
        return Err(Error::DimMismatch {
            expected: 2,
            got: x.dim,
        });
    }
    let alpha = x.trace() / 2.0;
    let a = std::array::from_fn(|i| trace_product(x, &sigma(i)) / 2.0);
    Ok((alpha, a))
}

/// One-qubit operator from Bloch coordinates.
pub fn from_bloch(alpha: f64, a: [f64; 3]) -> HermitianOp {
    &(&HermitianOp::identity(2) * alpha) + &dot_sigma(a)
}

/// Dense complex matrix for internal products and conjugations.
#[derive(Debug, Clone)]
pub(crate) struct CMat {
    pub dim: usize,
    pub m: Vec<Complex64>,
}

impl CMat {
    pub fn identity(dim: usize) -> Self {
        let mut m = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            m[i * dim + i] = Complex64::ONE;
        }
        Self { dim, m }
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        debug_assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut m = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.m[i * n + k];
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    m[i * n + j] += aik * rhs.m[k * n + j];
                }
            }
        }
        CMat { dim: n, m }
    }

    pub fn adjoint(&self) -> CMat {
        let n = self.dim;
        let mut m = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                m[j * n + i] = self.m[i * n + j].conj();
            }
        }
        CMat { dim: n, m }
    }

    pub fn scale(&self, s: Complex64) -> CMat {
        CMat {
            dim: self.dim,
            m: self.m.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, rhs: &CMat) -> CMat {
        debug_assert_eq!(self.dim, rhs.dim);
        CMat {
            dim: self.dim,
            m: self.m.iter().zip(&rhs.m).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn kron(&self, rhs: &CMat) -> CMat {
        let (na, nb) = (self.dim, rhs.dim);
        let n = na * nb;
        let mut m = vec![Complex64::ZERO; n * n];
        for i in 0..na {
            for j in 0..na {
                let aij = self.m[i * na + j];
                for k in 0..nb {
                    for l in 0..nb {
                        m[(i * nb + k) * n + (j * nb + l)] = aij * rhs.m[k * nb + l];
                    }
                }
            }
        }
        CMat { dim: n, m }
    }
}

/// A unitary operator built from a Hermitian generator, used for conjugating
/// operators in invariance checks.
#[derive(Debug, Clone)]
pub struct Unitary {
    mat: CMat,
}

impl Unitary {
    /// `U = exp(i h)` via scaling-and-squaring with a Taylor kernel.
    pub fn from_generator(h: &HermitianOp) -> Self {
        let scale = h.max_abs_entry() * h.dim as f64;
        let squarings = if scale > 0.5 {
            (scale / 0.5).log2().ceil().max(0.0) as u32
        } else {
            0
        };
        let factor = Complex64::new(0.0, 1.0 / f64::powi(2.0, squarings as i32));
        let a = h.to_cmat().scale(factor);
        // Taylor series of exp(a) with ||a|| <= 0.5
        let mut term = CMat::identity(h.dim());
        let mut acc = CMat::identity(h.dim());
        for k in 1..=18 {
            term = term.mul(&a).scale(Complex64::new(1.0 / k as f64, 0.0));
            acc = acc.add(&term);
        }
        let mut u = acc;
        for _ in 0..squarings {
            u = u.mul(&u);
        }
        debug_assert!({
            let dev = u
                .mul(&u.adjoint())
                .add(&CMat::identity(h.dim()).scale(Complex64::new(-1.0, 0.0)))
                .max_abs();
            dev < 1e-10
        });
        Self { mat: u }
    }

    pub fn dim(&self) -> usize {
        self.mat.dim
    }

    pub fn kron(&self, other: &Unitary) -> Unitary {
        Unitary {
            mat: self.mat.kron(&other.mat),
        }
    }

    /// `U x U*`, Hermitian again up to roundoff.
    pub fn conjugate(&self, x: &HermitianOp) -> HermitianOp {
        assert_eq!(self.dim(), x.dim(), "dimension mismatch");
        let prod = self.mat.mul(&x.to_cmat()).mul(&self.mat.adjoint());
        HermitianOp::symmetrized(x.dim(), prod.m)
    }
}
