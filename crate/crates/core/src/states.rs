//! Density matrices, the named two-qubit families (Werner, Bell projectors,
//! diagonal-correlation states, pure products), partial transposition, and
//! the positive-partial-transpose separability test.

use serde::{Deserialize, Serialize};

use crate::eigen::{hermitian_eigenvalues, min_eigenvalue};
use crate::error::{Error, Result};
use crate::la;
use crate::pauli::{dot_sigma, hs_norm, kron, sigma_dot_sigma, HermitianOp};

/// Trace / positivity tolerance for state validation.
pub const STATE_TOL: f64 = 1e-10;

/// Vertices of the two-qubit correlation tetrahedron; vertex `k` carries the
/// diagonal correlation signature of the Bell projector `P_k`.
pub const BELL_TETRAHEDRON_VERTICES: [[f64; 3]; 4] = [
    [-1.0, -1.0, -1.0],
    [-1.0, 1.0, 1.0],
    [1.0, -1.0, 1.0],
    [1.0, 1.0, -1.0],
];

/// A Hermitian operator constrained to trace one and positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOp,
}

impl DensityMatrix {
    pub fn new(op: HermitianOp) -> Result<Self> {
        let tr = op.trace();
        if (tr - 1.0).abs() > STATE_TOL {
            return Err(Error::NotAState(format!("trace {tr} differs from 1")));
        }
        let min = min_eigenvalue(&op);
        if min < -STATE_TOL {
            return Err(Error::NotAState(format!("negative eigenvalue {min:.3e}")));
        }
        let norm = hs_norm(&op);
        if norm > 1.0 + STATE_TOL {
            return Err(Error::NotAState(format!(
                "HS norm {norm} exceeds the purity bound"
            )));
        }
        Ok(Self { op })
    }

    pub(crate) fn new_unchecked(op: HermitianOp) -> Self {
        Self { op }
    }

    pub fn op(&self) -> &HermitianOp {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            op: &HermitianOp::identity(dim) * (1.0 / dim as f64),
        }
    }

    /// `Tr rho^2 = ||rho||^2`; equals 1 exactly for pure states.
    pub fn purity(&self) -> f64 {
        hs_norm(&self.op).powi(2)
    }

    pub fn is_pure(&self) -> bool {
        (self.purity() - 1.0).abs() < 10.0 * STATE_TOL
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.op)
    }
}

/// A pure two-qubit product state, parameterized by two unit Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductState {
    n: [f64; 3],
    m: [f64; 3],
}

impl ProductState {
    pub fn new(n: [f64; 3], m: [f64; 3]) -> Result<Self> {
        for v in [n, m] {
            let norm = la::norm3(v);
            if (norm - 1.0).abs() > 1e-12 {
                return Err(Error::NotUnitVector { norm });
            }
        }
        Ok(Self { n, m })
    }

    pub fn alice(&self) -> [f64; 3] {
        self.n
    }

    pub fn bob(&self) -> [f64; 3] {
        self.m
    }

    /// The rank-one projector `1/2 (1 + n.s) (x) 1/2 (1 + m.s)`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::new_unchecked(kron(qubit_state(self.n).op(), qubit_state(self.m).op()))
    }
}

impl<'de> Deserialize<'de> for ProductState {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: [f64; 3],
            m: [f64; 3],
        }
        let raw = Raw::deserialize(de)?;
        ProductState::new(raw.n, raw.m).map_err(serde::de::Error::custom)
    }
}

/// One-qubit state `1/2 (1 + r.s)` for a Bloch vector with `|r| <= 1`.
pub fn qubit_state(r: [f64; 3]) -> DensityMatrix {
    debug_assert!(la::norm3(r) <= 1.0 + 1e-9);
    DensityMatrix::new_unchecked(&(&HermitianOp::identity(2) * 0.5) + &(&dot_sigma(r) * 0.5))
}

/// Pure product density matrix for unit Bloch vectors `n` (Alice) and `m` (Bob).
pub fn product_state(n: [f64; 3], m: [f64; 3]) -> Result<DensityMatrix> {
    Ok(ProductState::new(n, m)?.density())
}

/// Werner state `(1 - alpha s.s) / 4`, a density matrix for
/// `-1/3 <= alpha <= 1`; separable exactly when `|alpha| <= 1/3`.
pub fn werner(alpha: f64) -> Result<DensityMatrix> {
    if !(-1.0 / 3.0 - 1e-12..=1.0 + 1e-12).contains(&alpha) {
        return Err(Error::NotAState(format!(
            "Werner parameter {alpha} outside [-1/3, 1]"
        )));
    }
    let op = &(&HermitianOp::identity(4) + &(&sigma_dot_sigma() * (-alpha))) * 0.25;
    Ok(DensityMatrix::new_unchecked(op))
}

/// Eigenvalue of the diagonal-correlation state `w_c` on Bell projector `k`.
pub(crate) fn wc_eigenvalue(c: [f64; 3], k: usize) -> f64 {
    (1.0 + la::dot3(c, BELL_TETRAHEDRON_VERTICES[k])) / 4.0
}

/// State with diagonal correlation matrix: `1/4 (1 + sum_i c_i s_i (x) s_i)`.
/// Valid exactly when `c` lies in the Bell tetrahedron.
pub fn w_c_state(c: [f64; 3]) -> Result<DensityMatrix> {
    for k in 0..4 {
        if wc_eigenvalue(c, k) < -STATE_TOL {
            return Err(Error::NotAState(format!(
                "correlation vector {c:?} outside the state tetrahedron"
            )));
        }
    }
    let mut op = HermitianOp::identity(4);
    for (i, &ci) in c.iter().enumerate() {
        op = &op + &(&kron(&crate::pauli::sigma(i), &crate::pauli::sigma(i)) * ci);
    }
    Ok(DensityMatrix::new_unchecked(&op * 0.25))
}

/// The four Bell projectors, indexed by their tetrahedron vertices.
pub fn bell_projectors() -> [DensityMatrix; 4] {
    std::array::from_fn(|k| w_c_state(BELL_TETRAHEDRON_VERTICES[k]).expect("vertices are states"))
}

/// Partial transpose on the second qubit: transposes each 2x2 block in the
/// B-factor indices. An involution; in Pauli coordinates it flips the sign
/// of every `sigma_y` component on side B.
pub fn partial_transpose_b(x: &HermitianOp) -> Result<HermitianOp> {
    if x.dim() != 4 {
        return Err(Error::DimMismatch {
            expected: 4,
            got: x.dim(),
        });
    }
    let mut out = HermitianOp::zeros(4);
    for a in 0..2 {
        for c in 0..2 {
            for b in 0..2 {
                for d in 0..2 {
                    out.set_entry(2 * a + b, 2 * c + d, x.entry(2 * a + d, 2 * c + b));
                }
            }
        }
    }
    // transposing a Hermitian block keeps the whole matrix Hermitian
    Ok(
        HermitianOp::new(4, (0..16).map(|k| out.entry(k / 4, k % 4)).collect())
            .expect("partial transpose preserves Hermiticity"),
    )
}

/// Positive-partial-transpose test. In 2 (x) 2 dimensions this is exact:
/// a state is separable if and only if its partial transpose is positive.
pub fn is_ppt(w: &DensityMatrix) -> Result<bool> {
    let pt = partial_transpose_b(w.op())?;
    Ok(min_eigenvalue(&pt) >= -STATE_TOL)
}
