//! Eigenvalues of small symmetric and Hermitian matrices.
//!
//! Cyclic Jacobi on the real symmetric matrix; Hermitian inputs go through the
//! standard 2N x 2N real embedding `[[X, -Y], [Y, X]]`, whose spectrum is the
//! Hermitian spectrum with every eigenvalue doubled.

use crate::pauli::HermitianOp;

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn symmetric_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    if n == 1 {
        return vec![a[0][0]];
    }
    let frob: f64 = a
        .iter()
        .flat_map(|r| r.iter().map(|x| x * x))
        .sum::<f64>()
        .sqrt()
        .max(1e-300);

    for _sweep in 0..64 {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in p + 1..n {
                    s += a[p][q] * a[p][q];
                }
            }
            s.sqrt()
        };
        if off < 1e-15 * frob {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }

    let mut vals: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Eigenvalues of a Hermitian operator, ascending.
pub fn hermitian_eigenvalues(x: &HermitianOp) -> Vec<f64> {
    let n = x.dim();
    let mut b = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let z = x.entry(i, j);
            b[i][j] = z.re;
            b[n + i][n + j] = z.re;
            b[i][n + j] = -z.im;
            b[n + i][j] = z.im;
        }
    }
    let doubled = symmetric_eigenvalues(b);
    (0..n)
        .map(|k| 0.5 * (doubled[2 * k] + doubled[2 * k + 1]))
        .collect()
}

/// Smallest eigenvalue of a Hermitian operator.
pub fn min_eigenvalue(x: &HermitianOp) -> f64 {
    hermitian_eigenvalues(x)[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{kron, sigma, HermitianOp};

    #[test]
    fn diagonal_matrix_spectrum() {
        let vals = symmetric_eigenvalues(vec![
            vec![3.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 2.0],
        ]);
        assert_eq!(vals, vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_spectra() {
        for k in 0..3 {
            let vals = hermitian_eigenvalues(&sigma(k));
            assert!((vals[0] + 1.0).abs() < 1e-14);
            assert!((vals[1] - 1.0).abs() < 1e-14);
        }
        // sigma.sigma has eigenvalues -3, 1, 1, 1
        let vals = hermitian_eigenvalues(&crate::pauli::sigma_dot_sigma());
        assert!((vals[0] + 3.0).abs() < 1e-13);
        for v in &vals[1..] {
            assert!((v - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn spectrum_matches_trace_identities() {
        let mut rng = crate::sample::rng_from_seed(23);
        for _ in 0..200 {
            let x = crate::sample::hermitian(4, &mut rng);
            let vals = hermitian_eigenvalues(&x);
            let tr: f64 = vals.iter().sum();
            let tr2: f64 = vals.iter().map(|v| v * v).sum();
            assert!((tr - x.trace()).abs() < 1e-10);
            assert!((tr2 - crate::pauli::hs_norm(&x).powi(2)).abs() < 1e-9);
        }
    }

    #[test]
    fn degenerate_kron_spectrum() {
        let x = kron(&sigma(2), &HermitianOp::identity(2));
        let vals = hermitian_eigenvalues(&x);
        assert!((vals[0] + 1.0).abs() < 1e-14 && (vals[1] + 1.0).abs() < 1e-14);
        assert!((vals[2] - 1.0).abs() < 1e-14 && (vals[3] - 1.0).abs() < 1e-14);
    }
}
