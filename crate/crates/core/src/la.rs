//! Small dense linear-algebra helpers: 3-vector arithmetic, Gaussian
//! elimination, and null-space extraction for the hull solver.

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

pub(crate) fn add3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub(crate) fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn scale3(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Normalized copy, or `None` when the vector is numerically zero.
pub(crate) fn unit3(a: [f64; 3]) -> Option<[f64; 3]> {
    let n = norm3(a);
    if n < 1e-300 {
        None
    } else {
        Some(scale3(a, 1.0 / n))
    }
}

pub(crate) fn matvec3(c: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [dot3(c[0], v), dot3(c[1], v), dot3(c[2], v)]
}

/// Apply the transpose of `c`.
pub(crate) fn tmatvec3(c: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        c[0][0] * v[0] + c[1][0] * v[1] + c[2][0] * v[2],
        c[0][1] * v[0] + c[1][1] * v[1] + c[2][1] * v[2],
        c[0][2] * v[0] + c[1][2] * v[1] + c[2][2] * v[2],
    ]
}

pub(crate) fn outer3(a: [f64; 3], b: [f64; 3]) -> [[f64; 3]; 3] {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[i] * b[j];
        }
    }
    c
}

pub(crate) fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Rodrigues rotation of `v` about unit `axis` by `angle`.
pub(crate) fn rotate3(v: [f64; 3], axis: [f64; 3], angle: f64) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    let k = axis;
    let kxv = cross3(k, v);
    let kdv = dot3(k, v);
    [
        v[0] * c + kxv[0] * s + k[0] * kdv * (1.0 - c),
        v[1] * c + kxv[1] * s + k[1] * kdv * (1.0 - c),
        v[2] * c + kxv[2] * s + k[2] * kdv * (1.0 - c),
    ]
}

/// Solve `a x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when the matrix is numerically singular.
pub(crate) fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    let scale = a
        .iter()
        .flat_map(|r| r.iter().map(|x| x.abs()))
        .fold(0.0_f64, f64::max)
        .max(1e-300);
    for col in 0..n {
        let (piv, pv) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if pv < 1e-14 * scale {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for c in row + 1..n {
            s -= a[row][c] * x[c];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

/// One non-trivial vector in the null space of the `rows.len() x ncols`
/// matrix, or `None` if the columns are linearly independent.
pub(crate) fn nullspace_vector(rows: &[Vec<f64>], ncols: usize) -> Option<Vec<f64>> {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let nrows = m.len();
    let scale = m
        .iter()
        .flat_map(|r| r.iter().map(|x| x.abs()))
        .fold(0.0_f64, f64::max)
        .max(1e-300);
    let tol = 1e-12 * scale;

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut row = 0;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let (piv, pv) = (row..nrows)
            .map(|r| (r, m[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pv < tol {
            continue;
        }
        m.swap(row, piv);
        let p = m[row][col];
        for c in 0..ncols {
            m[row][c] /= p;
        }
        for r in 0..nrows {
            if r != row && m[r][col].abs() > 0.0 {
                let f = m[r][col];
                for c in 0..ncols {
                    m[r][c] -= f * m[row][c];
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
    }

    let free = (0..ncols).find(|&c| pivot_of_col[c].is_none())?;
    let mut v = vec![0.0; ncols];
    v[free] = 1.0;
    for col in 0..ncols {
        if let Some(r) = pivot_of_col[col] {
            v[col] = -m[r][free];
        }
    }
    Some(v)
}
