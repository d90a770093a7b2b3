//! Geometry of the diagonal-correlation states in `c`-space.
//!
//! States with correlation matrix `diag(c1, c2, c3)` fill the tetrahedron
//! spanned by the four Bell signatures; partial transposition reflects that
//! tetrahedron, and the intersection of the two is the cross-polytope
//! `sum |c_i| <= 1` of separable states (a double pyramid / octahedron).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::la::dot3;
use crate::states::{is_ppt, w_c_state, wc_eigenvalue, BELL_TETRAHEDRON_VERTICES};

/// Boundary tolerance for the half-space and cross-polytope tests. Ties are
/// classified separable: the separable set is closed.
pub const BOUNDARY_TOL: f64 = 1e-10;

/// Classification of one point of `c`-space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CRegionSample {
    pub c: [f64; 3],
    pub in_tetrahedron: bool,
    pub in_mirror: bool,
    pub separable: bool,
    /// Filled by callers that run the distance solver on the sample.
    pub distance: Option<f64>,
}

/// Half-space classification against the state tetrahedron, its mirror
/// image, and the separable cross-polytope.
pub fn classify_c(c: [f64; 3]) -> CRegionSample {
    let in_tetrahedron = (0..4).all(|k| wc_eigenvalue(c, k) >= -BOUNDARY_TOL);
    // mirror vertices are the negated set; equivalently flip the sign of c
    let in_mirror = (0..4).all(|k| wc_eigenvalue([-c[0], -c[1], -c[2]], k) >= -BOUNDARY_TOL);
    let l1: f64 = c.iter().map(|x| x.abs()).sum();
    let separable = l1 <= 1.0 + BOUNDARY_TOL;
    debug_assert!(!separable || (in_tetrahedron && in_mirror));
    CRegionSample {
        c,
        in_tetrahedron,
        in_mirror,
        separable,
        distance: None,
    }
}

/// Classify a regular `resolution^3` grid over `[-1, 1]^3` in lexicographic
/// order.
pub fn sample_regions(resolution: usize) -> Vec<CRegionSample> {
    assert!(resolution >= 2, "grid resolution must be at least 2");
    let coord = |k: usize| -1.0 + 2.0 * k as f64 / (resolution - 1) as f64;
    let mut out = Vec::with_capacity(resolution * resolution * resolution);
    for i in 0..resolution {
        for j in 0..resolution {
            for k in 0..resolution {
                out.push(classify_c([coord(i), coord(j), coord(k)]));
            }
        }
    }
    out
}

/// Cross-check a classified sample against the partial-transpose test (only
/// meaningful inside the tetrahedron, where `w_c` is a state).
pub fn ppt_agrees(sample: &CRegionSample) -> Result<bool> {
    if !sample.in_tetrahedron {
        return Ok(true);
    }
    let ppt = is_ppt(&w_c_state(sample.c)?)?;
    Ok(ppt == sample.separable)
}

/// Named regions of Fig-style exports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Tetrahedron,
    Mirror,
    Intersection,
    Pyramid,
}

impl FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tetra" | "tetrahedron" => Ok(Region::Tetrahedron),
            "mirror" => Ok(Region::Mirror),
            "intersection" => Ok(Region::Intersection),
            "pyramid" | "double-pyramid" | "octahedron" => Ok(Region::Pyramid),
            other => Err(Error::UnknownRegion(other.to_string())),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Region::Tetrahedron => "tetra",
            Region::Mirror => "mirror",
            Region::Intersection => "intersection",
            Region::Pyramid => "pyramid",
        };
        f.write_str(name)
    }
}

/// Triangle mesh with exact vertex coordinates and outward-oriented faces.
#[derive(Debug, Clone, Serialize)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl Mesh {
    /// OFF text form (vertex count, face count, edge count 0).
    pub fn to_off(&self) -> String {
        let mut s = String::from("OFF\n");
        s.push_str(&format!("{} {} 0\n", self.vertices.len(), self.faces.len()));
        for v in &self.vertices {
            s.push_str(&format!("{} {} {}\n", v[0], v[1], v[2]));
        }
        for f in &self.faces {
            s.push_str(&format!("3 {} {} {}\n", f[0], f[1], f[2]));
        }
        s
    }
}

fn tetra_mesh(vertices: [[f64; 3]; 4]) -> Mesh {
    // each face omits one vertex; orient outward (the centroid is 0)
    let mut faces = Vec::with_capacity(4);
    for omit in 0..4 {
        let idx: Vec<usize> = (0..4).filter(|&i| i != omit).collect();
        let (a, b, c) = (idx[0], idx[1], idx[2]);
        faces.push(orient_outward(&vertices, [a, b, c]));
    }
    Mesh {
        vertices: vertices.to_vec(),
        faces,
    }
}

fn orient_outward(vertices: &[[f64; 3]], face: [usize; 3]) -> [usize; 3] {
    let [a, b, c] = face;
    let u = crate::la::sub3(vertices[b], vertices[a]);
    let v = crate::la::sub3(vertices[c], vertices[a]);
    let normal = crate::la::cross3(u, v);
    let centroid = [
        (vertices[a][0] + vertices[b][0] + vertices[c][0]) / 3.0,
        (vertices[a][1] + vertices[b][1] + vertices[c][1]) / 3.0,
        (vertices[a][2] + vertices[b][2] + vertices[c][2]) / 3.0,
    ];
    if dot3(normal, centroid) >= 0.0 {
        [a, b, c]
    } else {
        [a, c, b]
    }
}

/// Exact meshes: the state tetrahedron, its mirror image, and the separable
/// octahedron (the intersection of the two tetrahedra equals the double
/// pyramid of separable states).
pub fn export_mesh(region: Region) -> Mesh {
    match region {
        Region::Tetrahedron => tetra_mesh(BELL_TETRAHEDRON_VERTICES),
        Region::Mirror => {
            let mut v = BELL_TETRAHEDRON_VERTICES;
            for x in &mut v {
                *x = [-x[0], -x[1], -x[2]];
            }
            tetra_mesh(v)
        }
        Region::Intersection | Region::Pyramid => {
            let vertices = vec![
                [1.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, -1.0, 0.0],
                [0.0, 0.0, 1.0],
                [0.0, 0.0, -1.0],
            ];
            let mut faces = Vec::with_capacity(8);
            for &sx in &[0usize, 1] {
                for &sy in &[2usize, 3] {
                    for &sz in &[4usize, 5] {
                        faces.push(orient_outward(&vertices, [sx, sy, sz]));
                    }
                }
            }
            Mesh { vertices, faces }
        }
    }
}
