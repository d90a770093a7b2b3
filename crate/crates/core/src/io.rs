//! JSON forms for operators.
//!
//! Matrices serialize as `{"dim": N, "re": [[..]], "im": [[..]]}`; two-qubit
//! operators are also accepted in Pauli form `{"alpha", "a", "b", "c"}`.
//! Either shape is valid anywhere the CLI takes an operator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::pauli::{from_pauli, HermitianOp, PauliCoeffs2Q};
use crate::states::DensityMatrix;

/// Explicit matrix literal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&HermitianOp> for MatrixJson {
    fn from(op: &HermitianOp) -> Self {
        let n = op.dim();
        let mut re = vec![vec![0.0; n]; n];
        let mut im = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let z = op.entry(i, j);
                re[i][j] = z.re;
                im[i][j] = z.im;
            }
        }
        Self { dim: n, re, im }
    }
}

impl TryFrom<&MatrixJson> for HermitianOp {
    type Error = crate::error::Error;

    fn try_from(m: &MatrixJson) -> Result<Self> {
        let n = m.dim;
        let shape_ok = m.re.len() == n
            && m.im.len() == n
            && m.re.iter().all(|r| r.len() == n)
            && m.im.iter().all(|r| r.len() == n);
        if !shape_ok {
            return Err(crate::error::Error::DimMismatch {
                expected: n,
                got: m.re.len().min(m.im.len()),
            });
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(Complex64::new(m.re[i][j], m.im[i][j]));
            }
        }
        HermitianOp::new(n, entries)
    }
}

/// Either accepted operator shape.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OperatorJson {
    Pauli(PauliCoeffs2Q),
    Matrix(MatrixJson),
}

impl OperatorJson {
    pub fn into_op(self) -> Result<HermitianOp> {
        match self {
            OperatorJson::Matrix(m) => HermitianOp::try_from(&m),
            OperatorJson::Pauli(p) => Ok(from_pauli(&p)),
        }
    }
}

impl Serialize for HermitianOp {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for HermitianOp {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(de)?;
        HermitianOp::try_from(&raw).map_err(serde::de::Error::custom)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from(self.op()).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let op = HermitianOp::deserialize(de)?;
        DensityMatrix::new(op).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::hs_distance;
    use crate::states::werner;

    #[test]
    fn matrix_roundtrip() {
        let w = werner(0.6).unwrap();
        let json = serde_json::to_string(&w).unwrap();
        let back: DensityMatrix = serde_json::from_str(&json).unwrap();
        assert!(hs_distance(w.op(), back.op()).unwrap() < 1e-14);
    }

    #[test]
    fn pauli_form_is_accepted() {
        let text = r#"{"alpha": 0.25, "a": [0,0,0], "b": [0,0,0],
                       "c": [[-0.2,0,0],[0,-0.2,0],[0,0,-0.2]]}"#;
        let op = serde_json::from_str::<OperatorJson>(text)
            .unwrap()
            .into_op()
            .unwrap();
        assert!(hs_distance(&op, werner(0.8).unwrap().op()).unwrap() < 1e-14);
    }

    #[test]
    fn matrix_form_is_accepted() {
        let w = werner(0.3).unwrap();
        let text = serde_json::to_string(&MatrixJson::from(w.op())).unwrap();
        let op = serde_json::from_str::<OperatorJson>(&text)
            .unwrap()
            .into_op()
            .unwrap();
        assert!(hs_distance(&op, w.op()).unwrap() < 1e-14);
    }

    #[test]
    fn invalid_states_fail_deserialization() {
        // trace 2 is not a state
        let text = r#"{"dim":2,"re":[[1,0],[0,1]],"im":[[0,0],[0,0]]}"#;
        assert!(serde_json::from_str::<DensityMatrix>(text).is_err());
        // non-Hermitian matrix is not an operator
        let text = r#"{"dim":2,"re":[[0,1],[0,0]],"im":[[0,0],[0,0]]}"#;
        assert!(serde_json::from_str::<HermitianOp>(text).is_err());
    }
}
