//! JSON channel documents.
//!
//! ```json
//! {"n": 2, "rep": "superop", "kind": "channel", "data": [[[1.0, 0.0], ...], ...]}
//! ```
//!
//! Matrices are row-major nested arrays of `[re, im]` pairs; `kraus` data is an
//! array of such matrices. Floats are written in shortest round-trip form, so
//! `from_json(to_json(doc)) == doc` bit for bit.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{ChoiMatrix, KrausSet, MapKind, PauliTransferMatrix, Superoperator};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rep {
    Superop,
    Choi,
    Kraus,
    Ptm,
}

pub type Rows = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    Matrix(Rows),
    Kraus(Vec<Rows>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelDocument {
    pub n: usize,
    pub rep: Rep,
    pub kind: MapKind,
    pub data: Payload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<BTreeMap<String, String>>,
}

fn rows_of(m: &ComplexMatrix) -> Rows {
    (0..m.dim()).map(|r| m.row(r).iter().map(|z| [z.re, z.im]).collect()).collect()
}

fn matrix_of(rows: &Rows, dim: usize, what: &str) -> Result<ComplexMatrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::InvalidArgument(format!("{what} must be {dim}x{dim}")));
    }
    let data = rows.iter().flatten().map(|[re, im]| Complex64::new(*re, *im)).collect();
    ComplexMatrix::new(dim, data)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

impl ChannelDocument {
    /// Document for `s` in the requested representation. `Kraus` needs a CP
    /// map and `Ptm` a qubit map.
    pub fn from_superop(s: &Superoperator, kind: MapKind, rep: Rep) -> Result<Self> {
        if !s.matrix().is_finite() {
            return Err(Error::NonFinite);
        }
        let data = match rep {
            Rep::Superop => Payload::Matrix(rows_of(s.matrix())),
            Rep::Choi => Payload::Matrix(rows_of(s.to_choi().matrix())),
            Rep::Ptm => Payload::Matrix(rows_of(s.to_ptm()?.matrix())),
            Rep::Kraus => Payload::Kraus(s.to_choi().to_kraus(1e-10)?.operators().iter().map(rows_of).collect()),
        };
        Ok(Self {
            n: s.n(),
            rep,
            kind,
            data,
            meta: None,
        })
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<String>) -> Self {
        self.meta.get_or_insert_with(BTreeMap::new).insert(key.to_owned(), value.into());
        self
    }

    /// Checks payload shape against `rep` and `n` and converts.
    pub fn to_superop(&self) -> Result<Superoperator> {
        let n = self.n;
        if n == 0 {
            return Err(invalid("n must be positive"));
        }
        match (&self.rep, &self.data) {
            (Rep::Superop, Payload::Matrix(rows)) => Superoperator::new(n, matrix_of(rows, n * n, "superop data")?),
            (Rep::Choi, Payload::Matrix(rows)) => {
                Ok(ChoiMatrix::new(n, matrix_of(rows, n * n, "choi data")?)?.to_superop())
            }
            (Rep::Ptm, Payload::Matrix(rows)) => {
                if n != 2 {
                    return Err(Error::NotQubit { n });
                }
                Ok(PauliTransferMatrix::new(matrix_of(rows, 4, "ptm data")?)?.to_superop())
            }
            (Rep::Kraus, Payload::Kraus(ops)) => {
                let ops = ops
                    .iter()
                    .map(|rows| matrix_of(rows, n, "kraus operator"))
                    .collect::<Result<Vec<_>>>()?;
                Ok(KrausSet::new(n, ops)?.to_superop())
            }
            (Rep::Kraus, Payload::Matrix(_)) => Err(invalid("kraus data must be an array of matrices")),
            (_, Payload::Kraus(_)) => Err(invalid("data must be a single matrix")),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(|e| invalid(format!("malformed channel document: {e}")))?;
        doc.to_superop()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn store(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json() + "\n").map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))
    }
}

/// Pretty JSON with object keys sorted at every level.
pub fn to_canonical_json<T: Serialize + ?Sized>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&value).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_psi, phi_eq1};

    #[test]
    fn round_trips_every_rep() {
        let s = build_psi(2).superop;
        for rep in [Rep::Superop, Rep::Choi, Rep::Kraus, Rep::Ptm] {
            let doc = ChannelDocument::from_superop(&s, MapKind::Channel, rep).unwrap();
            let back = ChannelDocument::from_json(&doc.to_json()).unwrap();
            assert_eq!(back, doc);
            let err = (&back.to_superop().unwrap().into_matrix() - s.matrix()).fro_norm();
            assert!(err < 1e-10, "{rep:?}: {err}");
        }
    }

    #[test]
    fn keys_are_sorted() {
        let doc = ChannelDocument::from_superop(&phi_eq1(), MapKind::Channel, Rep::Ptm)
            .unwrap()
            .with_meta("z", "1")
            .with_meta("a", "2");
        let text = doc.to_json();
        let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("data") < pos("kind") && pos("kind") < pos("meta") && pos("meta") < pos("n"));
        assert!(pos("a") < pos("z"));
    }

    #[test]
    fn rejects_malformed() {
        assert!(ChannelDocument::from_json("{").is_err());
        let bad = r#"{"n": 2, "rep": "superop", "kind": "channel", "data": [[[1.0, 0.0]]]}"#;
        assert!(ChannelDocument::from_json(bad).is_err());
        let ptm3 = r#"{"n": 3, "rep": "ptm", "kind": "channel", "data": [[[1.0, 0.0]]]}"#;
        assert!(ChannelDocument::from_json(ptm3).is_err());
        let extra = r#"{"n": 1, "rep": "superop", "kind": "channel", "data": [[[1.0, 0.0]]], "x": 1}"#;
        assert!(ChannelDocument::from_json(extra).is_err());
        let ok = r#"{"n": 1, "rep": "superop", "kind": "channel", "data": [[[1.0, 0.0]]]}"#;
        assert!(ChannelDocument::from_json(ok).is_ok());
    }
}
