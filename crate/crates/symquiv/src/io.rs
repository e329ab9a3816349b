//! JSON file formats. Rationals are written as `"p/q"` strings (or plain
//! integers) so values survive serialization exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use symquiv_exact::{q_from_str, q_to_string, Matrix, Q};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, Side, SymmetricQuiver};
use crate::reflections::TubeData;
use crate::representations::Representation;
use crate::types::{build_canonical, TameType};

pub const SCHEMA: &str = "symquiv/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub id: String,
    pub tail: String,
    pub head: String,
}

/// A symmetric quiver on disk: either a canonical type such as `"A11:0,6"`
/// or explicit vertices, arrows and the swapped pairs of the involution.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub tame_type: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sigma_vertices: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sigma_arrows: Vec<(String, String)>,
    /// Optional dimension vector keyed by vertex name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<BTreeMap<String, i64>>,
}

impl QuiverFile {
    pub fn parse(text: &str) -> Result<QuiverFile> {
        let f: QuiverFile = serde_json::from_str(text).map_err(|e| Error::Malformed(format!("quiver file: {e}")))?;
        if let Some(s) = &f.schema {
            if s != SCHEMA {
                return Err(Error::Malformed(format!("unsupported schema {s}")));
            }
        }
        Ok(f)
    }

    pub fn to_quiver(&self) -> Result<SymmetricQuiver> {
        if self.vertices.is_empty() {
            let ty = self.tame_type.as_deref().ok_or_else(|| Error::Malformed("quiver file needs vertices or a type".into()))?;
            return build_canonical(TameType::parse(ty)?);
        }
        let arrows: Vec<(&str, &str, &str)> =
            self.arrows.iter().map(|a| (a.id.as_str(), a.tail.as_str(), a.head.as_str())).collect();
        let q = Quiver::new(&self.vertices.iter().map(String::as_str).collect::<Vec<_>>(), &arrows)?;
        SymmetricQuiver::from_names(q, &self.sigma_vertices, &self.sigma_arrows)
    }

    /// Explicit form of a symmetric quiver; each swapped pair is listed once
    /// with its plus member first.
    pub fn from_quiver(qs: &SymmetricQuiver) -> QuiverFile {
        let q = qs.quiver();
        let sigma_vertices = (0..q.num_vertices())
            .filter(|&x| qs.vertex_side(x) == Side::Plus)
            .map(|x| (q.vertex_name(x).to_string(), q.vertex_name(qs.sigma_vertex(x)).to_string()))
            .collect();
        let sigma_arrows = (0..q.num_arrows())
            .filter(|&a| qs.arrow_side(a) == Side::Plus)
            .map(|a| (q.arrow(a).id.clone(), q.arrow(qs.sigma_arrow(a)).id.clone()))
            .collect();
        QuiverFile {
            schema: Some(SCHEMA.into()),
            tame_type: None,
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowSpec { id: a.id.clone(), tail: q.vertex_name(a.tail).into(), head: q.vertex_name(a.head).into() })
                .collect(),
            sigma_vertices,
            sigma_arrows,
            dim: None,
        }
    }
}

/// Parses `"2,2,0"` (vertex order) or `"1=2,σ(1)=2"` (by name; unnamed
/// vertices are zero).
pub fn parse_dim(q: &Quiver, s: &str) -> Result<DimVector> {
    if s.contains('=') {
        let mut map = std::collections::HashMap::new();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Malformed(format!("bad entry {part:?}")))?;
            let v: i64 = v.trim().parse().map_err(|_| Error::Malformed(format!("bad dimension {v:?}")))?;
            map.insert(k.trim().to_string(), v);
        }
        return q.dim_from_map(&map);
    }
    let v: DimVector = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Malformed(format!("bad dimension {p:?}"))))
        .collect::<Result<_>>()?;
    q.check_dim(&v)?;
    Ok(v)
}

/// `p·h + Σ labels[i]·e_i` for the elements of one tube.
pub fn dim_from_labels(td: &TubeData, tube: usize, p: i64, labels: &[i64]) -> Result<DimVector> {
    let t = td.tubes.get(tube).ok_or_else(|| Error::Malformed(format!("no tube {tube}")))?;
    if labels.len() != t.period() {
        return Err(Error::Malformed(format!("tube {tube} has period {}, got {} labels", t.period(), labels.len())));
    }
    let mut d: DimVector = td.null_root.iter().map(|x| p * x).collect();
    for (c, e) in labels.iter().zip(&t.elements) {
        for (x, y) in d.iter_mut().zip(e) {
            *x += c * y;
        }
    }
    Ok(d)
}

/// A rational that reads from either a JSON integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Int(i64),
    Text(String),
}

impl RationalText {
    pub fn value(&self) -> Result<Q> {
        match self {
            RationalText::Int(n) => Ok(Q::from_integer((*n).into())),
            RationalText::Text(s) => q_from_str(s).ok_or_else(|| Error::Malformed(format!("bad rational {s:?}"))),
        }
    }
}

/// A representation on disk: dimensions by vertex name and one matrix per
/// arrow, as rows of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub dim: BTreeMap<String, i64>,
    pub matrices: BTreeMap<String, Vec<Vec<RationalText>>>,
}

impl RepFile {
    pub fn parse(text: &str) -> Result<RepFile> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("representation file: {e}")))
    }

    pub fn from_rep(q: &Quiver, v: &Representation<Q>) -> RepFile {
        let dim = (0..q.num_vertices()).map(|x| (q.vertex_name(x).to_string(), v.dims()[x] as i64)).collect();
        let matrices = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let m = v.mat(i);
                let rows = (0..m.rows()).map(|r| (0..m.cols()).map(|c| RationalText::Text(q_to_string(&m[(r, c)]))).collect()).collect();
                (a.id.clone(), rows)
            })
            .collect();
        RepFile { schema: Some(SCHEMA.into()), dim, matrices }
    }

    pub fn to_rep(&self, q: &Quiver) -> Result<Representation<Q>> {
        let map = self.dim.iter().map(|(k, v)| (k.clone(), *v)).collect();
        let dims = q.dim_from_map(&map)?;
        let mut mats = Vec::with_capacity(q.num_arrows());
        for a in q.arrows() {
            let (r, c) = (dims[a.head] as usize, dims[a.tail] as usize);
            let rows = match self.matrices.get(&a.id) {
                Some(rows) => rows,
                None if r == 0 || c == 0 => {
                    mats.push(Matrix::zeros(r, c));
                    continue;
                }
                None => return Err(Error::Malformed(format!("missing matrix for arrow {}", a.id))),
            };
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::Malformed(format!("matrix for arrow {} should be {r}x{c}", a.id)));
            }
            let vals = rows.iter().map(|row| row.iter().map(RationalText::value).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
            mats.push(Matrix::from_rows(vals, c).map_err(|e| Error::Malformed(format!("{e:?}")))?);
        }
        Representation::new(q, &dims, mats)
    }
}
