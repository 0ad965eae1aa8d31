//! JSON file formats for algebras, linear maps and subspaces.
//!
//! Algebra files list only the nonzero basis products; output is canonical
//! (products in row-major basis order, value entries in basis order, zeros
//! omitted, two-space indentation, trailing newline), so writing a parsed
//! canonical file reproduces it byte for byte.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::Algebra;
use crate::coefficients::{CoeffDomain, DomainKind, Scalar};
use crate::error::{Error, Result};
use crate::linear::{Matrix, Subspace, Vector};
use crate::morphisms::AlgebraMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum FieldSpec {
    Q,
    Fp { p: u64 },
    Zn { n: u64 },
}

impl FieldSpec {
    pub fn of(domain: CoeffDomain) -> Self {
        match domain.kind() {
            DomainKind::Rationals => FieldSpec::Q,
            DomainKind::PrimeField(p) => FieldSpec::Fp { p },
            DomainKind::ResidueRing(n) => FieldSpec::Zn { n },
        }
    }

    pub fn domain(&self) -> Result<CoeffDomain> {
        match *self {
            FieldSpec::Q => Ok(CoeffDomain::rationals()),
            FieldSpec::Fp { p } => CoeffDomain::prime_field(p),
            FieldSpec::Zn { n } => CoeffDomain::residue_ring(n),
        }
    }
}

/// Label → scalar entries, written in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Entries(Vec<(String, String)>);

impl Serialize for Entries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for Entries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = BTreeMap::<String, String>::deserialize(d)?;
        Ok(Entries(m.into_iter().collect()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductEntry {
    left: String,
    right: String,
    value: Entries,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    field: FieldSpec,
    dim: usize,
    basis: Vec<String>,
    products: Vec<ProductEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    source: String,
    target: String,
    matrix: Vec<Vec<String>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(json_error)?;
    let domain = file.field.domain()?;
    if file.dim != file.basis.len() {
        return Err(Error::Parse(format!("dim is {} but {} basis labels are given", file.dim, file.basis.len())));
    }
    let n = file.dim;
    let index = |label: &str| file.basis.iter().position(|l| l == label).ok_or_else(|| Error::Parse(format!("unknown basis label {label:?}")));
    let mut table = vec![vec![Vector::zero(domain, n); n]; n];
    let mut seen = vec![vec![false; n]; n];
    for p in &file.products {
        let (i, j) = (index(&p.left)?, index(&p.right)?);
        if seen[i][j] {
            return Err(Error::Parse(format!("product {} {} listed twice", p.left, p.right)));
        }
        seen[i][j] = true;
        let mut coords = vec![domain.zero(); n];
        for (label, text) in &p.value.0 {
            coords[index(label)?] = domain.parse_scalar(text)?;
        }
        table[i][j] = Vector::new(domain, coords)?;
    }
    Algebra::new(file.name, domain, file.basis, table)
}

fn entries(labels: &[String], v: &Vector) -> Entries {
    Entries(labels.iter().zip(v.coords()).filter(|(_, c)| !c.is_zero()).map(|(l, c)| (l.clone(), c.to_string())).collect())
}

pub fn write_algebra(a: &Algebra) -> String {
    let labels = a.labels();
    let mut products = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let v = a.product(i, j);
            if !v.is_zero() {
                products.push(ProductEntry { left: labels[i].clone(), right: labels[j].clone(), value: entries(labels, v) });
            }
        }
    }
    to_pretty(&AlgebraFile {
        name: a.name().to_string(),
        field: FieldSpec::of(a.domain()),
        dim: a.dim(),
        basis: labels.to_vec(),
        products,
    })
}

/// The algebra file as a JSON value, for embedding in reports.
pub fn algebra_value(a: &Algebra) -> serde_json::Value {
    serde_json::from_str(&write_algebra(a)).expect("valid JSON")
}

fn parse_rows(domain: CoeffDomain, rows: &[Vec<String>]) -> Result<Vec<Vec<Scalar>>> {
    rows.iter().map(|r| r.iter().map(|s| domain.parse_scalar(s)).collect()).collect()
}

/// Reads a map file; `source` and `target` supply the algebras its matrix
/// (rows indexed by the target basis) acts between.
pub fn parse_map(text: &str, source: &Algebra, target: &Algebra) -> Result<AlgebraMap> {
    let file: MapFile = serde_json::from_str(text).map_err(json_error)?;
    let domain = source.domain();
    let rows = parse_rows(domain, &file.matrix)?;
    if rows.len() != target.dim() || rows.iter().any(|r| r.len() != source.dim()) {
        return Err(Error::ShapeMismatch(format!(
            "matrix must be {}x{} to map {} into {}",
            target.dim(),
            source.dim(),
            source.name(),
            target.name()
        )));
    }
    AlgebraMap::new(source.clone(), target.clone(), Matrix::from_rows(domain, rows, source.dim())?)
}

pub fn write_map(f: &AlgebraMap) -> String {
    let m = f.matrix();
    let matrix = (0..m.rows()).map(|r| m.row(r).coords().iter().map(Scalar::to_string).collect()).collect();
    to_pretty(&MapFile { source: f.source().name().to_string(), target: f.target().name().to_string(), matrix })
}

/// A subspace file is a JSON array of spanning vectors, each an array of
/// scalar strings in basis coordinates.
pub fn parse_subspace(text: &str, domain: CoeffDomain, ambient_dim: usize) -> Result<Subspace> {
    let rows: Vec<Vec<String>> = serde_json::from_str(text).map_err(json_error)?;
    let rows = parse_rows(domain, &rows)?;
    let vectors = rows
        .into_iter()
        .map(|r| {
            if r.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: r.len() });
            }
            Vector::new(domain, r)
        })
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(domain, ambient_dim, &vectors)
}

/// Writes the reduced basis of `s`.
pub fn write_subspace(s: &Subspace) -> String {
    let rows: Vec<Vec<String>> = s.basis().iter().map(|v| v.coords().iter().map(Scalar::to_string).collect()).collect();
    to_pretty(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::a2;

    const A2: &str = r#"{
  "name": "A2",
  "field": {
    "type": "Q"
  },
  "dim": 2,
  "basis": [
    "e1",
    "e2"
  ],
  "products": [
    {
      "left": "e1",
      "right": "e1",
      "value": {
        "e1": "1"
      }
    },
    {
      "left": "e1",
      "right": "e2",
      "value": {
        "e2": "1"
      }
    }
  ]
}
"#;

    #[test]
    fn a2_roundtrip() {
        let a = parse_algebra(A2).unwrap();
        assert_eq!(a.domain(), CoeffDomain::rationals());
        let ref_a2 = a2(CoeffDomain::rationals());
        assert_eq!(a.product(0, 1), ref_a2.product(0, 1));
        assert_eq!(a.product(1, 0), ref_a2.product(1, 0));
        assert_eq!(write_algebra(&a), A2);
    }

    #[test]
    fn parse_errors() {
        let bad_scalar = A2.replace("\"e2\": \"1\"", "\"e2\": \"1/0\"");
        assert!(matches!(parse_algebra(&bad_scalar), Err(Error::Parse(_))));
        let bad_label = A2.replace("\"right\": \"e2\"", "\"right\": \"e3\"");
        assert!(matches!(parse_algebra(&bad_label), Err(Error::Parse(_))));
        let bad_dim = A2.replace("\"dim\": 2", "\"dim\": 3");
        assert!(matches!(parse_algebra(&bad_dim), Err(Error::Parse(_))));
        let bad_field = A2.replace("\"type\": \"Q\"", "\"type\": \"Fp\", \"p\": 4");
        assert!(matches!(parse_algebra(&bad_field), Err(Error::InvalidDomain(_))));
        assert!(matches!(parse_algebra("{}"), Err(Error::Parse(_))));
    }

    #[test]
    fn residues_are_reduced() {
        let text = A2.replace("\"type\": \"Q\"", "\"type\": \"Zn\", \"n\": 6").replace("\"e1\": \"1\"", "\"e1\": \"7\"");
        let a = parse_algebra(&text).unwrap();
        assert_eq!(a.product(0, 0), &Vector::from_i64s(a.domain(), &[1, 0]));
    }

    #[test]
    fn maps_and_subspaces() {
        let a = parse_algebra(A2).unwrap();
        let f = parse_map(r#"{"source":"A2","target":"A2","matrix":[["-1","0"],["0","-1"]]}"#, &a, &a).unwrap();
        assert_eq!(f.matrix(), &Matrix::from_i64_rows(a.domain(), &[&[-1, 0], &[0, -1]]));
        let back = parse_map(&write_map(&f), &a, &a).unwrap();
        assert_eq!(back.matrix(), f.matrix());
        assert!(matches!(parse_map(r#"{"source":"A2","target":"A2","matrix":[["1"]]}"#, &a, &a), Err(Error::ShapeMismatch(_))));
        let s = parse_subspace(r#"[["0","2"],["0","1/3"]]"#, a.domain(), 2).unwrap();
        assert_eq!(s.rank(), 1);
        assert_eq!(write_subspace(&s), "[\n  [\n    \"0\",\n    \"1\"\n  ]\n]\n");
        assert!(parse_subspace("[]", a.domain(), 2).unwrap().is_zero());
    }
}
