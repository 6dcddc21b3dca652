//! JSON documents for relations and certificates.
//!
//! Rationals are written as strings (`"-3/7"`), matrices row-major. Parsing
//! reports the offending field as a dotted path, e.g. `target.form` or
//! `relation.basis[2]`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::decompose::Certificate;
use crate::error::{Error, Result};
use crate::invariants::MultiplicityVector;
use crate::matrix::Matrix;
use crate::relation::LinearRelation;
use crate::scalar::{self, Rational, Scalar};
use crate::space::{BilinearSpace, Flavor};
use crate::subspace::Subspace;

/// How a generated document was produced, so it can be regenerated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub seed: u64,
    pub multiplicities: MultiplicityVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDocument {
    pub relation: LinearRelation,
    pub generator: Option<Generator>,
}

impl From<LinearRelation> for RelationDocument {
    fn from(relation: LinearRelation) -> Self {
        RelationDocument {
            relation,
            generator: None,
        }
    }
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::parse(join(path, key), "missing field"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::parse(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))
}

fn usize_of(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| Error::parse(path, "expected a non-negative integer"))
}

fn rational(v: &Value, path: &str) -> Result<Scalar> {
    let parsed = match v {
        Value::String(s) => scalar::parse_rational(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => scalar::parse_rational(&n.to_string()),
        _ => return Err(Error::parse(path, "expected a rational literal string")),
    };
    parsed.map_err(|e| match e {
        Error::Parse { msg, .. } => Error::parse(path, msg),
        other => other,
    })
}

fn vector(v: &Value, len: usize, path: &str) -> Result<Vec<Scalar>> {
    let items = array(v, path)?;
    if items.len() != len {
        return Err(Error::parse(path, format!("expected {len} entries, found {}", items.len())));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| rational(x, &format!("{path}[{i}]")))
        .collect()
}

fn space(v: &Value, flavor: Flavor, path: &str) -> Result<BilinearSpace> {
    let obj = object(v, path)?;
    let dim = usize_of(field(obj, path, "dim")?, &join(path, "dim"))?;
    let form_path = join(path, "form");
    let rows = array(field(obj, path, "form")?, &form_path)?;
    if rows.len() != dim {
        return Err(Error::parse(&form_path, format!("expected {dim} rows, found {}", rows.len())));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| vector(r, dim, &format!("{form_path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    BilinearSpace::new(Matrix::from_rows(dim, &rows), flavor)
        .map_err(|_| Error::parse(form_path, "form is not skew-symmetric"))
}

fn matrix_json(m: &Matrix) -> Value {
    serde_json::to_value(m).expect("matrices serialize")
}

fn space_json(s: &BilinearSpace) -> Value {
    json!({ "dim": s.dim(), "form": matrix_json(s.form()) })
}

impl RelationDocument {
    pub fn parse(text: &str) -> Result<RelationDocument> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::parse("", format!("invalid JSON: {e}")))?;
        RelationDocument::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<RelationDocument> {
        let root = object(value, "")?;
        let flavor = match field(root, "", "kind")?.as_str() {
            Some("presymplectic") => Flavor::Presymplectic,
            Some("poisson") => Flavor::Poisson,
            _ => return Err(Error::parse("kind", "expected \"presymplectic\" or \"poisson\"")),
        };
        let target = space(field(root, "", "target")?, flavor, "target")?;
        let source = space(field(root, "", "source")?, flavor, "source")?;
        let rel = object(field(root, "", "relation")?, "relation")?;
        let len = target.dim() + source.dim();
        let basis = array(field(rel, "relation", "basis")?, "relation.basis")?
            .iter()
            .enumerate()
            .map(|(i, v)| vector(v, len, &format!("relation.basis[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let relation = LinearRelation::new(target, source, Subspace::span(len, &basis))?;
        let generator = match root.get("generator") {
            None | Some(Value::Null) => None,
            Some(g) => Some(
                serde_json::from_value(g.clone()).map_err(|e| Error::parse("generator", e.to_string()))?,
            ),
        };
        Ok(RelationDocument { relation, generator })
    }

    pub fn to_value(&self) -> Value {
        let f = &self.relation;
        let mut doc = json!({
            "kind": f.flavor().as_str(),
            "target": space_json(f.target()),
            "source": space_json(f.source()),
            "relation": { "basis": matrix_json(f.graph().basis()) },
        });
        if let Some(g) = &self.generator {
            doc["generator"] = serde_json::to_value(g).expect("generator serializes");
        }
        doc
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("documents serialize")
    }
}

pub fn certificate_to_json(cert: &Certificate) -> String {
    serde_json::to_string_pretty(cert).expect("certificates serialize")
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let de = &mut serde_json::Deserializer::from_str(text);
    Certificate::deserialize(de).map_err(|e| Error::parse("certificate", e.to_string()))
}

/// A single rational as it appears in documents.
pub fn rational_json(x: &Scalar) -> Value {
    serde_json::to_value(Rational(x.clone())).expect("rationals serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{canonical_indecomposable, random_instance, IndecompType};
    use crate::decompose::decompose;

    const I1_DOC: &str = r#"{
        "kind": "presymplectic",
        "target": {"dim": 2, "form": [["0", "1"], ["-1", "0"]]},
        "source": {"dim": 2, "form": [["0", "1"], ["-1", "0"]]},
        "relation": {"basis": [["2", "0", "2", "0"], ["0", "1/3", "0", "1/3"]]}
    }"#;

    #[test]
    fn parse_canonicalizes_basis() {
        let doc = RelationDocument::parse(I1_DOC).unwrap();
        assert_eq!(doc.relation, canonical_indecomposable(IndecompType::I1, Flavor::Presymplectic));
        let rows = &doc.to_value()["relation"]["basis"];
        assert_eq!(rows[1], json!(["0", "1", "0", "1"]));
    }

    #[test]
    fn round_trip() {
        for flavor in [Flavor::Presymplectic, Flavor::Poisson] {
            for t in IndecompType::ALL {
                let doc = RelationDocument::from(canonical_indecomposable(t, flavor));
                assert_eq!(RelationDocument::parse(&doc.to_json()).unwrap(), doc);
            }
        }
        let n = MultiplicityVector::unit(IndecompType::I6) + MultiplicityVector::unit(IndecompType::I2);
        let doc = RelationDocument {
            relation: random_instance(&n, Flavor::Poisson, 9).relation,
            generator: Some(Generator { seed: 9, multiplicities: n }),
        };
        let text = doc.to_json();
        assert_eq!(RelationDocument::parse(&text).unwrap(), doc);
        assert_eq!(RelationDocument::parse(&text).unwrap().to_json(), text);
    }

    fn error_path(text: &str) -> String {
        match RelationDocument::parse(text) {
            Err(Error::Parse { path, .. }) => path,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_name_the_field() {
        assert_eq!(error_path(&I1_DOC.replace(r#"["-1", "0"]]},
        "source""#, r#"["1", "0"]]},
        "source""#)), "target.form");
        assert_eq!(error_path(&I1_DOC.replace(r#""1/3", "0", "1/3""#, r#""1/0", "0", "1""#)), "relation.basis[1][1]");
        assert_eq!(error_path(&I1_DOC.replace(r#"["2", "0", "2", "0"]"#, r#"["2", "0", "2"]"#)), "relation.basis[0]");
        assert_eq!(error_path(&I1_DOC.replace("presymplectic", "symplectic")), "kind");
        assert_eq!(error_path(&I1_DOC.replace(r#""dim": 2, "form": [["0", "1"], ["-1", "0"]]},
        "relation""#, r#""dim": 3, "form": [["0", "1"], ["-1", "0"]]},
        "relation""#)), "source.form");
        assert_eq!(error_path("[1, 2"), "");
    }

    #[test]
    fn certificate_round_trip() {
        let f = random_instance(&MultiplicityVector::unit(IndecompType::I13), Flavor::Presymplectic, 3).relation;
        let cert = decompose(&f).unwrap();
        assert_eq!(parse_certificate(&certificate_to_json(&cert)).unwrap(), cert);
        assert!(matches!(parse_certificate("{}"), Err(Error::Parse { .. })));
    }
}
