//! JSON interchange with explicit vertex and arrow indices.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{Arrow, BoundQuiver, Quiver, Relation, Translation};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexJson {
    pub index: usize,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub index: usize,
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub coefficient: String,
    /// Arrow indices in traversal order (first arrow applied first).
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationJson {
    pub source: usize,
    pub target: usize,
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranslationJson {
    pub n: usize,
    pub tau: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub name: String,
    pub field: String,
    pub vertices: Vec<VertexJson>,
    pub arrows: Vec<ArrowJson>,
    pub relations: Vec<RelationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<TranslationJson>,
}

pub fn to_json(bq: &BoundQuiver) -> QuiverJson {
    let q = &bq.quiver;
    QuiverJson {
        name: q.name.clone(),
        field: bq.field.to_string(),
        vertices: q
            .vertices()
            .iter()
            .enumerate()
            .map(|(index, name)| VertexJson {
                index,
                name: name.clone(),
            })
            .collect(),
        arrows: q
            .arrows()
            .iter()
            .enumerate()
            .map(|(index, a)| ArrowJson {
                index,
                name: a.name.clone(),
                source: a.source,
                target: a.target,
            })
            .collect(),
        relations: bq
            .relations()
            .iter()
            .map(|r| RelationJson {
                source: r.source,
                target: r.target,
                degree: r.degree,
                terms: r
                    .terms()
                    .iter()
                    .map(|(p, c)| TermJson {
                        coefficient: c.to_string(),
                        path: p.arrows.clone(),
                    })
                    .collect(),
            })
            .collect(),
        translation: bq.translation.as_ref().map(|t| TranslationJson {
            n: t.n,
            tau: t.tau.iter().map(|(&a, &b)| [a, b]).collect(),
        }),
    }
}

pub fn to_json_string(bq: &BoundQuiver) -> String {
    serde_json::to_string_pretty(&to_json(bq)).expect("serializable")
}

fn parse_coefficient(field: Field, s: &str) -> Result<crate::scalar::Scalar> {
    let bad = || Error::FieldMismatch(format!("coefficient `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    field.from_ratio(&n, &d).ok_or_else(bad)
}

pub fn from_json(j: &QuiverJson) -> Result<BoundQuiver> {
    let field = Field::parse(&j.field)?;
    let mut vs = j.vertices.clone();
    vs.sort_by_key(|v| v.index);
    if vs.iter().enumerate().any(|(k, v)| v.index != k) {
        return Err(Error::InvalidArgument("vertex indices must be 0..n".into()));
    }
    let mut arrs = j.arrows.clone();
    arrs.sort_by_key(|a| a.index);
    if arrs.iter().enumerate().any(|(k, a)| a.index != k) {
        return Err(Error::InvalidArgument("arrow indices must be 0..m".into()));
    }
    let q = Quiver::new(
        j.name.clone(),
        vs.into_iter().map(|v| v.name).collect(),
        arrs.into_iter()
            .map(|a| Arrow {
                name: a.name,
                source: a.source,
                target: a.target,
            })
            .collect(),
    )?;
    let mut rels = Vec::new();
    for r in &j.relations {
        let mut terms = Vec::new();
        for t in &r.terms {
            if t.path.iter().any(|&a| a >= q.num_arrows()) {
                return Err(Error::UnknownArrow(format!("index in {:?}", t.path)));
            }
            terms.push((q.path(&t.path)?, parse_coefficient(field, &t.coefficient)?));
        }
        if let Some(rel) = Relation::new(&q, terms)? {
            rels.push(rel);
        }
    }
    let mut bq = BoundQuiver::new(q, field, rels)?;
    if let Some(t) = &j.translation {
        bq = bq.with_translation(Translation::new(t.n, t.tau.iter().map(|p| (p[0], p[1])))?)?;
    }
    Ok(bq)
}

pub fn from_json_str(s: &str) -> Result<BoundQuiver> {
    let j: QuiverJson =
        serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("json: {e}")))?;
    from_json(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl;

    #[test]
    fn json_roundtrip() {
        let src = "quiver sq vertices: 1 2 3 4 arrows: a: 1 -> 2 b: 2 -> 4 c: 1 -> 3 d: 3 -> 4 relations: b.a - 2/3 * d.c;";
        let q = dsl::parse(src, Field::Rational).unwrap();
        let s = to_json_string(&q);
        assert_eq!(from_json_str(&s).unwrap(), q);
    }
}
