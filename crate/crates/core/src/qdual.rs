//! Quadratic duals with respect to the pairing in which paths are orthonormal.

use std::collections::HashMap;

use crate::error::Result;
use crate::linalg::{canonical_basis, orthogonal_complement, span_rank};
use crate::quiver::{enumerate_paths, BoundQuiver, Path};
use crate::scalar::Scalar;

/// Canonical basis of the span of the degree-`d` relations from `i` to `j`,
/// in coordinates over `enumerate_paths(i, j, d)`.
pub fn relation_span(
    bq: &BoundQuiver,
    i: usize,
    j: usize,
    d: usize,
) -> (Vec<Path>, Vec<Vec<Scalar>>) {
    let paths = enumerate_paths(&bq.quiver, i, j, d);
    let index: HashMap<Path, usize> = paths
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, p)| (p, k))
        .collect();
    let rows: Vec<Vec<Scalar>> = bq
        .relations_between(i, j, d)
        .map(|r| r.coordinates(bq.field, &index, paths.len()))
        .collect();
    let basis = canonical_basis(bq.field, paths.len(), &rows);
    (paths, basis)
}

fn dual_name(name: &str) -> String {
    match name.strip_suffix("^!") {
        Some(b) => b.to_string(),
        None => format!("{name}^!"),
    }
}

/// Replaces the relations by their orthogonal complement in each `kQ_2(i, j)`.
pub fn quadratic_dual(bq: &BoundQuiver) -> Result<BoundQuiver> {
    bq.require_quadratic()?;
    let n = bq.quiver.num_vertices();
    let mut raw = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (paths, span) = relation_span(bq, i, j, 2);
            if paths.is_empty() {
                continue;
            }
            for v in orthogonal_complement(bq.field, paths.len(), &span) {
                raw.push(
                    paths
                        .iter()
                        .zip(v)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(p, c)| (p.clone(), c))
                        .collect::<Vec<_>>(),
                );
            }
        }
    }
    let mut q = bq.quiver.clone();
    q.name = dual_name(&q.name);
    let mut out = BoundQuiver::from_terms(q, bq.field, raw)?;
    out.translation = bq.translation.clone();
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualPairReport {
    /// Pairs `(i, j)` where `dim rho + dim dual != #paths`.
    pub dimension_failures: Vec<(usize, usize)>,
    /// Pairs where some relation pairs nontrivially with some dual relation.
    pub orthogonality_failures: Vec<(usize, usize)>,
    /// Pairs where the double dual differs from the original span.
    pub double_dual_failures: Vec<(usize, usize)>,
}

impl DualPairReport {
    pub fn passed(&self) -> bool {
        self.dimension_failures.is_empty()
            && self.orthogonality_failures.is_empty()
            && self.double_dual_failures.is_empty()
    }
}

/// Checks that `dual` carries the quadratic dual relations of `bq` on the same quiver.
pub fn check_dual_pair(bq: &BoundQuiver, dual: &BoundQuiver) -> Result<DualPairReport> {
    bq.require_quadratic()?;
    dual.require_quadratic()?;
    let n = bq.quiver.num_vertices();
    let f = bq.field;
    let mut rep = DualPairReport::default();
    for i in 0..n {
        for j in 0..n {
            let (paths, a) = relation_span(bq, i, j, 2);
            let (_, b) = relation_span(dual, i, j, 2);
            if paths.is_empty() {
                continue;
            }
            if a.len() + b.len() != paths.len() {
                rep.dimension_failures.push((i, j));
            }
            let orth = a.iter().all(|x| {
                b.iter().all(|y| {
                    let mut s = f.zero();
                    for (p, q) in x.iter().zip(y) {
                        s = &s + &(p * q);
                    }
                    s.is_zero()
                })
            });
            if !orth {
                rep.orthogonality_failures.push((i, j));
            }
            let dd = orthogonal_complement(f, paths.len(), &b);
            if dd != a {
                rep.double_dual_failures.push((i, j));
            }
        }
    }
    Ok(rep)
}

/// Computes the dual and checks the pair.
pub fn dual_pair_check(bq: &BoundQuiver) -> Result<DualPairReport> {
    let d = quadratic_dual(bq)?;
    check_dual_pair(bq, &d)
}

/// Whether two bound quivers on the same quiver have equal relation spans in every
/// degree up to `max_degree`.
pub fn same_relation_spans(a: &BoundQuiver, b: &BoundQuiver, max_degree: usize) -> bool {
    if a.quiver.num_vertices() != b.quiver.num_vertices() {
        return false;
    }
    let n = a.quiver.num_vertices();
    for d in 2..=max_degree {
        for i in 0..n {
            for j in 0..n {
                if relation_span(a, i, j, d).1 != relation_span(b, i, j, d).1 {
                    return false;
                }
            }
        }
    }
    true
}

/// `dim rho(i, j) + dim rho_perp(i, j)` summed against the number of length-two paths.
pub fn dimension_identity_holds(bq: &BoundQuiver, dual: &BoundQuiver) -> bool {
    let n = bq.quiver.num_vertices();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let (paths, a) = relation_span(bq, i, j, 2);
            let (_, b) = relation_span(dual, i, j, 2);
            span_rank(bq.field, paths.len(), &a) + span_rank(bq.field, paths.len(), &b)
                == paths.len()
        })
    })
}
