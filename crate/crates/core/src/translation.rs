//! Translation structures: hammocks, stability, convex truncations and maturity.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graded::GradedAlgebra;
use crate::qdual::quadratic_dual;
use crate::quiver::{BoundQuiver, Quiver, Relation, Translation};

#[derive(Debug)]
pub struct TranslationStructure {
    pub bound: BoundQuiver,
    pub n: usize,
    algebra: GradedAlgebra,
}

impl TranslationStructure {
    pub fn new(bound: BoundQuiver) -> Result<TranslationStructure> {
        let n = bound
            .translation
            .as_ref()
            .ok_or_else(|| Error::MissingTranslate("bound quiver carries no translation".into()))?
            .n;
        let algebra = GradedAlgebra::new(&bound);
        Ok(TranslationStructure { bound, n, algebra })
    }
    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }
    fn translation(&self) -> &Translation {
        self.bound.translation.as_ref().unwrap()
    }
    pub fn tau(&self, v: usize) -> Option<usize> {
        self.translation().tau(v)
    }
    pub fn tau_inv(&self, v: usize) -> Option<usize> {
        self.translation().tau_inv(v)
    }
    pub fn is_projective(&self, v: usize) -> bool {
        self.tau(v).is_none()
    }
    pub fn is_injective(&self, v: usize) -> bool {
        self.tau_inv(v).is_none()
    }
    fn name(&self, v: usize) -> &str {
        self.bound.quiver.vertex_name(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Ending,
    Starting,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HammockArrow {
    pub arrow: usize,
    pub level: usize,
    pub from: (usize, usize),
    pub to: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hammock {
    pub endpoint: usize,
    pub direction: Direction,
    /// `(j, t) -> mu(j, t)`, only entries with `mu >= 1`.
    pub mu: BTreeMap<(usize, usize), usize>,
    pub arrows: Vec<HammockArrow>,
}

impl Hammock {
    pub fn level(&self, t: usize) -> Vec<(usize, usize)> {
        self.mu
            .iter()
            .filter(|((_, s), _)| *s == t)
            .map(|(&(j, _), &m)| (j, m))
            .collect()
    }
}

/// The hammock ending at `i` needs `tau i`; the one starting at `i` needs `tau^- i`.
pub fn hammock(ts: &TranslationStructure, i: usize, dir: Direction) -> Result<Hammock> {
    let q = &ts.bound.quiver;
    match dir {
        Direction::Ending if ts.is_projective(i) => {
            return Err(Error::MissingTranslate(format!(
                "{} is projective",
                ts.name(i)
            )));
        }
        Direction::Starting if ts.is_injective(i) => {
            return Err(Error::MissingTranslate(format!(
                "{} is injective",
                ts.name(i)
            )));
        }
        _ => {}
    }
    let alg = ts.algebra();
    let mut mu = BTreeMap::new();
    let mut arrows = Vec::new();
    for t in 0..=ts.n + 1 {
        for j in 0..q.num_vertices() {
            let d = match dir {
                Direction::Ending => alg.dim(t, j, i)?,
                Direction::Starting => alg.dim(t, i, j)?,
            };
            if d > 0 {
                mu.insert((j, t), d);
            }
        }
    }
    for t in 0..=ts.n {
        for (a, ar) in q.arrows().iter().enumerate() {
            let (j, jp) = (ar.source, ar.target);
            let alpha = alg.arrow(a)?;
            let nonzero = match dir {
                // p from j' to i of length t, p.alpha nonzero
                Direction::Ending => {
                    mu.contains_key(&(jp, t)) && !alg.right_mult_matrix(&alpha, t, i)?.is_zero()
                }
                // p from i to j of length t, alpha.p nonzero
                Direction::Starting => {
                    mu.contains_key(&(j, t)) && !alg.left_mult_matrix(&alpha, t, i)?.is_zero()
                }
            };
            if nonzero {
                let (from, to) = match dir {
                    Direction::Ending => ((j, t + 1), (jp, t)),
                    Direction::Starting => ((j, t), (jp, t + 1)),
                };
                arrows.push(HammockArrow {
                    arrow: a,
                    level: t,
                    from,
                    to,
                });
            }
        }
    }
    Ok(Hammock {
        endpoint: i,
        direction: dir,
        mu,
        arrows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BijectionFailure {
    Multiplicity {
        vertex: (usize, usize),
        ending: usize,
        starting: usize,
    },
    Arrow {
        arrow: usize,
        level: usize,
    },
}

/// Checks that `(j, t) -> (j, n + 1 - t)` maps the hammock ending at `i` onto the one
/// starting at `tau i`, with multiplicities and arrows.
pub fn hammock_bijection_check(
    ts: &TranslationStructure,
    i: usize,
) -> Result<Option<BijectionFailure>> {
    let ti = ts
        .tau(i)
        .ok_or_else(|| Error::MissingTranslate(format!("{} is projective", ts.name(i))))?;
    let end = hammock(ts, i, Direction::Ending)?;
    let start = hammock(ts, ti, Direction::Starting)?;
    let n1 = ts.n + 1;
    let mut keys: BTreeSet<(usize, usize)> = end.mu.keys().copied().collect();
    keys.extend(start.mu.keys().map(|&(j, t)| (j, n1 - t)));
    for (j, t) in keys {
        let a = end.mu.get(&(j, t)).copied().unwrap_or(0);
        let b = start.mu.get(&(j, n1 - t)).copied().unwrap_or(0);
        if a != b {
            return Ok(Some(BijectionFailure::Multiplicity {
                vertex: (j, t),
                ending: a,
                starting: b,
            }));
        }
    }
    let mapped: BTreeSet<(usize, usize)> = end
        .arrows
        .iter()
        .map(|h| (h.arrow, ts.n - h.level))
        .collect();
    let other: BTreeSet<(usize, usize)> = start.arrows.iter().map(|h| (h.arrow, h.level)).collect();
    if let Some(&(arrow, level)) = mapped.symmetric_difference(&other).next() {
        return Ok(Some(BijectionFailure::Arrow { arrow, level }));
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexVerdict {
    Pass,
    Skipped,
    MissingTranslate,
    NoTranslationPath,
    Bijection(BijectionFailure),
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub verdicts: Vec<(usize, VertexVerdict)>,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.verdicts
            .iter()
            .all(|(_, v)| matches!(v, VertexVerdict::Pass | VertexVerdict::Skipped))
    }
    pub fn checked(&self) -> usize {
        self.verdicts
            .iter()
            .filter(|(_, v)| !matches!(v, VertexVerdict::Skipped))
            .count()
    }
}

pub fn is_stable_n_translation(
    ts: &TranslationStructure,
    interior: &[usize],
) -> Result<StabilityReport> {
    let inner: BTreeSet<usize> = interior.iter().copied().collect();
    let verdicts = (0..ts.bound.quiver.num_vertices())
        .into_par_iter()
        .map(|v| {
            if !inner.contains(&v) {
                return Ok((v, VertexVerdict::Skipped));
            }
            let Some(tv) = ts.tau(v) else {
                return Ok((v, VertexVerdict::MissingTranslate));
            };
            if ts.tau_inv(v).is_none() {
                return Ok((v, VertexVerdict::MissingTranslate));
            }
            if ts.algebra().dim(ts.n + 1, tv, v)? == 0 {
                return Ok((v, VertexVerdict::NoTranslationPath));
            }
            Ok((
                v,
                match hammock_bijection_check(ts, v)? {
                    None => VertexVerdict::Pass,
                    Some(f) => VertexVerdict::Bijection(f),
                },
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilityReport { verdicts })
}

/// A path that leaves `members` and comes back, if any.
pub fn convexity_witness(q: &Quiver, members: &[usize]) -> Option<Vec<usize>> {
    let inside: BTreeSet<usize> = members.iter().copied().collect();
    let out = q.reachable_from(members);
    let back = q.reaching(members);
    let bad = (0..q.num_vertices())
        .find(|v| !inside.contains(v) && out.contains(v) && back.contains(v))?;
    // member -> bad, then bad -> member, both by breadth-first search over arrows
    let mut from_member = HashMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &m in &inside {
        from_member.insert(m, None);
        queue.push_back(m);
    }
    while let Some(v) = queue.pop_front() {
        if v == bad {
            break;
        }
        for &a in q.arrows_from(v) {
            let t = q.arrow(a).target;
            if !from_member.contains_key(&t) && !inside.contains(&t) {
                from_member.insert(t, Some(a));
                queue.push_back(t);
            }
        }
    }
    let mut first = Vec::new();
    let mut v = bad;
    while let Some(Some(a)) = from_member.get(&v) {
        first.push(*a);
        v = q.arrow(*a).source;
    }
    first.reverse();
    let mut to_member = HashMap::new();
    to_member.insert(bad, None);
    let mut queue = VecDeque::from([bad]);
    let mut end = bad;
    'bfs: while let Some(v) = queue.pop_front() {
        for &a in q.arrows_from(v) {
            let t = q.arrow(a).target;
            if to_member.contains_key(&t) {
                continue;
            }
            to_member.insert(t, Some(a));
            if inside.contains(&t) {
                end = t;
                break 'bfs;
            }
            queue.push_back(t);
        }
    }
    let mut second = Vec::new();
    let mut v = end;
    while let Some(Some(a)) = to_member.get(&v) {
        second.push(*a);
        v = q.arrow(*a).source;
        if v == bad {
            break;
        }
    }
    second.reverse();
    first.extend(second);
    Some(first)
}

/// Full bound subquiver on a convex vertex set; the translation is restricted too.
pub fn truncate(bq: &BoundQuiver, vertices: &[usize]) -> Result<BoundQuiver> {
    let q = &bq.quiver;
    let mut members: Vec<usize> = vertices.to_vec();
    members.sort();
    members.dedup();
    if let Some(&v) = members.iter().find(|&&v| v >= q.num_vertices()) {
        return Err(Error::UnknownVertex(format!("index {v}")));
    }
    if let Some(w) = convexity_witness(q, &members) {
        let p = q.path(&w)?;
        return Err(Error::NonConvex(format!(
            "path {} leaves the subquiver",
            q.path_to_string(&p)
        )));
    }
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut arrows = Vec::new();
    let mut arrow_map = HashMap::new();
    for (a, ar) in q.arrows().iter().enumerate() {
        if let (Some(&s), Some(&t)) = (pos.get(&ar.source), pos.get(&ar.target)) {
            arrow_map.insert(a, arrows.len());
            arrows.push(crate::quiver::Arrow {
                name: ar.name.clone(),
                source: s,
                target: t,
            });
        }
    }
    let sub = Quiver::new(
        q.name.clone(),
        members
            .iter()
            .map(|&v| q.vertex_name(v).to_string())
            .collect(),
        arrows,
    )?;
    let mut rels = Vec::new();
    for r in bq.relations() {
        if pos.contains_key(&r.source) && pos.contains_key(&r.target) {
            let mut terms = Vec::new();
            for (p, c) in r.terms() {
                let ids: Vec<usize> = p.arrows.iter().map(|a| arrow_map[a]).collect();
                terms.push((sub.path(&ids)?, c.clone()));
            }
            rels.extend(Relation::new(&sub, terms)?);
        }
    }
    let mut out = BoundQuiver::new(sub, bq.field, rels)?;
    if let Some(t) = &bq.translation {
        let pairs = t
            .tau
            .iter()
            .filter_map(|(a, b)| Some((*pos.get(a)?, *pos.get(b)?)));
        out = out.with_translation(Translation::new(t.n, pairs)?)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaturityWitness {
    /// Vertex `i` of the truncation, `tau^- i`, and the target `j` in the truncation.
    pub vertex: usize,
    pub inverse_translate: usize,
    pub target: usize,
}

#[derive(Clone, Debug)]
pub struct MaturityReport {
    pub mature: bool,
    pub witnesses: Vec<MaturityWitness>,
    /// Verdict of the criterion "tau i or the inverse dual translate of i lies outside";
    /// `None` when `q` is infinite.
    pub simple_criterion: Option<bool>,
}

/// `q = None` stands for an infinite Koszul parameter.
pub fn is_tau_mature(
    bq: &BoundQuiver,
    truncation: &[usize],
    q: Option<usize>,
) -> Result<MaturityReport> {
    let members: BTreeSet<usize> = truncation.iter().copied().collect();
    let Some(q) = q else {
        return Ok(MaturityReport {
            mature: true,
            witnesses: Vec::new(),
            simple_criterion: None,
        });
    };
    let t = bq
        .translation
        .as_ref()
        .ok_or_else(|| Error::MissingTranslate("bound quiver carries no translation".into()))?;
    let dual = quadratic_dual(bq)?;
    let alg = GradedAlgebra::with_cutoff(&dual, q.max(crate::graded::DEFAULT_CUTOFF));
    let mut witnesses = Vec::new();
    for &i in &members {
        let Some(ti) = t.tau_inv(i) else { continue };
        for &j in &members {
            if alg.dim(q, ti, j)? > 0 {
                witnesses.push(MaturityWitness {
                    vertex: i,
                    inverse_translate: ti,
                    target: j,
                });
            }
        }
    }
    let mut simple = true;
    for &i in &members {
        let tau_in = t.tau(i).is_some_and(|v| members.contains(&v));
        let mut ends = Vec::new();
        for j in 0..bq.quiver.num_vertices() {
            if alg.dim(q, i, j)? > 0 {
                ends.push(j);
            }
        }
        let dual_in = ends.len() == 1 && members.contains(&ends[0]);
        if tau_in && dual_in {
            simple = false;
        }
    }
    Ok(MaturityReport {
        mature: witnesses.is_empty(),
        witnesses,
        simple_criterion: Some(simple),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use crate::scalar::Field;

    fn line() -> BoundQuiver {
        parse(
            "quiver L vertices: 1 2 3 4 arrows: a: 1 -> 2 b: 2 -> 3 c: 3 -> 4 relations:",
            Field::Rational,
        )
        .unwrap()
    }

    #[test]
    fn convexity_witness_found() {
        let q = line();
        assert!(truncate(&q, &[0, 1]).is_ok());
        let err = truncate(&q, &[0, 2]).unwrap_err();
        assert_eq!(
            err,
            Error::NonConvex("path b.a leaves the subquiver".into())
        );
    }

    #[test]
    fn truncation_keeps_relations() {
        let q = parse(
            "quiver L vertices: 1 2 3 4 arrows: a: 1 -> 2 b: 2 -> 3 c: 3 -> 4 relations: b.a; c.b;",
            Field::Rational,
        )
        .unwrap();
        let t = truncate(&q, &[1, 2, 3]).unwrap();
        assert_eq!(t.relations().len(), 1);
        assert_eq!(t.relations()[0].to_string(&t.quiver), "c.b");
    }

    #[test]
    fn hammock_requires_translate() {
        let q = line()
            .with_translation(Translation::new(1, [(2, 0)]).unwrap())
            .unwrap();
        let ts = TranslationStructure::new(q).unwrap();
        assert!(matches!(
            hammock(&ts, 0, Direction::Ending),
            Err(Error::MissingTranslate(_))
        ));
        assert!(hammock(&ts, 2, Direction::Ending).is_ok());
        assert!(hammock(&ts, 0, Direction::Starting).is_ok());
    }

    #[test]
    fn infinite_q_is_mature() {
        let r = is_tau_mature(&line(), &[0, 1], None).unwrap();
        assert!(r.mature);
    }
}
