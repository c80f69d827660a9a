//! Quivers, paths and homogeneous relations.
//!
//! Paths are stored in traversal order: `arrows[0]` is applied first. In
//! written form a path reads right to left, so `b.a` is the path that runs
//! `a` and then `b`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug)]
pub struct Quiver {
    pub name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    out_arrows: Vec<Vec<usize>>,
    in_arrows: Vec<Vec<usize>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.vertices == other.vertices && self.arrows == other.arrows
    }
}
impl Eq for Quiver {}

impl Quiver {
    pub fn new(
        name: impl Into<String>,
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
    ) -> Result<Quiver> {
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let mut arrow_index = HashMap::new();
        let mut out_arrows = vec![Vec::new(); vertices.len()];
        let mut in_arrows = vec![Vec::new(); vertices.len()];
        for (k, a) in arrows.iter().enumerate() {
            if arrow_index.insert(a.name.clone(), k).is_some() {
                return Err(Error::DuplicateName(a.name.clone()));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::UnknownVertex(format!(
                    "index out of range for arrow {}",
                    a.name
                )));
            }
            out_arrows[a.source].push(k);
            in_arrows[a.target].push(k);
        }
        Ok(Quiver {
            name: name.into(),
            vertices,
            arrows,
            vertex_index,
            arrow_index,
            out_arrows,
            in_arrows,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }
    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }
    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }
    pub fn arrow_id(&self, name: &str) -> Result<usize> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }
    /// Arrows starting at `v`.
    pub fn arrows_from(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }
    /// Arrows ending at `v`.
    pub fn arrows_into(&self, v: usize) -> &[usize] {
        &self.in_arrows[v]
    }

    /// Some vertex on an oriented cycle, if any.
    pub fn find_cycle(&self) -> Option<usize> {
        let n = self.num_vertices();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_arrows[v].len()).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &a in &self.out_arrows[v] {
                let t = self.arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        if seen == n {
            None
        } else {
            (0..n).find(|&v| indeg[v] > 0)
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Vertices reachable from `v` by paths of length at least one.
    pub fn reachable_from(&self, starts: &[usize]) -> HashSet<usize> {
        let mut seen = HashSet::new();
        let mut stack: Vec<usize> = starts.to_vec();
        while let Some(v) = stack.pop() {
            for &a in &self.out_arrows[v] {
                let t = self.arrows[a].target;
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Vertices from which one of `ends` is reachable by a path of length at least one.
    pub fn reaching(&self, ends: &[usize]) -> HashSet<usize> {
        let mut seen = HashSet::new();
        let mut stack: Vec<usize> = ends.to_vec();
        while let Some(v) = stack.pop() {
            for &a in &self.in_arrows[v] {
                let s = self.arrows[a].source;
                if seen.insert(s) {
                    stack.push(s);
                }
            }
        }
        seen
    }

    pub fn path_to_string(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e_{}", self.vertices[p.source]);
        }
        p.arrows
            .iter()
            .rev()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Builds a path from arrow indices in traversal order.
    pub fn path(&self, arrows: &[usize]) -> Result<Path> {
        let first = *arrows
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty arrow list".into()))?;
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::NotComposable(self.arrows[w[1]].name.clone()));
            }
        }
        Ok(Path {
            source: self.arrows[first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows: arrows.to_vec(),
        })
    }

    /// Parses a written path such as `c.b.a` (right to left).
    pub fn parse_path(&self, s: &str) -> Result<Path> {
        let mut ids = Vec::new();
        for name in s.split('.').rev() {
            ids.push(self.arrow_id(name.trim())?);
        }
        self.path(&ids)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn stationary(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// The path that runs `before` and then `self`.
    pub fn after(&self, before: &Path) -> Path {
        assert_eq!(before.target, self.source, "paths do not compose");
        let mut arrows = before.arrows.clone();
        arrows.extend_from_slice(&self.arrows);
        Path {
            source: before.source,
            target: self.target,
            arrows,
        }
    }

    pub fn then_arrow(&self, q: &Quiver, a: usize) -> Path {
        assert_eq!(q.arrow(a).source, self.target);
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path {
            source: self.source,
            target: q.arrow(a).target,
            arrows,
        }
    }

    pub fn arrow_then(&self, q: &Quiver, a: usize) -> Path {
        assert_eq!(q.arrow(a).target, self.source);
        let mut arrows = vec![a];
        arrows.extend_from_slice(&self.arrows);
        Path {
            source: q.arrow(a).source,
            target: self.target,
            arrows,
        }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All paths of length `t` from `i` to `j`, in canonical order.
pub fn enumerate_paths(q: &Quiver, i: usize, j: usize, t: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack = vec![Path::stationary(i)];
    // Depth-first in traversal order produces lexicographic order directly
    // once children are pushed in reverse.
    while let Some(p) = stack.pop() {
        if p.len() == t {
            if p.target == j {
                out.push(p);
            }
            continue;
        }
        for &a in q.arrows_from(p.target).iter().rev() {
            stack.push(p.then_arrow(q, a));
        }
    }
    out.sort();
    out
}

/// A homogeneous linear combination of parallel paths, normalized so that the
/// smallest path has coefficient one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub source: usize,
    pub target: usize,
    pub degree: usize,
    terms: Vec<(Path, Scalar)>,
}

impl Relation {
    /// Validates and normalizes. Returns `Ok(None)` when all coefficients cancel.
    pub fn new(q: &Quiver, terms: Vec<(Path, Scalar)>) -> Result<Option<Relation>> {
        let mut acc: BTreeMap<Path, Scalar> = BTreeMap::new();
        for (p, c) in terms {
            match acc.get_mut(&p) {
                Some(x) => *x = &*x + &c,
                None => {
                    acc.insert(p, c);
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        let Some((first, _)) = acc.iter().next() else {
            return Ok(None);
        };
        let describe = || {
            acc.keys()
                .map(|p| q.path_to_string(p))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        let (s, t, d) = (first.source, first.target, first.len());
        if acc.keys().any(|p| p.len() != d) {
            return Err(Error::NonHomogeneous(describe()));
        }
        if acc.keys().any(|p| p.source != s || p.target != t) {
            return Err(Error::MixedEndpoints(describe()));
        }
        if d < 2 {
            return Err(Error::ShortRelation(describe()));
        }
        let lead = acc.values().next().unwrap().inv();
        let terms = acc.into_iter().map(|(p, c)| (p, &c * &lead)).collect();
        Ok(Some(Relation {
            source: s,
            target: t,
            degree: d,
            terms,
        }))
    }

    pub fn terms(&self) -> &[(Path, Scalar)] {
        &self.terms
    }

    pub fn leading_path(&self) -> &Path {
        &self.terms[0].0
    }

    pub fn to_string(&self, q: &Quiver) -> String {
        format_combination(q, &self.terms)
    }

    /// Coordinates against an indexed list of paths.
    pub fn coordinates(
        &self,
        field: Field,
        index: &HashMap<Path, usize>,
        dim: usize,
    ) -> Vec<Scalar> {
        let mut v = vec![field.zero(); dim];
        for (p, c) in &self.terms {
            v[index[p]] = c.clone();
        }
        v
    }
}

/// Writes `c1 * p1 + c2 * p2 ...`, omitting unit coefficients.
pub fn format_combination(q: &Quiver, terms: &[(Path, Scalar)]) -> String {
    let mut s = String::new();
    for (k, (p, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if !a.is_one() {
            s.push_str(&a.to_string());
            s.push_str(" * ");
        }
        s.push_str(&q.path_to_string(p));
    }
    s
}

/// An explicit translation on vertices, stored with its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Translation {
    pub n: usize,
    pub tau: BTreeMap<usize, usize>,
    pub tau_inv: BTreeMap<usize, usize>,
}

impl Translation {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Translation> {
        let mut tau = BTreeMap::new();
        let mut tau_inv = BTreeMap::new();
        for (x, y) in pairs {
            if tau.insert(x, y).is_some() || tau_inv.insert(y, x).is_some() {
                return Err(Error::InvalidArgument(
                    "translation is not injective".into(),
                ));
            }
        }
        Ok(Translation { n, tau, tau_inv })
    }

    pub fn tau(&self, v: usize) -> Option<usize> {
        self.tau.get(&v).copied()
    }
    pub fn tau_inv(&self, v: usize) -> Option<usize> {
        self.tau_inv.get(&v).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiver {
    pub quiver: Quiver,
    pub field: Field,
    relations: Vec<Relation>,
    pub translation: Option<Translation>,
}

impl BoundQuiver {
    pub fn new(quiver: Quiver, field: Field, relations: Vec<Relation>) -> Result<BoundQuiver> {
        for r in &relations {
            for (_, c) in &r.terms {
                if !field.contains(c) {
                    return Err(Error::FieldMismatch(r.to_string(&quiver)));
                }
            }
        }
        Ok(BoundQuiver {
            quiver,
            field,
            relations,
            translation: None,
        })
    }

    /// Builds relations from raw term lists, dropping those that cancel.
    pub fn from_terms(
        quiver: Quiver,
        field: Field,
        raw: Vec<Vec<(Path, Scalar)>>,
    ) -> Result<BoundQuiver> {
        let mut rels = Vec::new();
        for t in raw {
            if let Some(r) = Relation::new(&quiver, t)? {
                rels.push(r);
            }
        }
        BoundQuiver::new(quiver, field, rels)
    }

    pub fn with_translation(mut self, t: Translation) -> Result<BoundQuiver> {
        let n = self.quiver.num_vertices();
        if t.tau.iter().any(|(&a, &b)| a >= n || b >= n) {
            return Err(Error::InvalidArgument(
                "translation mentions unknown vertex".into(),
            ));
        }
        self.translation = Some(t);
        Ok(self)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn is_quadratic(&self) -> bool {
        self.relations.iter().all(|r| r.degree == 2)
    }

    pub fn require_quadratic(&self) -> Result<()> {
        match self.relations.iter().find(|r| r.degree != 2) {
            Some(r) => Err(Error::NotQuadratic(r.to_string(&self.quiver))),
            None => Ok(()),
        }
    }

    pub fn require_acyclic(&self) -> Result<()> {
        match self.quiver.find_cycle() {
            Some(v) => Err(Error::NotAcyclic(self.quiver.vertex_name(v).to_string())),
            None => Ok(()),
        }
    }

    pub fn relations_between(
        &self,
        i: usize,
        j: usize,
        degree: usize,
    ) -> impl Iterator<Item = &Relation> {
        self.relations
            .iter()
            .filter(move |r| r.source == i && r.target == j && r.degree == degree)
    }

    /// Reverses every arrow; each path is read backwards with the same coefficient.
    pub fn opposite(&self) -> BoundQuiver {
        let q = &self.quiver;
        let arrows = q
            .arrows()
            .iter()
            .map(|a| Arrow {
                name: toggle_op(&a.name),
                source: a.target,
                target: a.source,
            })
            .collect();
        let oq = Quiver::new(toggle_op(&q.name), q.vertices().to_vec(), arrows)
            .expect("opposite of a valid quiver");
        let rels = self
            .relations
            .iter()
            .map(|r| {
                let terms = r
                    .terms
                    .iter()
                    .map(|(p, c)| (reverse_path(p), c.clone()))
                    .collect();
                Relation::new(&oq, terms)
                    .expect("opposite relation")
                    .expect("nonzero")
            })
            .collect();
        let mut out = BoundQuiver::new(oq, self.field, rels).expect("same field");
        if let Some(t) = &self.translation {
            out.translation = Some(Translation {
                n: t.n,
                tau: t.tau_inv.clone(),
                tau_inv: t.tau.clone(),
            });
        }
        out
    }
}

pub fn reverse_path(p: &Path) -> Path {
    let mut arrows = p.arrows.clone();
    arrows.reverse();
    Path {
        source: p.target,
        target: p.source,
        arrows,
    }
}

fn toggle_op(name: &str) -> String {
    match name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{name}^op"),
    }
}
