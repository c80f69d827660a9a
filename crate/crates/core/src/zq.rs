//! Returning-arrow quivers, preprojective presentations and finite windows of
//! the repetitive quiver `Z|_{n-1} Q`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graded::{Element, GradedAlgebra};
use crate::linalg::{canonical_basis, orthogonal_complement, Matrix};
use crate::qdual::{quadratic_dual, relation_span};
use crate::quiver::{enumerate_paths, Arrow, BoundQuiver, Path, Quiver, Relation, Translation};
use crate::scalar::Scalar;
use crate::translation::truncate;

/// Graded automorphism used to twist the bimodule action on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Twist {
    None,
    /// Every arrow scaled by `(-1)^n`.
    Sign,
    /// Arrow `k` scaled by the `k`-th scalar.
    Scaling(Vec<Scalar>),
}

#[derive(Clone, Debug)]
pub struct ReturningArrowQuiver {
    /// Arrows `0..base_arrows` are those of the input; the rest are returning arrows.
    pub bound: BoundQuiver,
    pub n: usize,
    pub base_arrows: usize,
    /// Returning arrow `base_arrows + k` is dual to `maximal[k]`.
    pub maximal: Vec<Element>,
    pub rho_m: Vec<Relation>,
    pub rho0: Vec<Relation>,
    pub quadratic: bool,
    pub warning: Option<String>,
}

impl ReturningArrowQuiver {
    pub fn is_returning(&self, arrow: usize) -> bool {
        arrow >= self.base_arrows
    }
}

fn unique_name(taken: &BTreeSet<String>, base: String) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

fn twist_scalars(bq: &BoundQuiver, n: usize, twist: &Twist) -> Result<Vec<Scalar>> {
    let m = bq.quiver.num_arrows();
    let f = bq.field;
    let scalars = match twist {
        Twist::None => vec![f.one(); m],
        Twist::Sign => vec![if n % 2 == 0 { f.one() } else { -f.one() }; m],
        Twist::Scaling(v) => {
            if v.len() != m {
                return Err(Error::InvalidTwist(format!(
                    "expected {m} scalars, got {}",
                    v.len()
                )));
            }
            if v.iter().any(|c| c.is_zero() || !f.contains(c)) {
                return Err(Error::InvalidTwist(
                    "scalars must be nonzero field elements".into(),
                ));
            }
            v.clone()
        }
    };
    // The scaled relations must stay inside the relation span.
    for r in bq.relations() {
        let (paths, span) = relation_span(bq, r.source, r.target, r.degree);
        let idx: HashMap<&Path, usize> = paths.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let mut v = vec![f.zero(); paths.len()];
        for (p, c) in r.terms() {
            let mut s = c.clone();
            for &a in &p.arrows {
                s = &s * &scalars[a];
            }
            v[idx[p]] = s;
        }
        let mut rows = span.clone();
        rows.push(v);
        if canonical_basis(f, paths.len(), &rows).len() != span.len() {
            return Err(Error::InvalidTwist(format!(
                "does not preserve {}",
                r.to_string(&bq.quiver)
            )));
        }
    }
    Ok(scalars)
}

/// Adds one returning arrow per maximal bound path and the trivial extension relations.
pub fn returning_arrow_quiver(bq: &BoundQuiver, twist: &Twist) -> Result<ReturningArrowQuiver> {
    let alg = GradedAlgebra::new(bq);
    let n = alg.properly_graded_degree()?;
    let scalars = twist_scalars(bq, n, twist)?;
    let f = bq.field;
    let q = &bq.quiver;
    let m = q.num_arrows();
    let maximal = alg.maximal_bound_paths()?;

    // Coordinates with respect to the maximal-path basis of each top component.
    let mut dual_coords: HashMap<(usize, usize), (Vec<usize>, Matrix)> = HashMap::new();
    for (k, x) in maximal.iter().enumerate() {
        dual_coords
            .entry((x.source, x.target))
            .or_insert_with(|| (Vec::new(), Matrix::zeros(f, 0, 0)))
            .0
            .push(k);
    }
    for ((s, t), (ks, inv)) in dual_coords.iter_mut() {
        let d = alg.dim(n, *s, *t)?;
        let cols: Vec<Vec<Scalar>> = ks.iter().map(|&k| maximal[k].coords.clone()).collect();
        let basis = crate::graded::columns_to_matrix(f, d, cols);
        *inv = basis
            .inverse()
            .expect("maximal paths form a basis of the top component");
    }
    let beta_value = |k: usize, y: &Element| -> Scalar {
        let x = &maximal[k];
        if y.source != x.source || y.target != x.target || y.degree != n {
            return f.zero();
        }
        let (ks, inv) = &dual_coords[&(x.source, x.target)];
        let pos = ks.iter().position(|&j| j == k).unwrap();
        let c = inv.apply(&y.coords);
        c[pos].clone()
    };

    let mut taken: BTreeSet<String> = q.arrows().iter().map(|a| a.name.clone()).collect();
    let mut arrows: Vec<Arrow> = q.arrows().to_vec();
    for (k, x) in maximal.iter().enumerate() {
        let name = unique_name(&taken, format!("beta{k}"));
        taken.insert(name.clone());
        arrows.push(Arrow {
            name,
            source: x.target,
            target: x.source,
        });
    }
    let qt = Quiver::new(format!("{}~", q.name), q.vertices().to_vec(), arrows)?;
    let nv = qt.num_vertices();
    let beta = |a: usize| a >= m;

    let mut rels: Vec<Relation> = Vec::new();
    for r in bq.relations() {
        rels.push(Relation::new(&qt, r.terms().to_vec())?.expect("nonzero"));
    }
    let mut rho_m = Vec::new();
    for a in m..qt.num_arrows() {
        for b in m..qt.num_arrows() {
            if qt.arrow(a).target == qt.arrow(b).source {
                let p = qt.path(&[a, b])?;
                rho_m.push(Relation::new(&qt, vec![(p, f.one())])?.unwrap());
            }
        }
    }

    let mut rho0 = Vec::new();
    for a in 0..nv {
        for b in 0..nv {
            let mixed: Vec<Path> = enumerate_paths(&qt, a, b, 2)
                .into_iter()
                .filter(|p| beta(p.arrows[0]) != beta(p.arrows[1]))
                .collect();
            if mixed.is_empty() {
                continue;
            }
            // Functionals on the degree n-1 component from b to a.
            let d = if n >= 1 { alg.dim(n - 1, b, a)? } else { 0 };
            let mut mat = Matrix::zeros(f, d, mixed.len());
            for (col, p) in mixed.iter().enumerate() {
                let (first, second) = (p.arrows[0], p.arrows[1]);
                for row in 0..d {
                    let mut x = alg.zero(n - 1, b, a)?;
                    x.coords[row] = f.one();
                    let val = if beta(first) {
                        // beta_p then alpha: x -> beta_p(x alpha)
                        beta_value(first - m, &alg.multiply(&x, &alg.arrow(second)?)?)
                    } else {
                        // alpha' then beta_p: x -> beta_p(alpha' x)
                        beta_value(second - m, &alg.multiply(&alg.arrow(first)?, &x)?)
                    };
                    mat.set(row, col, val);
                }
            }
            for v in canonical_basis(f, mixed.len(), &mat.kernel()) {
                let terms: Vec<(Path, Scalar)> = mixed
                    .iter()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(p, c)| {
                        let c = if beta(p.arrows[0]) {
                            c
                        } else {
                            &c * &scalars[p.arrows[0]]
                        };
                        (p.clone(), c)
                    })
                    .collect();
                if let Some(r) = Relation::new(&qt, terms)? {
                    rho0.push(r);
                }
            }
        }
    }
    rels.extend(rho_m.iter().cloned());
    rels.extend(rho0.iter().cloned());
    let bound = BoundQuiver::new(qt, f, rels)?;

    let (quadratic, warning) = quadraticity(bq, &alg, &bound, n)?;
    Ok(ReturningArrowQuiver {
        bound,
        n,
        base_arrows: m,
        maximal,
        rho_m,
        rho0,
        quadratic,
        warning,
    })
}

/// Compares the presented algebra with the graded dimensions of the trivial extension.
fn quadraticity(
    bq: &BoundQuiver,
    alg: &GradedAlgebra,
    bound: &BoundQuiver,
    n: usize,
) -> Result<(bool, Option<String>)> {
    if let Some(r) = bq.relations().iter().find(|r| r.degree != 2) {
        return Ok((
            false,
            Some(format!(
                "base relation {} has degree {}",
                r.to_string(&bq.quiver),
                r.degree
            )),
        ));
    }
    let presented = GradedAlgebra::with_cutoff(bound, n + 2);
    let nv = bq.quiver.num_vertices();
    for t in 0..=n + 2 {
        for a in 0..nv {
            for b in 0..nv {
                let mut expected = if t <= n { alg.dim(t, a, b)? } else { 0 };
                if (1..=n + 1).contains(&t) {
                    expected += alg.dim(n + 1 - t, b, a)?;
                }
                let got = presented.dim(t, a, b)?;
                if got != expected {
                    let q = &bound.quiver;
                    return Ok((
                        false,
                        Some(format!(
                            "degree {t} from {} to {}: presented dimension {got}, trivial extension {expected}",
                            q.vertex_name(a),
                            q.vertex_name(b)
                        )),
                    ));
                }
            }
        }
    }
    Ok((true, None))
}

#[derive(Clone, Debug)]
pub struct PreprojectivePresentation {
    pub bound: BoundQuiver,
    pub returning: ReturningArrowQuiver,
    pub warning: Option<String>,
}

/// Presentation of the (n+1)-preprojective algebra of an n-slice algebra.
pub fn preprojective_presentation(
    gamma: &BoundQuiver,
    n: usize,
) -> Result<PreprojectivePresentation> {
    gamma.require_quadratic()?;
    let lambda = quadratic_dual(gamma)?;
    let found = GradedAlgebra::new(&lambda).properly_graded_degree()?;
    if found != n {
        return Err(Error::NotProperlyGraded {
            lengths: vec![found],
            witness: format!("dual is {found}-properly graded, expected {n}"),
        });
    }
    let ret = returning_arrow_quiver(&lambda, &Twist::Sign)?;
    let qt = &ret.bound.quiver;
    let m = ret.base_arrows;
    let f = gamma.field;
    let mut raw: Vec<Vec<(Path, Scalar)>> = Vec::new();
    for r in quadratic_dual(&lambda)?.relations() {
        raw.push(r.terms().to_vec());
    }
    let mut by_pair: BTreeMap<(usize, usize), Vec<&Relation>> = BTreeMap::new();
    for r in &ret.rho0 {
        by_pair.entry((r.source, r.target)).or_default().push(r);
    }
    let nv = qt.num_vertices();
    for a in 0..nv {
        for b in 0..nv {
            let mixed: Vec<Path> = enumerate_paths(qt, a, b, 2)
                .into_iter()
                .filter(|p| (p.arrows[0] >= m) != (p.arrows[1] >= m))
                .collect();
            if mixed.is_empty() {
                continue;
            }
            let idx: HashMap<Path, usize> = mixed
                .iter()
                .cloned()
                .enumerate()
                .map(|(k, p)| (p, k))
                .collect();
            let rows: Vec<Vec<Scalar>> = by_pair
                .get(&(a, b))
                .map(|rs| {
                    rs.iter()
                        .map(|r| r.coordinates(f, &idx, mixed.len()))
                        .collect()
                })
                .unwrap_or_default();
            for v in orthogonal_complement(f, mixed.len(), &rows) {
                raw.push(
                    mixed
                        .iter()
                        .cloned()
                        .zip(v)
                        .filter(|(_, c)| !c.is_zero())
                        .collect(),
                );
            }
        }
    }
    let mut q = qt.clone();
    q.name = format!("Pi({})", gamma.quiver.name);
    let bound = BoundQuiver::from_terms(q, f, raw)?;
    let warning = ret.warning.clone();
    Ok(PreprojectivePresentation {
        bound,
        returning: ret,
        warning,
    })
}

/// A finite range of slices of `Z|_{n-1} Q`.
#[derive(Clone, Debug)]
pub struct ZqWindow {
    /// Carries the translation `(u, t) -> (u, t - 1)` where defined.
    pub bound: BoundQuiver,
    pub base: ReturningArrowQuiver,
    pub t_min: i64,
    pub t_max: i64,
    /// Arrows that would leave the range, written as `name[t]`.
    pub dropped_arrows: Vec<String>,
    pub dropped_relations: usize,
    base_vertices: usize,
}

impl ZqWindow {
    pub fn n(&self) -> usize {
        self.base.n
    }
    pub fn vertex(&self, u: usize, t: i64) -> Option<usize> {
        if t < self.t_min || t > self.t_max || u >= self.base_vertices {
            return None;
        }
        Some((t - self.t_min) as usize * self.base_vertices + u)
    }
    /// `(base vertex, slice)` of a window vertex.
    pub fn coords(&self, v: usize) -> (usize, i64) {
        (
            v % self.base_vertices,
            self.t_min + (v / self.base_vertices) as i64,
        )
    }
    pub fn num_base_vertices(&self) -> usize {
        self.base_vertices
    }
}

pub fn window_vertex_name(u: &str, t: i64) -> String {
    format!("{u}[{t}]")
}

/// Slices `t_min..=t_max` of `Z|_{n-1} Q`, with boundary arrows and the relations
/// that mention them dropped.
pub fn zq_window(bq: &BoundQuiver, t_min: i64, t_max: i64) -> Result<ZqWindow> {
    let ret = returning_arrow_quiver(bq, &Twist::None)?;
    window_from_returning(ret, t_min, t_max)
}

pub fn window_from_returning(
    ret: ReturningArrowQuiver,
    t_min: i64,
    t_max: i64,
) -> Result<ZqWindow> {
    if t_min > t_max {
        return Err(Error::EmptyRange(t_min, t_max));
    }
    if !ret.quadratic {
        return Err(Error::NonQuadraticTrivialExtension(
            ret.warning.clone().unwrap_or_default(),
        ));
    }
    let qt = &ret.bound.quiver;
    let nv = qt.num_vertices();
    let m = ret.base_arrows;
    let slices = (t_max - t_min + 1) as usize;
    let mut vertices = Vec::with_capacity(nv * slices);
    for s in 0..slices {
        for u in 0..nv {
            vertices.push(window_vertex_name(qt.vertex_name(u), t_min + s as i64));
        }
    }
    let vid = |u: usize, t: i64| (t - t_min) as usize * nv + u;
    let mut arrows = Vec::new();
    let mut arrow_of: HashMap<(usize, i64), usize> = HashMap::new();
    let mut dropped_arrows = Vec::new();
    for s in 0..slices {
        let t = t_min + s as i64;
        for a in 0..qt.num_arrows() {
            let ar = qt.arrow(a);
            let name = window_vertex_name(&ar.name, t);
            if a >= m {
                if t == t_max {
                    dropped_arrows.push(name);
                    continue;
                }
                arrow_of.insert((a, t), arrows.len());
                arrows.push(Arrow {
                    name,
                    source: vid(ar.source, t),
                    target: vid(ar.target, t + 1),
                });
            } else {
                arrow_of.insert((a, t), arrows.len());
                arrows.push(Arrow {
                    name,
                    source: vid(ar.source, t),
                    target: vid(ar.target, t),
                });
            }
        }
    }
    let wq = Quiver::new(
        format!(
            "Z|{}({})[{t_min}..{t_max}]",
            ret.n as i64 - 1,
            ret.bound.quiver.name.trim_end_matches('~')
        ),
        vertices,
        arrows,
    )?;
    let mut raw = Vec::new();
    let mut dropped_relations = 0;
    for r in ret.bound.relations() {
        for s in 0..slices {
            let t0 = t_min + s as i64;
            let mut terms = Vec::new();
            let mut ok = true;
            for (p, c) in r.terms() {
                let mut t = t0;
                let mut ids = Vec::with_capacity(p.len());
                for &a in &p.arrows {
                    match arrow_of.get(&(a, t)) {
                        Some(&w) => ids.push(w),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                    if a >= m {
                        t += 1;
                    }
                }
                if !ok {
                    break;
                }
                terms.push((wq.path(&ids)?, c.clone()));
            }
            if ok {
                raw.push(terms);
            } else {
                dropped_relations += 1;
            }
        }
    }
    let pairs = (1..slices).flat_map(|s| (0..nv).map(move |u| (s * nv + u, (s - 1) * nv + u)));
    let translation = Translation::new(ret.n, pairs)?;
    let bound = BoundQuiver::from_terms(wq, ret.bound.field, raw)?.with_translation(translation)?;
    Ok(ZqWindow {
        bound,
        base: ret,
        t_min,
        t_max,
        dropped_arrows,
        dropped_relations,
        base_vertices: nv,
    })
}

/// Extracts the full bound subquiver on one vertex per translation orbit.
pub fn extract_tau_slice(w: &ZqWindow, vertices: &[usize]) -> Result<BoundQuiver> {
    let nv = w.num_base_vertices();
    let mut hit = vec![None; nv];
    for &v in vertices {
        if v >= w.bound.quiver.num_vertices() {
            return Err(Error::InvalidSlice(format!(
                "vertex index {v} outside the window"
            )));
        }
        let (u, t) = w.coords(v);
        if let Some(prev) = hit[u] {
            return Err(Error::InvalidSlice(format!(
                "orbit of {} hit twice (slices {prev} and {t})",
                w.base.bound.quiver.vertex_name(u)
            )));
        }
        hit[u] = Some(t);
    }
    if let Some(u) = hit.iter().position(|h| h.is_none()) {
        return Err(Error::InvalidSlice(format!(
            "orbit of {} missed",
            w.base.bound.quiver.vertex_name(u)
        )));
    }
    let mut out = truncate(&w.bound, vertices)?;
    out.translation = None;
    out.quiver.name = format!("slice({})", w.base.bound.quiver.name.trim_end_matches('~'));
    Ok(out)
}

/// Slice choice given as a slice index for every base vertex.
pub fn extract_tau_slice_by_choice(w: &ZqWindow, choice: &[i64]) -> Result<BoundQuiver> {
    if choice.len() != w.num_base_vertices() {
        return Err(Error::InvalidSlice(format!(
            "expected {} entries",
            w.num_base_vertices()
        )));
    }
    let mut vs = Vec::new();
    for (u, &t) in choice.iter().enumerate() {
        vs.push(w.vertex(u, t).ok_or_else(|| {
            Error::InvalidSlice(format!("slice {t} outside {}..{}", w.t_min, w.t_max))
        })?);
    }
    extract_tau_slice(w, &vs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionReport {
    pub vertex_bijection: bool,
    pub arrow_counts: bool,
    pub relation_dimensions: bool,
    pub graded_dimensions: bool,
}

impl ReconstructionReport {
    pub fn passed(&self) -> bool {
        self.vertex_bijection
            && self.arrow_counts
            && self.relation_dimensions
            && self.graded_dimensions
    }
}

/// Rebuilds the repetitive quiver from an extracted slice and compares it with the
/// corresponding region of `w` through the vertex map `((u, c(u)), r) -> (u, c(u) + r)`.
pub fn verify_slice_reconstruction(
    w: &ZqWindow,
    slice_vertices: &[usize],
) -> Result<ReconstructionReport> {
    let slice = extract_tau_slice(w, slice_vertices)?;
    let cs: Vec<(usize, i64)> = slice_vertices.iter().map(|&v| w.coords(v)).collect();
    let cmin = cs.iter().map(|c| c.1).min().unwrap();
    let cmax = cs.iter().map(|c| c.1).max().unwrap();
    let (r0, r1) = (w.t_min - cmin, w.t_max - cmax);
    if r0 > r1 {
        return Err(Error::EmptyRange(r0, r1));
    }
    let w2 = zq_window(&slice, r0, r1)?;
    let nv2 = w2.num_base_vertices();
    let mut image = Vec::new();
    for v in 0..w2.bound.quiver.num_vertices() {
        let (k, r) = w2.coords(v);
        let (u, c) = w.coords(slice_vertices[k]);
        image.push(
            w.vertex(u, c + r)
                .ok_or_else(|| Error::InvalidSlice("image outside window".into()))?,
        );
    }
    debug_assert_eq!(image.len(), nv2 * (r1 - r0 + 1) as usize);
    let mut sorted = image.clone();
    sorted.sort();
    sorted.dedup();
    let vertex_bijection = sorted.len() == image.len();
    let target = truncate(&w.bound, &sorted)?;
    let pos: HashMap<usize, usize> = sorted.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let phi: Vec<usize> = image.iter().map(|v| pos[v]).collect();
    let count = |q: &Quiver| {
        let mut m: HashMap<(usize, usize), usize> = HashMap::new();
        for a in q.arrows() {
            *m.entry((a.source, a.target)).or_default() += 1;
        }
        m
    };
    let c1 = count(&w2.bound.quiver);
    let c2 = count(&target.quiver);
    let mapped: HashMap<(usize, usize), usize> = c1
        .iter()
        .map(|(&(s, t), &k)| ((phi[s], phi[t]), k))
        .collect();
    let arrow_counts = mapped == c2;
    let n = w.n();
    let a1 = GradedAlgebra::with_cutoff(&w2.bound, n + 2);
    let a2 = GradedAlgebra::with_cutoff(&target, n + 2);
    let mut relation_dimensions = true;
    let mut graded_dimensions = true;
    let total = w2.bound.quiver.num_vertices();
    for x in 0..total {
        for y in 0..total {
            let r1 = relation_span(&w2.bound, x, y, 2).1.len();
            let r2 = relation_span(&target, phi[x], phi[y], 2).1.len();
            relation_dimensions &= r1 == r2;
            for t in 0..=n + 2 {
                graded_dimensions &= a1.dim(t, x, y)? == a2.dim(t, phi[x], phi[y])?;
            }
        }
    }
    Ok(ReconstructionReport {
        vertex_bijection,
        arrow_counts,
        relation_dimensions,
        graded_dimensions,
    })
}

/// A path order of an acyclic quiver: no path runs from an earlier vertex to a later one.
pub fn default_path_order(q: &Quiver) -> Result<Vec<usize>> {
    let n = q.num_vertices();
    let mut indeg: Vec<usize> = (0..n).map(|v| q.arrows_into(v).len()).collect();
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut topo = Vec::new();
    while let Some(v) = ready.pop_first() {
        topo.push(v);
        for &a in q.arrows_from(v) {
            let t = q.arrow(a).target;
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.insert(t);
            }
        }
    }
    if topo.len() != n {
        return Err(Error::NotAcyclic(
            q.vertex_name((0..n).find(|&v| indeg[v] > 0).unwrap())
                .to_string(),
        ));
    }
    topo.reverse();
    Ok(topo)
}

/// Checks a path order on `q`; positions are 1-based in the returned table.
pub fn check_path_order(q: &Quiver, order: &[usize]) -> Result<Vec<usize>> {
    let n = q.num_vertices();
    if order.len() != n {
        return Err(Error::InvalidPathOrder(format!(
            "expected {n} vertices, got {}",
            order.len()
        )));
    }
    let mut pos = vec![0usize; n];
    for (k, &u) in order.iter().enumerate() {
        if u >= n || pos[u] != 0 {
            return Err(Error::InvalidPathOrder(
                "not a permutation of the vertices".into(),
            ));
        }
        pos[u] = k + 1;
    }
    for a in q.arrows() {
        if pos[a.source] < pos[a.target] {
            return Err(Error::InvalidPathOrder(format!(
                "arrow {} runs from position {} to position {}",
                a.name, pos[a.source], pos[a.target]
            )));
        }
    }
    Ok(pos)
}

/// `d(u_t, r) = -r l + t` for every window vertex, where `u_t` is the `t`-th vertex
/// in the path order of the base quiver.
pub fn slice_order(w: &ZqWindow, order: &[usize]) -> Result<Vec<i64>> {
    let base = &w.base.bound.quiver;
    let sub = Quiver::new(
        base.name.clone(),
        base.vertices().to_vec(),
        base.arrows()[..w.base.base_arrows].to_vec(),
    )?;
    let pos = check_path_order(&sub, order)?;
    let l = pos.len() as i64;
    Ok((0..w.bound.quiver.num_vertices())
        .map(|v| {
            let (u, r) = w.coords(v);
            -r * l + pos[u] as i64
        })
        .collect())
}
