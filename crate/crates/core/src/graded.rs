//! The path-length graded algebra `kQ/(rho)`, computed one component at a time.
//!
//! A component of degree `t` is presented as a quotient of the span of pairs
//! `(b, alpha)`, with `b` a basis path one degree lower and `alpha` a final arrow,
//! by the relations ending there. Basis paths are the non-pivot pairs. Paths of
//! the full path space are never enumerated, so long components stay cheap.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::quiver::{enumerate_paths, BoundQuiver, Path};
use crate::scalar::{Field, Scalar};

pub const DEFAULT_CUTOFF: usize = 64;

#[derive(Debug)]
pub struct Component {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    basis: Vec<Path>,
    /// `(arrow, k)` for the product of lower basis path `k` with a final `arrow`.
    span_index: HashMap<(usize, usize), usize>,
    /// Coordinates of each spanning pair in the quotient basis.
    span_coords: Vec<Vec<Scalar>>,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Paths whose classes form the quotient basis, in canonical order.
    pub fn basis_paths(&self) -> Vec<&Path> {
        self.basis.iter().collect()
    }

    pub fn basis_path(&self, k: usize) -> &Path {
        &self.basis[k]
    }

    /// Lifts quotient coordinates to a combination of basis paths.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<(Path, Scalar)> {
        coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.basis_path(k).clone(), c.clone()))
            .collect()
    }
}

/// A homogeneous element of `e_target A_degree e_source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    pub coords: Vec<Scalar>,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoewyLength {
    Finite(usize),
    /// Nonzero in every degree up to the cutoff.
    Infinite {
        cutoff: usize,
    },
}

pub struct GradedAlgebra {
    bq: BoundQuiver,
    cutoff: usize,
    relations: HashMap<(usize, usize, usize), Vec<usize>>,
    cache: RwLock<HashMap<(usize, usize, usize), Arc<Component>>>,
}

impl std::fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GradedAlgebra({}, cutoff {})",
            self.bq.quiver.name, self.cutoff
        )
    }
}

impl GradedAlgebra {
    pub fn new(bq: &BoundQuiver) -> GradedAlgebra {
        GradedAlgebra::with_cutoff(bq, DEFAULT_CUTOFF)
    }

    pub fn with_cutoff(bq: &BoundQuiver, cutoff: usize) -> GradedAlgebra {
        let mut relations: HashMap<_, Vec<usize>> = HashMap::new();
        for (k, r) in bq.relations().iter().enumerate() {
            relations
                .entry((r.degree, r.source, r.target))
                .or_default()
                .push(k);
        }
        GradedAlgebra {
            bq: bq.clone(),
            cutoff,
            relations,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn bound_quiver(&self) -> &BoundQuiver {
        &self.bq
    }
    pub fn field(&self) -> Field {
        self.bq.field
    }
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }
    pub fn num_vertices(&self) -> usize {
        self.bq.quiver.num_vertices()
    }

    /// The component of degree `t` from `i` to `j`.
    pub fn component(&self, t: usize, i: usize, j: usize) -> Result<Arc<Component>> {
        if t > self.cutoff {
            return Err(Error::CutoffExceeded(self.cutoff));
        }
        if let Some(c) = self.cache.read().unwrap().get(&(t, i, j)) {
            return Ok(c.clone());
        }
        let c = Arc::new(self.compute(t, i, j)?);
        let mut w = self.cache.write().unwrap();
        Ok(w.entry((t, i, j)).or_insert(c).clone())
    }

    fn compute(&self, t: usize, i: usize, j: usize) -> Result<Component> {
        let q = &self.bq.quiver;
        let field = self.field();
        if t == 0 {
            let basis = if i == j {
                vec![Path::stationary(i)]
            } else {
                Vec::new()
            };
            return Ok(Component {
                degree: 0,
                source: i,
                target: j,
                basis,
                span_index: HashMap::new(),
                span_coords: Vec::new(),
            });
        }
        let mut span: Vec<(Path, usize, usize)> = Vec::new();
        for &a in q.arrows_into(j) {
            let lower = self.component(t - 1, i, q.arrow(a).source)?;
            for (k, b) in lower.basis.iter().enumerate() {
                span.push((b.then_arrow(q, a), a, k));
            }
        }
        span.sort();
        let span_index: HashMap<(usize, usize), usize> = span
            .iter()
            .enumerate()
            .map(|(pos, (_, a, k))| ((*a, *k), pos))
            .collect();
        let dim = span.len();
        let mut gens: Vec<Vec<Scalar>> = Vec::new();
        for (&(d, u, jj), rs) in &self.relations {
            if jj != j || d > t || dim == 0 {
                continue;
            }
            let lower = self.component(t - d, i, u)?;
            for k in 0..lower.dim() {
                let mut b = self.zero(t - d, i, u)?;
                b.coords[k] = field.one();
                for &r in rs {
                    let mut v = vec![field.zero(); dim];
                    for (p, c) in self.bq.relations()[r].terms() {
                        let (last, init) = p.arrows.split_last().unwrap();
                        let mut x = b.clone();
                        for &a in init {
                            x = self.extend(&x, a)?;
                        }
                        for (kk, y) in x.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                            let pos = span_index[&(*last, kk)];
                            v[pos] = &v[pos] + &(c * y);
                        }
                    }
                    gens.push(v);
                }
            }
        }
        let ideal = Echelon::from_vectors(field, dim, gens);
        let free = ideal.free_columns();
        let mut free_pos = vec![None; dim];
        for (pos, &k) in free.iter().enumerate() {
            free_pos[k] = Some(pos);
        }
        let span_coords = (0..dim)
            .map(|k| {
                let mut out = vec![field.zero(); free.len()];
                match free_pos[k] {
                    Some(pos) => out[pos] = field.one(),
                    None => {
                        let row = ideal.pivot_row(k).expect("non-basis pair is a pivot");
                        for (pos, &b) in free.iter().enumerate() {
                            if !row[b].is_zero() {
                                out[pos] = -&row[b];
                            }
                        }
                    }
                }
                out
            })
            .collect();
        let basis = free.iter().map(|&k| span[k].0.clone()).collect();
        Ok(Component {
            degree: t,
            source: i,
            target: j,
            basis,
            span_index,
            span_coords,
        })
    }

    /// `x` followed by the arrow `a`.
    pub fn extend(&self, x: &Element, a: usize) -> Result<Element> {
        let ar = self.bq.quiver.arrow(a);
        if ar.source != x.target {
            return Err(Error::NotComposable(ar.name.clone()));
        }
        let c = self.component(x.degree + 1, x.source, ar.target)?;
        let mut out = vec![self.field().zero(); c.dim()];
        for (k, y) in x.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            for (o, z) in out.iter_mut().zip(&c.span_coords[c.span_index[&(a, k)]]) {
                if !z.is_zero() {
                    *o = &*o + &(y * z);
                }
            }
        }
        Ok(Element {
            degree: x.degree + 1,
            source: x.source,
            target: ar.target,
            coords: out,
        })
    }

    /// All paths of degree `t` from `i` to `j`, and the matrix whose column `p` holds the class of path `p`.
    pub fn class_matrix(&self, t: usize, i: usize, j: usize) -> Result<(Vec<Path>, Matrix)> {
        let paths = enumerate_paths(&self.bq.quiver, i, j, t);
        let cols = paths
            .iter()
            .map(|p| Ok(self.path_element(p)?.coords))
            .collect::<Result<Vec<_>>>()?;
        let d = self.dim(t, i, j)?;
        Ok((paths, columns_to_matrix(self.field(), d, cols)))
    }

    pub fn dim(&self, t: usize, i: usize, j: usize) -> Result<usize> {
        Ok(self.component(t, i, j)?.dim())
    }

    /// Whether every component of degree `t` vanishes.
    pub fn degree_vanishes(&self, t: usize) -> Result<bool> {
        let n = self.num_vertices();
        for i in 0..n {
            for j in 0..n {
                if self.dim(t, i, j)? > 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn loewy_length(&self) -> Result<LoewyLength> {
        for t in 0..=self.cutoff {
            if self.degree_vanishes(t)? {
                return Ok(LoewyLength::Finite(t));
            }
        }
        Ok(LoewyLength::Infinite {
            cutoff: self.cutoff,
        })
    }

    /// Loewy length, failing when the algebra does not vanish below the cutoff.
    pub fn finite_loewy_length(&self) -> Result<usize> {
        match self.loewy_length()? {
            LoewyLength::Finite(l) => Ok(l),
            LoewyLength::Infinite { cutoff } => Err(Error::CutoffExceeded(cutoff)),
        }
    }

    pub fn zero(&self, t: usize, i: usize, j: usize) -> Result<Element> {
        let d = self.dim(t, i, j)?;
        Ok(Element {
            degree: t,
            source: i,
            target: j,
            coords: vec![self.field().zero(); d],
        })
    }

    pub fn vertex(&self, v: usize) -> Element {
        Element {
            degree: 0,
            source: v,
            target: v,
            coords: vec![self.field().one()],
        }
    }

    pub fn arrow(&self, a: usize) -> Result<Element> {
        let ar = self.bq.quiver.arrow(a);
        self.extend(&self.vertex(ar.source), a)
    }

    pub fn path_element(&self, p: &Path) -> Result<Element> {
        let mut x = self.vertex(p.source);
        for &a in &p.arrows {
            x = self.extend(&x, a)?;
        }
        Ok(x)
    }

    /// Class of a homogeneous combination of parallel paths.
    pub fn combination(&self, terms: &[(Path, Scalar)]) -> Result<Element> {
        let (p0, _) = terms
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty combination".into()))?;
        let mut acc = self.zero(p0.len(), p0.source, p0.target)?;
        for (p, c) in terms {
            let e = self.path_element(p)?;
            for (x, y) in acc.coords.iter_mut().zip(&e.coords) {
                if !y.is_zero() {
                    *x = &*x + &(c * y);
                }
            }
        }
        Ok(acc)
    }

    /// `a * b`: first `b`, then `a`.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        if b.target != a.source {
            return Element {
                degree: a.degree + b.degree,
                source: b.source,
                target: a.target,
                coords: Vec::new(),
            }
            .zeroed(self);
        }
        let ca = self.component(a.degree, a.source, a.target)?;
        let mut out = self.zero(a.degree + b.degree, b.source, a.target)?;
        if out.coords.is_empty() {
            return Ok(out);
        }
        for (ka, x) in a.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let mut y = b.clone();
            for &arrow in &ca.basis_path(ka).arrows {
                y = self.extend(&y, arrow)?;
            }
            for (o, c) in out.coords.iter_mut().zip(&y.coords) {
                if !c.is_zero() {
                    *o = &*o + &(x * c);
                }
            }
        }
        Ok(out)
    }

    pub fn to_combination(&self, e: &Element) -> Result<Vec<(Path, Scalar)>> {
        Ok(self
            .component(e.degree, e.source, e.target)?
            .lift(&e.coords))
    }

    /// Matrix of `x -> a * x` from the component `(t, i, a.source)` to `(t + deg a, i, a.target)`.
    pub fn left_mult_matrix(&self, a: &Element, t: usize, i: usize) -> Result<Matrix> {
        let src = self.component(t, i, a.source)?;
        let tgt_dim = self.dim(t + a.degree, i, a.target)?;
        let mut cols = Vec::with_capacity(src.dim());
        for k in 0..src.dim() {
            let mut x = self.zero(t, i, a.source)?;
            x.coords[k] = self.field().one();
            cols.push(self.multiply(a, &x)?.coords);
        }
        Ok(columns_to_matrix(self.field(), tgt_dim, cols))
    }

    /// Matrix of `x -> x * a` from `(t, a.target, j)` to `(t + deg a, a.source, j)`.
    pub fn right_mult_matrix(&self, a: &Element, t: usize, j: usize) -> Result<Matrix> {
        let src = self.component(t, a.target, j)?;
        let tgt_dim = self.dim(t + a.degree, a.source, j)?;
        let mut cols = Vec::with_capacity(src.dim());
        for k in 0..src.dim() {
            let mut x = self.zero(t, a.target, j)?;
            x.coords[k] = self.field().one();
            cols.push(self.multiply(&x, a)?.coords);
        }
        Ok(columns_to_matrix(self.field(), tgt_dim, cols))
    }

    /// Basis of the classes killed by every arrow on both sides, over all degrees.
    pub fn maximal_bound_paths(&self) -> Result<Vec<Element>> {
        let top = self.finite_loewy_length()?;
        let q = &self.bq.quiver;
        let n = self.num_vertices();
        let mut out = Vec::new();
        for t in 0..top {
            for i in 0..n {
                for j in 0..n {
                    let c = self.component(t, i, j)?;
                    if c.dim() == 0 {
                        continue;
                    }
                    let mut blocks: Vec<Matrix> = Vec::new();
                    for &a in q.arrows_from(j) {
                        blocks.push(self.left_mult_matrix(&self.arrow(a)?, t, i)?);
                    }
                    for &a in q.arrows_into(i) {
                        blocks.push(self.right_mult_matrix(&self.arrow(a)?, t, j)?);
                    }
                    let mut m = Matrix::zeros(self.field(), 0, c.dim());
                    for b in blocks {
                        m = m.vstack(&b);
                    }
                    for v in kernel_canonical(&m) {
                        out.push(Element {
                            degree: t,
                            source: i,
                            target: j,
                            coords: v,
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Ok(n)` when every maximal bound path has length `n`.
    pub fn properly_graded_degree(&self) -> Result<usize> {
        let ms = self.maximal_bound_paths()?;
        let mut lengths: Vec<usize> = ms.iter().map(|m| m.degree).collect();
        lengths.sort();
        lengths.dedup();
        match lengths.len() {
            0 => Ok(0),
            1 => Ok(lengths[0]),
            _ => {
                let short = ms.iter().find(|m| m.degree == lengths[0]).unwrap();
                let q = &self.bq.quiver;
                let comb = crate::quiver::format_combination(q, &self.to_combination(short)?);
                Err(Error::NotProperlyGraded {
                    lengths,
                    witness: comb,
                })
            }
        }
    }
}

impl Element {
    fn zeroed(mut self, alg: &GradedAlgebra) -> Result<Element> {
        self.coords = vec![alg.field().zero(); alg.dim(self.degree, self.source, self.target)?];
        Ok(self)
    }
}

pub fn columns_to_matrix(field: Field, rows: usize, cols: Vec<Vec<Scalar>>) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols.len());
    for (c, col) in cols.into_iter().enumerate() {
        for (r, x) in col.into_iter().enumerate() {
            if !x.is_zero() {
                m.set(r, c, x);
            }
        }
    }
    m
}

/// Kernel basis in canonical (reduced echelon) form.
fn kernel_canonical(m: &Matrix) -> Vec<Vec<Scalar>> {
    let k = m.kernel();
    crate::linalg::canonical_basis(m.field(), m.ncols(), &k)
}

/// Dimension of the degree-`t` component from `i` to `j` together with its basis paths.
pub fn graded_component(
    bq: &BoundQuiver,
    t: usize,
    i: usize,
    j: usize,
) -> Result<(usize, Vec<Path>)> {
    let alg = GradedAlgebra::with_cutoff(bq, t.max(DEFAULT_CUTOFF));
    let c = alg.component(t, i, j)?;
    Ok((c.dim(), c.basis_paths().into_iter().cloned().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    fn q(src: &str) -> BoundQuiver {
        parse(src, Field::Rational).unwrap()
    }

    #[test]
    fn commutative_square() {
        let bq = q("quiver sq vertices: 1 2 3 4 arrows: a: 1 -> 2 b: 2 -> 4 c: 1 -> 3 d: 3 -> 4 relations: b.a - d.c;");
        let alg = GradedAlgebra::new(&bq);
        assert_eq!(alg.dim(2, 0, 3).unwrap(), 1);
        assert_eq!(alg.loewy_length().unwrap(), LoewyLength::Finite(3));
        assert_eq!(alg.properly_graded_degree().unwrap(), 2);
    }

    #[test]
    fn mixed_lengths_are_reported() {
        let bq = q("quiver t vertices: 1 2 3 arrows: a: 1 -> 2 b: 2 -> 3 c: 1 -> 3 relations:");
        let alg = GradedAlgebra::new(&bq);
        match alg.properly_graded_degree() {
            Err(Error::NotProperlyGraded { lengths, .. }) => assert_eq!(lengths, vec![1, 2]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cyclic_without_relations_hits_cutoff() {
        let bq = q("quiver c vertices: 1 2 arrows: a: 1 -> 2 b: 2 -> 1 relations:");
        let alg = GradedAlgebra::with_cutoff(&bq, 10);
        assert_eq!(
            alg.loewy_length().unwrap(),
            LoewyLength::Infinite { cutoff: 10 }
        );
    }

    #[test]
    fn zero_relation_kills_path() {
        let bq = q("quiver a3 vertices: 1 2 3 arrows: a: 1 -> 2 b: 2 -> 3 relations: b.a;");
        let alg = GradedAlgebra::new(&bq);
        assert_eq!(alg.dim(2, 0, 2).unwrap(), 0);
        assert_eq!(alg.properly_graded_degree().unwrap(), 1);
        assert_eq!(alg.maximal_bound_paths().unwrap().len(), 2);
    }

    #[test]
    fn multiplication_reduces() {
        let bq = q("quiver sq vertices: 1 2 3 4 arrows: a: 1 -> 2 b: 2 -> 4 c: 1 -> 3 d: 3 -> 4 relations: b.a - d.c;");
        let alg = GradedAlgebra::new(&bq);
        let ba = alg
            .multiply(&alg.arrow(1).unwrap(), &alg.arrow(0).unwrap())
            .unwrap();
        let dc = alg
            .multiply(&alg.arrow(3).unwrap(), &alg.arrow(2).unwrap())
            .unwrap();
        assert_eq!(ba, dc);
        assert!(!ba.is_zero());
    }
}
