//! Finite-dimensional left modules as quiver representations.

mod ar;
mod resolution;

pub use ar::*;
pub use resolution::*;

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graded::{Element, GradedAlgebra};
use crate::linalg::{express_in_basis, Echelon, Matrix};
use crate::quiver::{reverse_path, BoundQuiver, Path, Quiver};
use crate::scalar::{Field, Scalar};

#[derive(Debug)]
struct Sides {
    alg: GradedAlgebra,
    op: GradedAlgebra,
    top: usize,
}

/// A finite-dimensional bound quiver algebra, with cheap access to its opposite.
#[derive(Clone, Debug)]
pub struct RepAlgebra {
    sides: Arc<Sides>,
    flipped: bool,
}

impl RepAlgebra {
    pub fn new(bq: &BoundQuiver) -> Result<RepAlgebra> {
        let alg = GradedAlgebra::new(bq);
        let ll = alg.finite_loewy_length().map_err(|e| match e {
            Error::CutoffExceeded(c) => {
                Error::InfiniteDimensional(format!("nonzero paths of length {c}"))
            }
            other => other,
        })?;
        let op = GradedAlgebra::new(&bq.opposite());
        Ok(RepAlgebra {
            sides: Arc::new(Sides {
                alg,
                op,
                top: ll.saturating_sub(1),
            }),
            flipped: false,
        })
    }

    pub fn op(&self) -> RepAlgebra {
        RepAlgebra {
            sides: self.sides.clone(),
            flipped: !self.flipped,
        }
    }

    pub fn graded(&self) -> &GradedAlgebra {
        if self.flipped {
            &self.sides.op
        } else {
            &self.sides.alg
        }
    }

    pub fn bound(&self) -> &BoundQuiver {
        self.graded().bound_quiver()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.bound().quiver
    }

    pub fn field(&self) -> Field {
        self.bound().field
    }

    /// Highest nonzero degree.
    pub fn top_degree(&self) -> usize {
        self.sides.top
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver().num_vertices()
    }

    /// Converts an element into the opposite algebra.
    pub fn to_op(&self, e: &Element) -> Result<Element> {
        let op = self.op();
        let terms: Vec<(Path, Scalar)> = self
            .graded()
            .to_combination(e)?
            .into_iter()
            .map(|(p, c)| (reverse_path(&p), c))
            .collect();
        if terms.is_empty() {
            return op.graded().zero(e.degree, e.target, e.source);
        }
        op.graded().combination(&terms)
    }
}

/// A representation: one matrix per arrow, of shape `dim(target) x dim(source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub field: Field,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
    pub label: String,
}

/// A module homomorphism, one matrix per vertex.
pub type Morphism = Vec<Matrix>;

impl Rep {
    pub fn new(
        alg: &RepAlgebra,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
        label: impl Into<String>,
    ) -> Result<Rep> {
        let q = alg.quiver();
        if dims.len() != q.num_vertices() || maps.len() != q.num_arrows() {
            return Err(Error::InvalidModule(
                "wrong number of vertices or arrows".into(),
            ));
        }
        for (a, m) in maps.iter().enumerate() {
            let ar = q.arrow(a);
            if m.nrows() != dims[ar.target] || m.ncols() != dims[ar.source] {
                return Err(Error::InvalidModule(format!(
                    "matrix of {} has the wrong shape",
                    ar.name
                )));
            }
        }
        let rep = Rep {
            field: alg.field(),
            dims,
            maps,
            label: label.into(),
        };
        for r in alg.bound().relations() {
            let mut acc = Matrix::zeros(rep.field, rep.dims[r.target], rep.dims[r.source]);
            for (p, c) in r.terms() {
                acc = acc.add(&rep.path_matrix(p).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidModule(format!(
                    "relation {} is not satisfied",
                    r.to_string(q)
                )));
            }
        }
        Ok(rep)
    }

    pub fn zero(alg: &RepAlgebra) -> Rep {
        let q = alg.quiver();
        let f = alg.field();
        Rep {
            field: f,
            dims: vec![0; q.num_vertices()],
            maps: q.arrows().iter().map(|_| Matrix::zeros(f, 0, 0)).collect(),
            label: "0".into(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Rep {
        self.label = label.into();
        self
    }

    /// Action of a path (first arrow applied first).
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field, self.dims[p.source]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    pub fn act_path(&self, p: &Path, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for &a in &p.arrows {
            v = self.maps[a].apply(&v);
        }
        v
    }

    pub fn identity(&self) -> Morphism {
        self.dims
            .iter()
            .map(|&d| Matrix::identity(self.field, d))
            .collect()
    }

    /// Transport along invertible matrices, one per vertex.
    pub fn base_change(&self, q: &Quiver, change: &[Matrix]) -> Rep {
        let maps = q
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(ar, m)| {
                change[ar.target]
                    .mul(m)
                    .mul(&change[ar.source].inverse().unwrap())
            })
            .collect();
        Rep {
            maps,
            ..self.clone()
        }
    }

    /// A random change of basis at every vertex.
    pub fn random_base_change<R: Rng>(&self, q: &Quiver, rng: &mut R) -> Rep {
        let change: Vec<Matrix> = self
            .dims
            .iter()
            .map(|&d| random_invertible(self.field, d, rng))
            .collect();
        self.base_change(q, &change)
    }
}

pub fn random_invertible<R: Rng>(field: Field, d: usize, rng: &mut R) -> Matrix {
    if let Field::Prime(_) = field {
        loop {
            let rows = (0..d)
                .map(|_| (0..d).map(|_| field.random(rng)).collect())
                .collect();
            let m = Matrix::from_rows(field, d, rows);
            if m.rank() == d {
                return m;
            }
        }
    }
    // dense random rational matrices make later eliminations blow up, so compose a
    // permutation with a few small elementary operations instead
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let mut rows: Vec<Vec<Scalar>> = perm
        .iter()
        .map(|&k| {
            (0..d)
                .map(|c| if c == k { field.one() } else { field.zero() })
                .collect()
        })
        .collect();
    if d > 1 {
        for _ in 0..2 * d {
            let (a, b) = (rng.gen_range(0..d), rng.gen_range(0..d));
            if a == b {
                continue;
            }
            let c = field.from_i64(*[-2, -1, 1, 2].choose(rng).unwrap());
            let add: Vec<Scalar> = rows[b].iter().map(|x| x * &c).collect();
            for (x, y) in rows[a].iter_mut().zip(add) {
                *x = &*x + &y;
            }
        }
    }
    Matrix::from_rows(field, d, rows)
}

/// Offsets of the degree blocks of `P(v)` at vertex `j`.
fn projective_blocks(alg: &RepAlgebra, v: usize, j: usize) -> Result<Vec<usize>> {
    (0..=alg.top_degree())
        .map(|t| alg.graded().dim(t, v, j))
        .collect()
}

/// `P(v)`: bound paths starting at `v`, arrows acting by left multiplication.
pub fn projective(alg: &RepAlgebra, v: usize) -> Result<Rep> {
    let q = alg.quiver();
    let g = alg.graded();
    let f = alg.field();
    let blocks: Vec<Vec<usize>> = (0..q.num_vertices())
        .map(|j| projective_blocks(alg, v, j))
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = blocks.iter().map(|b| b.iter().sum()).collect();
    let mut maps = Vec::new();
    for (a, ar) in q.arrows().iter().enumerate() {
        let mut m = Matrix::zeros(f, dims[ar.target], dims[ar.source]);
        let alpha = g.arrow(a)?;
        let (mut r0, mut c0) = (blocks[ar.target][0], 0);
        for t in 0..alg.top_degree() {
            let block = g.left_mult_matrix(&alpha, t, v)?;
            for r in 0..block.nrows() {
                for c in 0..block.ncols() {
                    m.set(r0 + r, c0 + c, block.get(r, c).clone());
                }
            }
            c0 += blocks[ar.source][t];
            r0 += blocks[ar.target][t + 1];
        }
        maps.push(m);
    }
    Rep::new(alg, dims, maps, format!("P({})", q.vertex_name(v)))
}

/// The vertex-`j` basis vector of `P(v)` given by the `k`-th class in degree `t`.
pub fn projective_index(alg: &RepAlgebra, v: usize, j: usize, t: usize, k: usize) -> Result<usize> {
    let b = projective_blocks(alg, v, j)?;
    Ok(b[..t].iter().sum::<usize>() + k)
}

/// `D M` over the opposite algebra.
pub fn duality(m: &Rep) -> Rep {
    Rep {
        field: m.field,
        dims: m.dims.clone(),
        maps: m.maps.iter().map(|x| x.transpose()).collect(),
        label: format!("D{}", m.label),
    }
}

/// `I(v) = D P^op(v)`.
pub fn injective(alg: &RepAlgebra, v: usize) -> Result<Rep> {
    let p = projective(&alg.op(), v)?;
    Ok(duality(&p).with_label(format!("I({})", alg.quiver().vertex_name(v))))
}

pub fn simple(alg: &RepAlgebra, v: usize) -> Rep {
    let mut dims = vec![0; alg.num_vertices()];
    dims[v] = 1;
    let f = alg.field();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .map(|ar| Matrix::zeros(f, dims[ar.target], dims[ar.source]))
        .collect();
    Rep {
        field: f,
        dims,
        maps,
        label: format!("S({})", alg.quiver().vertex_name(v)),
    }
}

pub fn direct_sum(alg: &RepAlgebra, parts: &[Rep]) -> Rep {
    let q = alg.quiver();
    let f = alg.field();
    let dims: Vec<usize> = (0..q.num_vertices())
        .map(|v| parts.iter().map(|p| p.dims[v]).sum())
        .collect();
    let mut maps = Vec::new();
    for (a, ar) in q.arrows().iter().enumerate() {
        let mut m = Matrix::zeros(f, dims[ar.target], dims[ar.source]);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            let b = &p.maps[a];
            for r in 0..b.nrows() {
                for c in 0..b.ncols() {
                    m.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += p.dims[ar.target];
            c0 += p.dims[ar.source];
        }
        maps.push(m);
    }
    let label = parts
        .iter()
        .map(|p| p.label.as_str())
        .collect::<Vec<_>>()
        .join(" + ");
    Rep {
        field: f,
        dims,
        maps,
        label,
    }
}

/// Submodule spanned at each vertex by the given vectors (assumed closed under arrows).
pub fn submodule(q: &Quiver, m: &Rep, bases: Vec<Vec<Vec<Scalar>>>) -> Rep {
    let f = m.field;
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, ar)| {
            let src = &bases[ar.source];
            let tgt = &bases[ar.target];
            let cols: Vec<Vec<Scalar>> = src
                .iter()
                .map(|b| {
                    express_in_basis(f, tgt, &m.maps[a].apply(b))
                        .expect("subspace closed under arrows")
                })
                .collect();
            crate::graded::columns_to_matrix(f, tgt.len(), cols)
        })
        .collect();
    Rep {
        field: f,
        dims: bases.iter().map(|b| b.len()).collect(),
        maps,
        label: format!("sub({})", m.label),
    }
}

/// Quotient by per-vertex subspaces, using the non-pivot coordinates as basis.
pub fn quotient(q: &Quiver, m: &Rep, sub: &[Vec<Vec<Scalar>>]) -> (Rep, Vec<Echelon>) {
    let f = m.field;
    let ech: Vec<Echelon> = sub
        .iter()
        .zip(&m.dims)
        .map(|(s, &d)| Echelon::from_vectors(f, d, s.clone()))
        .collect();
    let free: Vec<Vec<usize>> = ech.iter().map(|e| e.free_columns()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, ar)| {
            let mut out = Matrix::zeros(f, free[ar.target].len(), free[ar.source].len());
            for (c, &col) in free[ar.source].iter().enumerate() {
                let y = ech[ar.target].reduce(&m.maps[a].column(col));
                for (r, &row) in free[ar.target].iter().enumerate() {
                    out.set(r, c, y[row].clone());
                }
            }
            out
        })
        .collect();
    (
        Rep {
            field: f,
            dims: free.iter().map(|x| x.len()).collect(),
            maps,
            label: format!("quot({})", m.label),
        },
        ech,
    )
}

/// Coordinates in a quotient built by [`quotient`].
pub fn quotient_coords(ech: &Echelon, v: &[Scalar]) -> Vec<Scalar> {
    let y = ech.reduce(v);
    ech.free_columns()
        .into_iter()
        .map(|c| y[c].clone())
        .collect()
}

pub fn cokernel(q: &Quiver, f: &Morphism, target: &Rep) -> Rep {
    let image: Vec<Vec<Vec<Scalar>>> = f
        .iter()
        .map(|m| (0..m.ncols()).map(|c| m.column(c)).collect())
        .collect();
    quotient(q, target, &image).0
}

pub fn kernel(q: &Quiver, f: &Morphism, source: &Rep) -> Rep {
    let bases = f
        .iter()
        .zip(&source.dims)
        .map(|(m, &d)| {
            if m.nrows() == 0 {
                identity_basis(source.field, d)
            } else {
                m.kernel()
            }
        })
        .collect();
    submodule(q, source, bases)
}

pub(crate) fn identity_basis(f: Field, d: usize) -> Vec<Vec<Scalar>> {
    (0..d)
        .map(|k| {
            let mut v = vec![f.zero(); d];
            v[k] = f.one();
            v
        })
        .collect()
}

pub fn compose(g: &Morphism, f: &Morphism) -> Morphism {
    g.iter().zip(f).map(|(a, b)| a.mul(b)).collect()
}

pub fn flatten(f: &Morphism) -> Vec<Scalar> {
    f.iter()
        .flat_map(|m| m.rows().iter().flatten().cloned())
        .collect()
}

fn unflatten(field: Field, v: &[Scalar], m: &Rep, n: &Rep) -> Morphism {
    let mut off = 0;
    m.dims
        .iter()
        .zip(&n.dims)
        .map(|(&dm, &dn)| {
            let rows = (0..dn)
                .map(|r| v[off + r * dm..off + (r + 1) * dm].to_vec())
                .collect();
            off += dm * dn;
            Matrix::from_rows(field, dm, rows)
        })
        .collect()
}

/// Hom by solving the commuting squares directly.
pub fn hom_space_naive(q: &Quiver, m: &Rep, n: &Rep) -> Vec<Morphism> {
    let f = m.field;
    let mut offs = Vec::new();
    let mut total = 0;
    for v in 0..m.dims.len() {
        offs.push(total);
        total += m.dims[v] * n.dims[v];
    }
    let mut eqs = Vec::new();
    for (a, ar) in q.arrows().iter().enumerate() {
        let (i, j) = (ar.source, ar.target);
        for r in 0..n.dims[j] {
            for c in 0..m.dims[i] {
                let mut row = vec![f.zero(); total];
                for k in 0..n.dims[i] {
                    let x = n.maps[a].get(r, k);
                    if !x.is_zero() {
                        row[offs[i] + k * m.dims[i] + c] = &row[offs[i] + k * m.dims[i] + c] + x;
                    }
                }
                for k in 0..m.dims[j] {
                    let x = m.maps[a].get(k, c);
                    if !x.is_zero() {
                        row[offs[j] + r * m.dims[j] + k] = &row[offs[j] + r * m.dims[j] + k] - x;
                    }
                }
                eqs.push(row);
            }
        }
    }
    let sol = if eqs.is_empty() {
        identity_basis(f, total)
    } else {
        Matrix::from_rows(f, total, eqs).kernel()
    };
    crate::linalg::canonical_basis(f, total, &sol)
        .iter()
        .map(|v| unflatten(f, v, m, n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    pub(crate) fn alg(src: &str) -> RepAlgebra {
        RepAlgebra::new(&parse(src, Field::Rational).unwrap()).unwrap()
    }

    const KRON: &str = "quiver K vertices: 1 2 arrows: a: 1 -> 2 b: 1 -> 2 relations:";

    #[test]
    fn projective_dims() {
        let a = alg(KRON);
        assert_eq!(projective(&a, 0).unwrap().dims, vec![1, 2]);
        assert_eq!(projective(&a, 1).unwrap().dims, vec![0, 1]);
        assert_eq!(injective(&a, 0).unwrap().dims, vec![1, 0]);
        assert_eq!(injective(&a, 1).unwrap().dims, vec![2, 1]);
    }

    #[test]
    fn relations_checked() {
        let a = alg("quiver L vertices: 1 2 3 arrows: a: 1 -> 2 b: 2 -> 3 relations: b.a;");
        let f = Field::Rational;
        let one = Matrix::identity(f, 1);
        assert!(matches!(
            Rep::new(&a, vec![1, 1, 1], vec![one.clone(), one], "x"),
            Err(Error::InvalidModule(_))
        ));
    }

    #[test]
    fn infinite_algebra_rejected() {
        let bq = parse(
            "quiver C vertices: 1 arrows: a: 1 -> 1 relations:",
            Field::Rational,
        )
        .unwrap();
        assert!(matches!(
            RepAlgebra::new(&bq),
            Err(Error::InfiniteDimensional(_))
        ));
    }

    #[test]
    fn naive_hom_kronecker() {
        let a = alg(KRON);
        let p1 = projective(&a, 0).unwrap();
        let p2 = projective(&a, 1).unwrap();
        assert_eq!(hom_space_naive(a.quiver(), &p2, &p1).len(), 2);
        assert_eq!(hom_space_naive(a.quiver(), &p1, &p2).len(), 0);
        assert_eq!(
            hom_space_naive(a.quiver(), &simple(&a, 0), &simple(&a, 1)).len(),
            0
        );
    }
}
