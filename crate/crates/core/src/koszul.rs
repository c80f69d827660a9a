//! Koszul complexes of projectives over the quadratic dual of a translation algebra,
//! and their verification through Hom sequences.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graded::{Element, GradedAlgebra};
use crate::linalg::{canonical_basis, express_in_basis, Matrix};
use crate::qdual::quadratic_dual;
use crate::quiver::{Arrow, BoundQuiver, Path, Quiver};
use crate::rep::{simple, syzygy_with_cover, RepAlgebra};
use crate::scalar::Scalar;

/// An n-translation algebra together with its quadratic dual.
#[derive(Debug)]
pub struct KoszulSetting {
    pub n: usize,
    pub lambda: GradedAlgebra,
    pub gamma: GradedAlgebra,
}

impl KoszulSetting {
    /// From the translation quiver itself (the algebra whose dual carries the complexes).
    pub fn new(lambda: &BoundQuiver) -> Result<KoszulSetting> {
        lambda.require_quadratic()?;
        let t = lambda
            .translation
            .as_ref()
            .ok_or_else(|| Error::MissingTranslate("bound quiver carries no translation".into()))?;
        let gamma = quadratic_dual(lambda)?;
        Ok(KoszulSetting {
            n: t.n,
            lambda: GradedAlgebra::new(lambda),
            gamma: GradedAlgebra::new(&gamma),
        })
    }

    /// From the dual side: `gamma` carries the translation of its own dual.
    pub fn from_dual(gamma: &BoundQuiver) -> Result<KoszulSetting> {
        gamma.require_quadratic()?;
        let mut lambda = quadratic_dual(gamma)?;
        lambda.translation = gamma.translation.clone();
        KoszulSetting::new(&lambda)
    }

    fn translation(&self) -> &crate::quiver::Translation {
        self.lambda.bound_quiver().translation.as_ref().unwrap()
    }

    fn name(&self, v: usize) -> &str {
        self.lambda.bound_quiver().quiver.vertex_name(v)
    }

    /// Basis of the part of the length-`t` path space orthogonal to the defining ideal.
    fn koszul_space(&self, t: usize, i: usize, j: usize) -> Result<(Vec<Path>, Vec<Vec<Scalar>>)> {
        // the ideal is the kernel of the class map, so its complement is the row space
        let (paths, m) = self.lambda.class_matrix(t, i, j)?;
        Ok((
            paths.clone(),
            canonical_basis(self.lambda.field(), paths.len(), m.rows()),
        ))
    }
}

/// A summand `Γ e_vertex` of a term, labelled by a Koszul basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub vertex: usize,
    pub label: usize,
}

/// `terms[t]` is `M_t`; `differentials[t - 1]` maps `M_t -> M_{t-1}` and has one row per
/// summand of `M_{t-1}` and one column per summand of `M_t`. The entry in row `r` and column
/// `c` is an element from `vertex(r)` to `vertex(c)` acting by right multiplication.
#[derive(Clone, Debug)]
pub struct ProjComplex {
    pub endpoint: usize,
    pub terms: Vec<Vec<Summand>>,
    pub differentials: Vec<Vec<Vec<Element>>>,
}

impl ProjComplex {
    /// Multiplicity of `Γ e_j` in `M_t`.
    pub fn multiplicity(&self, t: usize, j: usize) -> usize {
        self.terms[t].iter().filter(|s| s.vertex == j).count()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `xi_i`, running from `Γ e_{tau^- i}` down to `Γ e_i`.
pub fn koszul_xi(ks: &KoszulSetting, i: usize) -> Result<ProjComplex> {
    if ks.translation().tau_inv(i).is_none() {
        return Err(Error::MissingTranslate(format!(
            "{} is injective",
            ks.name(i)
        )));
    }
    let nv = ks.lambda.num_vertices();
    let f = ks.lambda.field();
    let mut terms = Vec::new();
    let mut spaces: Vec<Vec<(Vec<Path>, Vec<Vec<Scalar>>)>> = Vec::new();
    for t in 0..=ks.n + 1 {
        let mut term = Vec::new();
        let mut sp = Vec::new();
        for j in 0..nv {
            let (paths, basis) = ks.koszul_space(t, i, j)?;
            for k in 0..basis.len() {
                term.push(Summand {
                    vertex: j,
                    label: k,
                });
            }
            sp.push((paths, basis));
        }
        terms.push(term);
        spaces.push(sp);
    }
    if terms.iter().all(|t| t.is_empty()) {
        return Err(Error::InvalidArgument(format!(
            "empty hammock at {}",
            ks.name(i)
        )));
    }
    let q = &ks.lambda.bound_quiver().quiver;
    let mut differentials = Vec::new();
    for t in 1..=ks.n + 1 {
        let rows = &terms[t - 1];
        let cols = &terms[t];
        let mut d: Vec<Vec<Element>> = rows
            .iter()
            .map(|r| {
                cols.iter()
                    .map(|c| ks.gamma.zero(1, r.vertex, c.vertex))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        for (ci, c) in cols.iter().enumerate() {
            let (paths, basis) = &spaces[t][c.vertex];
            let xi = &basis[c.label];
            // split off the last arrow
            for &a in q.arrows_into(c.vertex) {
                let jp = q.arrow(a).source;
                let (sub_paths, sub_basis) = &spaces[t - 1][jp];
                let mut part = vec![f.zero(); sub_paths.len()];
                for (p, x) in paths.iter().zip(xi) {
                    if !x.is_zero() && *p.arrows.last().unwrap() == a {
                        let head = Path {
                            source: p.source,
                            target: jp,
                            arrows: p.arrows[..p.arrows.len() - 1].to_vec(),
                        };
                        let k = sub_paths.iter().position(|s| *s == head).unwrap();
                        part[k] = x.clone();
                    }
                }
                if part.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let coeffs = express_in_basis(f, sub_basis, &part).ok_or_else(|| {
                    Error::InvalidArgument(
                        "Koszul space not closed under contraction; relations may not be quadratic"
                            .into(),
                    )
                })?;
                let alpha = ks.gamma.arrow(a)?;
                for (k, x) in coeffs.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let ri = rows
                        .iter()
                        .position(|r| r.vertex == jp && r.label == k)
                        .unwrap();
                    let e = &mut d[ri][ci];
                    for (o, y) in e.coords.iter_mut().zip(&alpha.coords) {
                        *o = &*o + &(x * y);
                    }
                }
            }
        }
        differentials.push(d);
    }
    Ok(ProjComplex {
        endpoint: i,
        terms,
        differentials,
    })
}

/// `zeta_i = xi_{tau i}`, running from `Γ e_i` down to `Γ e_{tau i}`.
pub fn koszul_zeta(ks: &KoszulSetting, i: usize) -> Result<ProjComplex> {
    let ti = ks
        .translation()
        .tau(i)
        .ok_or_else(|| Error::MissingTranslate(format!("{} is projective", ks.name(i))))?;
    koszul_xi(ks, ti)
}

/// First pair `(t, row, column)` where `d_{t-1} d_t` is nonzero.
pub fn composite_zero(
    ks: &KoszulSetting,
    c: &ProjComplex,
) -> Result<Option<(usize, usize, usize)>> {
    for t in 2..c.terms.len() {
        let f = &c.differentials[t - 1];
        let g = &c.differentials[t - 2];
        for (s, grow) in g.iter().enumerate() {
            for col in 0..c.terms[t].len() {
                let mut acc: Option<Element> = None;
                for (r, gsr) in grow.iter().enumerate() {
                    let frc = &f[r][col];
                    if frc.is_zero() || gsr.is_zero() {
                        continue;
                    }
                    let prod = ks.gamma.multiply(frc, gsr)?;
                    acc = Some(match acc {
                        None => prod,
                        Some(mut a) => {
                            for (o, y) in a.coords.iter_mut().zip(&prod.coords) {
                                *o = &*o + y;
                            }
                            a
                        }
                    });
                }
                if acc.is_some_and(|a| !a.is_zero()) {
                    return Ok(Some((t, s, col)));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum HomSide {
    /// `Hom(-, X)`, the source-sequence side.
    Contravariant,
    /// `Hom(X, -)`, the sink-sequence side.
    Covariant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessFailure {
    pub object: usize,
    pub side: HomSide,
    /// Position in the Hom sequence, counted from the zero end.
    pub position: usize,
}

#[derive(Clone, Debug)]
pub struct AlmostSplitReport {
    pub composite: Option<(usize, usize, usize)>,
    pub failures: Vec<ExactnessFailure>,
    pub tested: usize,
}

impl AlmostSplitReport {
    pub fn passed(&self) -> bool {
        self.composite.is_none() && self.failures.is_empty()
    }
}

/// Concatenated graded components `(s, from, to)` over all degrees.
fn hom_blocks(gamma: &GradedAlgebra, from: usize, to: usize, top: usize) -> Result<Vec<usize>> {
    (0..=top).map(|s| gamma.dim(s, from, to)).collect()
}

/// Matrix of the induced map on Hom spaces between two terms of the complex.
fn induced(
    gamma: &GradedAlgebra,
    d: &[Vec<Element>],
    rows: &[Summand],
    cols: &[Summand],
    x: usize,
    side: &HomSide,
    top: usize,
) -> Result<Matrix> {
    let f = gamma.field();
    // Hom-space of a summand at vertex a: paths x -> a (contravariant) or a -> x (covariant).
    let block = |a: usize| -> Result<Vec<usize>> {
        match side {
            HomSide::Contravariant => hom_blocks(gamma, x, a, top),
            HomSide::Covariant => hom_blocks(gamma, a, x, top),
        }
    };
    let sizes = |sums: &[Summand]| -> Result<Vec<Vec<usize>>> {
        sums.iter().map(|s| block(s.vertex)).collect()
    };
    let rs = sizes(rows)?;
    let cs = sizes(cols)?;
    let total = |v: &Vec<Vec<usize>>| v.iter().map(|b| b.iter().sum::<usize>()).sum::<usize>();
    let offset = |v: &Vec<Vec<usize>>, k: usize, s: usize| -> usize {
        v[..k]
            .iter()
            .map(|b| b.iter().sum::<usize>())
            .sum::<usize>()
            + v[k][..s].iter().sum::<usize>()
    };
    // Contravariant: Hom(M_{t-1}, X) -> Hom(M_t, X), y -> f y.
    // Covariant: Hom(X, M_t) -> Hom(X, M_{t-1}), y -> y f.
    let (src, dst) = match side {
        HomSide::Contravariant => (&rs, &cs),
        HomSide::Covariant => (&cs, &rs),
    };
    let mut m = Matrix::zeros(f, total(dst), total(src));
    for (ri, r) in rows.iter().enumerate() {
        for (ci, c) in cols.iter().enumerate() {
            let e = &d[ri][ci];
            if e.is_zero() {
                continue;
            }
            let (sk, dk, sv) = match side {
                HomSide::Contravariant => (ri, ci, r.vertex),
                HomSide::Covariant => (ci, ri, c.vertex),
            };
            for s in 0..=top {
                if s + e.degree > top {
                    break;
                }
                let dim = src[sk][s];
                for k in 0..dim {
                    let mut y = match side {
                        HomSide::Contravariant => gamma.zero(s, x, sv)?,
                        HomSide::Covariant => gamma.zero(s, sv, x)?,
                    };
                    y.coords[k] = f.one();
                    let img = match side {
                        HomSide::Contravariant => gamma.multiply(e, &y)?,
                        HomSide::Covariant => gamma.multiply(&y, e)?,
                    };
                    let row0 = offset(dst, dk, s + e.degree);
                    let col = offset(src, sk, s) + k;
                    for (o, v) in img.coords.iter().enumerate() {
                        if !v.is_zero() {
                            let cur = m.get(row0 + o, col).clone();
                            m.set(row0 + o, col, &cur + v);
                        }
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Checks exactness of both Hom sequences of `c` at every test object `Γ e_x`.
pub fn verify_n_almost_split(
    ks: &KoszulSetting,
    c: &ProjComplex,
    test_objects: &[usize],
) -> Result<AlmostSplitReport> {
    let composite = composite_zero(ks, c)?;
    if composite.is_some() {
        return Ok(AlmostSplitReport {
            composite,
            failures: Vec::new(),
            tested: 0,
        });
    }
    let gamma = &ks.gamma;
    let top = gamma.finite_loewy_length()?.saturating_sub(1);
    let last = c.terms.len() - 1;
    let objects: BTreeSet<usize> = test_objects.iter().copied().collect();
    let mut failures = Vec::new();
    for &x in &objects {
        for side in [HomSide::Contravariant, HomSide::Covariant] {
            // maps[k] goes from position k to position k + 1 of the Hom sequence
            let mut maps = Vec::new();
            match side {
                HomSide::Contravariant => {
                    for t in 1..=last {
                        maps.push(induced(
                            gamma,
                            &c.differentials[t - 1],
                            &c.terms[t - 1],
                            &c.terms[t],
                            x,
                            &side,
                            top,
                        )?);
                    }
                }
                HomSide::Covariant => {
                    for t in (1..=last).rev() {
                        maps.push(induced(
                            gamma,
                            &c.differentials[t - 1],
                            &c.terms[t - 1],
                            &c.terms[t],
                            x,
                            &side,
                            top,
                        )?);
                    }
                }
            }
            // The right end must map onto the radical, which is everything in positive degree.
            let end_term = match side {
                HomSide::Contravariant => &c.terms[last],
                HomSide::Covariant => &c.terms[0],
            };
            let mut degree0 = Vec::new();
            let mut off = 0;
            for s in end_term {
                let b = match side {
                    HomSide::Contravariant => hom_blocks(gamma, x, s.vertex, top)?,
                    HomSide::Covariant => hom_blocks(gamma, s.vertex, x, top)?,
                };
                degree0.extend(off..off + b[0]);
                off += b.iter().sum::<usize>();
            }
            let mut dims: Vec<usize> = maps.iter().map(|m| m.ncols()).collect();
            dims.push(maps.last().map(|m| m.nrows()).unwrap_or(0));
            let ranks: Vec<usize> = maps.iter().map(|m| m.rank()).collect();
            let mut position = None;
            if ranks[0] != dims[0] {
                position = Some(0);
            }
            for k in 1..maps.len() {
                if position.is_none() && ranks[k - 1] + ranks[k] != dims[k] {
                    position = Some(k);
                }
            }
            if position.is_none() {
                let m = maps.last().unwrap();
                let hits_degree0 = degree0
                    .iter()
                    .any(|&r| (0..m.ncols()).any(|col| !m.get(r, col).is_zero()));
                if hits_degree0 || *ranks.last().unwrap() != dims[maps.len()] - degree0.len() {
                    position = Some(maps.len());
                }
            }
            if let Some(position) = position {
                failures.push(ExactnessFailure {
                    object: x,
                    side,
                    position,
                });
            }
        }
    }
    Ok(AlmostSplitReport {
        composite: None,
        failures,
        tested: objects.len(),
    })
}

/// Test objects at which the Hom sequences of `ξ_i` are expected to lose exactness when
/// the dual is only Koszul up to step `q`: a nonzero degree-`q` component from `τ⁻¹i` to
/// `X` breaks the covariant side, one from `X` to `i` the contravariant side.
pub fn obstructed_objects(
    ks: &KoszulSetting,
    i: usize,
    q: usize,
) -> Result<BTreeSet<(usize, HomSide)>> {
    let ti = ks.translation().tau_inv(i).ok_or_else(|| {
        Error::MissingTranslate(format!("no inverse translate of {}", ks.name(i)))
    })?;
    let mut out = BTreeSet::new();
    for x in 0..ks.gamma.num_vertices() {
        if ks.gamma.dim(q, ti, x)? > 0 {
            out.insert((x, HomSide::Covariant));
        }
        if ks.gamma.dim(q, x, i)? > 0 {
            out.insert((x, HomSide::Contravariant));
        }
    }
    Ok(out)
}

/// Purity of the minimal graded resolution of the degree-zero part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulTypeReport {
    /// Top nonzero degree of the algebra.
    pub p: usize,
    /// `(lowest, highest)` generator degree per resolution step, over all simples.
    pub steps: Vec<(usize, usize)>,
    /// Last step such that every step up to it is pure; `None` when the resolution
    /// ended with every step pure.
    pub q_hat: Option<usize>,
    /// The resolution vanished within the cutoff.
    pub terminated: bool,
}

impl KoszulTypeReport {
    pub fn pure_through(&self) -> usize {
        self.q_hat.unwrap_or(self.steps.len().saturating_sub(1))
    }
}

/// Degree-`[0, top]` cover of a graded bound quiver: vertex `(v, d)` has index `d * V + v`.
fn graded_cover(bq: &BoundQuiver, top: usize) -> Result<BoundQuiver> {
    let q = &bq.quiver;
    let nv = q.num_vertices();
    let vertices = (0..=top)
        .flat_map(|d| (0..nv).map(move |v| (v, d)))
        .map(|(v, d)| format!("{}<{d}>", q.vertex_name(v)))
        .collect();
    let mut arrows = Vec::new();
    for d in 0..top {
        for a in q.arrows() {
            arrows.push(Arrow {
                name: format!("{}<{d}>", a.name),
                source: d * nv + a.source,
                target: (d + 1) * nv + a.target,
            });
        }
    }
    let na = q.num_arrows();
    let cover = Quiver::new(format!("{}~", q.name), vertices, arrows)?;
    let mut raw = Vec::new();
    for r in bq.relations() {
        for d in 0..top {
            if d + r.degree > top {
                break;
            }
            let terms = r
                .terms()
                .iter()
                .map(|(p, c)| {
                    let ids: Vec<usize> = p
                        .arrows
                        .iter()
                        .enumerate()
                        .map(|(k, &a)| (d + k) * na + a)
                        .collect();
                    Ok((cover.path(&ids)?, c.clone()))
                })
                .collect::<Result<Vec<_>>>()?;
            raw.push(terms);
        }
    }
    BoundQuiver::from_terms(cover, bq.field, raw)
}

/// Resolves every simple through `cutoff` steps over the graded cover and records
/// the generator degrees at each step.
pub fn koszul_type(bq: &BoundQuiver, cutoff: usize) -> Result<KoszulTypeReport> {
    let p = GradedAlgebra::new(bq)
        .finite_loewy_length()?
        .saturating_sub(1);
    let cover = graded_cover(bq, cutoff + p + 1)?;
    let alg = RepAlgebra::new(&cover)?;
    let nv = bq.quiver.num_vertices();
    let mut steps: Vec<(usize, usize)> = Vec::new();
    let mut terminated = true;
    for v in 0..nv {
        let mut x = simple(&alg, v);
        for k in 0..=cutoff {
            if x.is_zero() {
                break;
            }
            let (omega, _, pc) = syzygy_with_cover(&alg, &x)?;
            let lo = pc.tops.iter().map(|w| w / nv).min().unwrap();
            let hi = pc.tops.iter().map(|w| w / nv).max().unwrap();
            match steps.get_mut(k) {
                Some(s) => *s = (s.0.min(lo), s.1.max(hi)),
                None => steps.push((lo, hi)),
            }
            x = omega;
            if lo != k || hi != k {
                break;
            }
        }
        terminated &= x.is_zero();
    }
    let first_impure = steps
        .iter()
        .enumerate()
        .position(|(k, &(lo, hi))| lo != k || hi != k);
    let q_hat = match first_impure {
        Some(k) => Some(k.saturating_sub(1)),
        None if terminated => None,
        None => Some(steps.len() - 1),
    };
    Ok(KoszulTypeReport {
        p,
        steps,
        q_hat,
        terminated,
    })
}
