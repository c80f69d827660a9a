use crate::error::{Error, Result};
use crate::linalg::{canonical_basis, Echelon, Matrix};
use crate::scalar::Scalar;

use super::*;

#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// Vertex of each generator.
    pub tops: Vec<usize>,
    pub cover: Rep,
    /// `cover -> M`, surjective.
    pub map: Morphism,
}

/// Vertices of a minimal generating set, with generators taken among the standard basis vectors.
fn top_generators(q: &Quiver, m: &Rep) -> Vec<(usize, usize)> {
    let mut gens = Vec::new();
    for v in 0..m.dims.len() {
        let mut rad = Echelon::new(m.field, m.dims[v]);
        for &a in q.arrows_into(v) {
            let mat = &m.maps[a];
            for c in 0..mat.ncols() {
                rad.insert(&mat.column(c));
            }
        }
        for k in 0..m.dims[v] {
            let mut e = vec![m.field.zero(); m.dims[v]];
            e[k] = m.field.one();
            if rad.insert(&e) {
                gens.push((v, k));
            }
        }
    }
    gens
}

pub fn projective_cover(alg: &RepAlgebra, m: &Rep) -> Result<ProjectiveCover> {
    let q = alg.quiver();
    let g = alg.graded();
    let gens = top_generators(q, m);
    let parts: Vec<Rep> = gens
        .iter()
        .map(|&(v, _)| projective(alg, v))
        .collect::<Result<_>>()?;
    let cover = direct_sum(alg, &parts);
    let mut map = Vec::new();
    for j in 0..q.num_vertices() {
        let mut cols = Vec::with_capacity(cover.dims[j]);
        for &(v, k) in &gens {
            let mut e = vec![m.field.zero(); m.dims[v]];
            e[k] = m.field.one();
            for t in 0..=alg.top_degree() {
                let c = g.component(t, v, j)?;
                for b in 0..c.dim() {
                    cols.push(m.act_path(c.basis_path(b), &e));
                }
            }
        }
        map.push(crate::graded::columns_to_matrix(m.field, m.dims[j], cols));
    }
    Ok(ProjectiveCover {
        tops: gens.into_iter().map(|(v, _)| v).collect(),
        cover,
        map,
    })
}

/// `Omega M` together with its inclusion into the projective cover.
pub fn syzygy_with_cover(alg: &RepAlgebra, m: &Rep) -> Result<(Rep, Morphism, ProjectiveCover)> {
    let pc = projective_cover(alg, m)?;
    let bases: Vec<Vec<Vec<Scalar>>> = pc
        .map
        .iter()
        .zip(&pc.cover.dims)
        .map(|(f, &d)| {
            if f.nrows() == 0 {
                identity_basis(m.field, d)
            } else {
                f.kernel()
            }
        })
        .collect();
    let incl: Morphism = bases
        .iter()
        .zip(&pc.cover.dims)
        .map(|(b, &d)| crate::graded::columns_to_matrix(m.field, d, b.clone()))
        .collect();
    let omega = submodule(alg.quiver(), &pc.cover, bases).with_label(format!("Ω{}", m.label));
    Ok((omega, incl, pc))
}

pub fn syzygy(alg: &RepAlgebra, m: &Rep) -> Result<Rep> {
    Ok(syzygy_with_cover(alg, m)?.0)
}

pub fn cosyzygy(alg: &RepAlgebra, m: &Rep) -> Result<Rep> {
    let d = syzygy(&alg.op(), &duality(m))?;
    Ok(duality(&d).with_label(format!("Ω⁻{}", m.label)))
}

pub fn syzygy_power(alg: &RepAlgebra, m: &Rep, k: usize) -> Result<Rep> {
    let mut x = m.clone();
    for _ in 0..k {
        x = syzygy(alg, &x)?;
    }
    Ok(x)
}

pub fn cosyzygy_power(alg: &RepAlgebra, m: &Rep, k: usize) -> Result<Rep> {
    let mut x = m.clone();
    for _ in 0..k {
        x = cosyzygy(alg, &x)?;
    }
    Ok(x)
}

/// Dimension of the socle at each vertex.
pub fn socle_dims(q: &Quiver, m: &Rep) -> Vec<usize> {
    (0..m.dims.len())
        .map(|v| {
            let rows: Vec<Vec<Scalar>> = q
                .arrows_from(v)
                .iter()
                .flat_map(|&a| m.maps[a].rows().to_vec())
                .collect();
            if rows.is_empty() {
                m.dims[v]
            } else {
                m.dims[v] - Matrix::from_rows(m.field, m.dims[v], rows).rank()
            }
        })
        .collect()
}

/// Multiplicities of `P(v)` in each term of the minimal projective resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjResolution {
    pub terms: Vec<Vec<usize>>,
    /// The last syzygy computed vanished.
    pub complete: bool,
}

impl ProjResolution {
    pub fn length(&self) -> Option<usize> {
        self.complete.then(|| self.terms.len().saturating_sub(1))
    }
}

pub fn min_proj_resolution(alg: &RepAlgebra, m: &Rep, steps: usize) -> Result<ProjResolution> {
    let nv = alg.num_vertices();
    let mut terms = Vec::new();
    let mut x = m.clone();
    for _ in 0..=steps {
        if x.is_zero() {
            return Ok(ProjResolution {
                terms,
                complete: true,
            });
        }
        let (omega, _, pc) = syzygy_with_cover(alg, &x)?;
        let mut mult = vec![0; nv];
        for v in pc.tops {
            mult[v] += 1;
        }
        terms.push(mult);
        x = omega;
    }
    Ok(ProjResolution {
        terms,
        complete: x.is_zero(),
    })
}

pub fn projective_dimension(alg: &RepAlgebra, m: &Rep, cutoff: usize) -> Result<usize> {
    if m.is_zero() {
        return Ok(0);
    }
    let mut x = m.clone();
    for k in 0..=cutoff {
        let y = syzygy(alg, &x)?;
        if y.is_zero() {
            return Ok(k);
        }
        x = y;
    }
    Err(Error::CutoffExceeded(cutoff))
}

pub fn global_dimension(alg: &RepAlgebra, cutoff: usize) -> Result<usize> {
    let mut best = 0;
    for v in 0..alg.num_vertices() {
        best = best.max(projective_dimension(alg, &simple(alg, v), cutoff)?);
    }
    Ok(best)
}

/// A presentation `P1 -> P0 -> M -> 0` with the data needed to solve Hom problems.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub cover: ProjectiveCover,
    /// Vertex and image in `P0` of each generator of `Omega M`.
    pub relations: Vec<(usize, Vec<Scalar>)>,
    /// Per vertex: columns of the cover map that form a basis, and the inverse of that block.
    sections: Vec<(Vec<usize>, Matrix)>,
}

pub fn presentation(alg: &RepAlgebra, m: &Rep) -> Result<Presentation> {
    let (omega, incl, cover) = syzygy_with_cover(alg, m)?;
    let gens = top_generators(alg.quiver(), &omega);
    let relations = gens.iter().map(|&(w, k)| (w, incl[w].column(k))).collect();
    let mut sections = Vec::new();
    for f in &cover.map {
        let mut t = f.clone();
        let piv = t.rref();
        let block = f.submatrix(&(0..f.nrows()).collect::<Vec<_>>(), &piv);
        sections.push((
            piv,
            block
                .inverse()
                .unwrap_or_else(|| Matrix::zeros(m.field, 0, 0)),
        ));
    }
    Ok(Presentation {
        cover,
        relations,
        sections,
    })
}

/// Hom through a presentation of `m`: a morphism is fixed by the images of the generators.
pub fn hom_space_with(
    alg: &RepAlgebra,
    pres: &Presentation,
    m: &Rep,
    n: &Rep,
) -> Result<Vec<Morphism>> {
    let g = alg.graded();
    let f = m.field;
    let tops = &pres.cover.tops;
    let mut offs = Vec::with_capacity(tops.len());
    let mut total = 0;
    for &v in tops {
        offs.push(total);
        total += n.dims[v];
    }
    // images[w][(g, t, k)] = action of the corresponding basis path on N, as a matrix from N_{v_g}
    let basis_paths = |w: usize| -> Result<Vec<(usize, Path)>> {
        let mut out = Vec::new();
        for (gi, &v) in tops.iter().enumerate() {
            for t in 0..=alg.top_degree() {
                let c = g.component(t, v, w)?;
                for k in 0..c.dim() {
                    out.push((gi, c.basis_path(k).clone()));
                }
            }
        }
        Ok(out)
    };
    let mut eqs: Vec<Vec<Scalar>> = Vec::new();
    for (w, x) in &pres.relations {
        let paths = basis_paths(*w)?;
        let mut block = vec![vec![f.zero(); total]; n.dims[*w]];
        for ((gi, p), c) in paths.iter().zip(x) {
            if c.is_zero() {
                continue;
            }
            let pm = n.path_matrix(p);
            for (r, row) in block.iter_mut().enumerate() {
                for k in 0..pm.ncols() {
                    let y = pm.get(r, k);
                    if !y.is_zero() {
                        row[offs[*gi] + k] = &row[offs[*gi] + k] + &(c * y);
                    }
                }
            }
        }
        eqs.extend(block);
    }
    let sols = if eqs.is_empty() {
        identity_basis(f, total)
    } else {
        Matrix::from_rows(f, total, eqs).kernel()
    };
    let sols = canonical_basis(f, total, &sols);
    let mut out = Vec::with_capacity(sols.len());
    let path_lists: Vec<Vec<(usize, Path)>> =
        (0..m.dims.len()).map(basis_paths).collect::<Result<_>>()?;
    for s in &sols {
        let mut mor = Vec::with_capacity(m.dims.len());
        for (j, (piv, inv)) in pres.sections.iter().enumerate() {
            let cols: Vec<Vec<Scalar>> = piv
                .iter()
                .map(|&c| {
                    let (gi, p) = &path_lists[j][c];
                    let v = tops[*gi];
                    n.act_path(p, &s[offs[*gi]..offs[*gi] + n.dims[v]])
                })
                .collect();
            let phi = crate::graded::columns_to_matrix(f, n.dims[j], cols);
            mor.push(if m.dims[j] == 0 {
                Matrix::zeros(f, n.dims[j], 0)
            } else {
                phi.mul(inv)
            });
        }
        out.push(mor);
    }
    Ok(out)
}

pub fn hom_space(alg: &RepAlgebra, m: &Rep, n: &Rep) -> Result<Vec<Morphism>> {
    let pres = presentation(alg, m)?;
    hom_space_with(alg, &pres, m, n)
}

pub fn hom_dim(alg: &RepAlgebra, m: &Rep, n: &Rep) -> Result<usize> {
    Ok(hom_space(alg, m, n)?.len())
}

/// `dim Ext^k(M, N)` by dimension shifting.
pub fn ext_dim(alg: &RepAlgebra, k: usize, m: &Rep, n: &Rep) -> Result<usize> {
    if k == 0 {
        return hom_dim(alg, m, n);
    }
    let y = syzygy_power(alg, m, k - 1)?;
    if y.is_zero() {
        return Ok(0);
    }
    let (omega, _, pc) = syzygy_with_cover(alg, &y)?;
    let hp: usize = pc.tops.iter().map(|&v| n.dims[v]).sum();
    Ok(hom_dim(alg, &omega, n)? + hom_dim(alg, &y, n)? - hp)
}

#[derive(Clone, Debug)]
pub struct IyamaRow {
    pub step: usize,
    /// Multiplicity of `I(v)` in the term.
    pub multiplicities: Vec<usize>,
    pub flat_dimension: usize,
}

#[derive(Clone, Debug)]
pub struct IyamaReport {
    pub l: usize,
    pub lp: usize,
    pub rows: Vec<IyamaRow>,
    pub holds: bool,
}

/// Flat dimensions of the first `lp` terms of the minimal injective resolution of the algebra.
pub fn iyama_check(alg: &RepAlgebra, l: usize, lp: usize, cutoff: usize) -> Result<IyamaReport> {
    let q = alg.quiver();
    let nv = alg.num_vertices();
    let inj_pd: Vec<usize> = (0..nv)
        .map(|v| projective_dimension(alg, &injective(alg, v)?, cutoff))
        .collect::<Result<_>>()?;
    let parts: Vec<Rep> = (0..nv).map(|v| projective(alg, v)).collect::<Result<_>>()?;
    let mut x = direct_sum(alg, &parts);
    let mut rows = Vec::new();
    for step in 0..lp {
        let multiplicities = socle_dims(q, &x);
        let flat_dimension = (0..nv)
            .filter(|&v| multiplicities[v] > 0)
            .map(|v| inj_pd[v])
            .max()
            .unwrap_or(0);
        rows.push(IyamaRow {
            step,
            multiplicities,
            flat_dimension,
        });
        if x.is_zero() {
            continue;
        }
        x = cosyzygy(alg, &x)?;
    }
    let holds = rows.iter().all(|r| r.flat_dimension < l);
    Ok(IyamaReport { l, lp, rows, holds })
}
