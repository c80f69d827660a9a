mod common;

use nquiver::dsl::parse;
use nquiver::graded::GradedAlgebra;
use nquiver::linalg::canonical_basis;
use nquiver::qdual::{quadratic_dual, relation_span};
use nquiver::translation::{is_stable_n_translation, TranslationStructure};
use nquiver::zq::{returning_arrow_quiver, zq_window, Twist};
use nquiver::{BoundQuiver, Field, Path};

fn all_paths_of_length_two(name: &str) -> BoundQuiver {
    let q = common::load(name).quiver;
    let mut src = format!(
        "quiver {}\nvertices: {}\narrows:\n",
        q.name,
        q.vertices().join(" ")
    );
    for a in q.arrows() {
        src += &format!(
            "  {}: {} -> {}\n",
            a.name,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        );
    }
    src += "relations:\n";
    for a in q.arrows() {
        for b in q.arrows_from(a.target) {
            src += &format!("  {}.{};\n", q.arrow(*b).name, a.name);
        }
    }
    parse(&src, Field::Rational).unwrap()
}

#[test]
fn dual_of_radical_square_zero_is_free() {
    for name in ["a3", "kronecker"] {
        let rad2 = all_paths_of_length_two(name);
        let dual = quadratic_dual(&rad2).unwrap();
        assert!(dual.relations().is_empty(), "{name}");
    }
}

// Mesh relations written directly from the window's naming scheme: at (i, r) the sum of
// alpha then alpha* over arrows leaving i, plus alpha* then alpha over arrows entering i.
fn check_mesh(name: &str) {
    let base = all_paths_of_length_two(name);
    let ret = returning_arrow_quiver(&base, &Twist::Sign).unwrap();
    let w = zq_window(&base, 0, 3).unwrap();
    let mesh = quadratic_dual(&w.bound).unwrap();
    let q = &base.quiver;
    let wq = &w.bound.quiver;
    let alg = GradedAlgebra::new(&base);
    // star[a] = name of the returning arrow dual to arrow a
    let mut star = vec![String::new(); q.num_arrows()];
    for (k, m) in ret.maximal.iter().enumerate() {
        let c = alg.component(1, m.source, m.target).unwrap();
        let pos = m.coords.iter().position(|x| !x.is_zero()).unwrap();
        star[c.basis_path(pos).arrows[0]] =
            ret.bound.quiver.arrow(ret.base_arrows + k).name.clone();
    }
    let arrow = |n: String| wq.arrow_id(&n).unwrap();
    let f = Field::Rational;
    for x in 0..wq.num_vertices() {
        for y in 0..wq.num_vertices() {
            let (paths, got) = relation_span(&mesh, x, y, 2);
            let (i, r) = w.coords(x);
            let (j, s) = w.coords(y);
            let mut want = Vec::new();
            if i == j && s == r + 1 {
                let mut v = vec![f.zero(); paths.len()];
                let mut put = |ids: [usize; 2]| {
                    let p = Path {
                        source: x,
                        target: y,
                        arrows: ids.to_vec(),
                    };
                    v[paths.iter().position(|q| *q == p).unwrap()] = f.one();
                };
                for &a in q.arrows_from(i) {
                    put([
                        arrow(format!("{}[{r}]", q.arrow(a).name)),
                        arrow(format!("{}[{r}]", star[a])),
                    ]);
                }
                for &a in q.arrows_into(i) {
                    put([
                        arrow(format!("{}[{r}]", star[a])),
                        arrow(format!("{}[{s}]", q.arrow(a).name)),
                    ]);
                }
                want.push(v);
            }
            assert_eq!(
                got,
                canonical_basis(f, paths.len(), &want),
                "{name}: {} -> {}",
                wq.vertex_name(x),
                wq.vertex_name(y)
            );
        }
    }
}

#[test]
fn mesh_relations_a3() {
    check_mesh("a3");
}

#[test]
fn mesh_relations_kronecker() {
    check_mesh("kronecker");
}

#[test]
fn a3_window_interior_is_stable() {
    let base = all_paths_of_length_two("a3");
    let w = zq_window(&base, 0, 3).unwrap();
    let t = w.bound.translation.as_ref().unwrap();
    let interior: Vec<usize> = (0..w.bound.quiver.num_vertices())
        .filter(|&v| t.tau(v).is_some() && t.tau_inv(v).is_some())
        .collect();
    let ts = TranslationStructure::new(w.bound.clone()).unwrap();
    let rep = is_stable_n_translation(&ts, &interior).unwrap();
    assert!(rep.passed(), "{:?}", rep.verdicts);
    assert_eq!(rep.checked(), 6);
}
