mod common;

use nquiver::graded::GradedAlgebra;
use nquiver::json::{from_json_str, to_json_string};
use nquiver::qdual::{dimension_identity_holds, quadratic_dual, same_relation_spans};
use nquiver::quiver::{enumerate_paths, Arrow};
use nquiver::rep::*;
use nquiver::{dsl, BoundQuiver, Field, Quiver};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
struct Spec {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
    // per (i, j) with length-two paths: coefficient rows over those paths
    coeffs: Vec<Vec<i64>>,
}

fn spec(acyclic: bool) -> impl Strategy<Value = Spec> {
    (1usize..=8)
        .prop_flat_map(move |n| {
            let arrow = (0..n, 0..n).prop_filter(
                "no loops",
                move |(s, t)| if acyclic { s < t } else { s != t },
            );
            (
                Just(n),
                prop::collection::vec(arrow, 0..=(if n > 1 { 12 } else { 0 })),
                prop::collection::vec(prop::collection::vec(-2i64..=2, 16), 0..40),
            )
        })
        .prop_map(|(vertices, arrows, coeffs)| Spec {
            vertices,
            arrows,
            coeffs,
        })
}

fn build(s: &Spec, field: Field) -> BoundQuiver {
    let vertices: Vec<String> = (1..=s.vertices).map(|v| v.to_string()).collect();
    let arrows: Vec<Arrow> = s
        .arrows
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| Arrow {
            name: format!("x{k}"),
            source: a,
            target: b,
        })
        .collect();
    let q = Quiver::new("R", vertices, arrows).unwrap();
    let mut raw = Vec::new();
    let mut rows = s.coeffs.iter().cycle();
    let mut take = s.coeffs.len();
    for i in 0..s.vertices {
        for j in 0..s.vertices {
            let paths = enumerate_paths(&q, i, j, 2);
            if paths.is_empty() || take == 0 {
                continue;
            }
            take -= 1;
            let row = rows.next().unwrap();
            // about half of the rows become relations, the rest stay free
            if row[15] < 0 {
                continue;
            }
            let terms: Vec<_> = paths
                .iter()
                .zip(row.iter())
                .filter(|(_, &c)| c != 0)
                .map(|(p, &c)| (p.clone(), field.from_i64(c)))
                .collect();
            if !terms.is_empty() {
                raw.push(terms);
            }
        }
    }
    BoundQuiver::from_terms(q, field, raw).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dual_is_an_involution(s in spec(false)) {
        let q = build(&s, Field::Rational);
        let dd = quadratic_dual(&quadratic_dual(&q).unwrap()).unwrap();
        prop_assert!(same_relation_spans(&q, &dd, 2));
        prop_assert!(dimension_identity_holds(&q, &quadratic_dual(&q).unwrap()));
    }

    #[test]
    fn opposite_is_an_involution(s in spec(false)) {
        let q = build(&s, Field::Rational);
        let oo = q.opposite().opposite();
        prop_assert_eq!(&oo.quiver, &q.quiver);
        prop_assert!(same_relation_spans(&q, &oo, 2));
    }

    #[test]
    fn dual_commutes_with_opposite(s in spec(false)) {
        let q = build(&s, Field::prime(7).unwrap());
        let a = quadratic_dual(&q.opposite()).unwrap();
        let b = quadratic_dual(&q).unwrap().opposite();
        prop_assert!(same_relation_spans(&a, &b, 2));
    }

    #[test]
    fn json_and_text_round_trip(s in spec(false)) {
        let q = build(&s, Field::Rational);
        prop_assert_eq!(&from_json_str(&to_json_string(&q)).unwrap(), &q);
        let text = dsl::serialize(&q);
        let back = dsl::parse(&text, Field::Rational).unwrap();
        prop_assert_eq!(dsl::serialize(&back), text);
        prop_assert!(same_relation_spans(&q, &back, 2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    // every component: basis size plus ideal size equals the number of paths
    #[test]
    fn dimensions_add_up(s in spec(true)) {
        let q = build(&s, Field::Rational);
        let alg = GradedAlgebra::new(&q);
        let n = q.quiver.num_vertices();
        for t in 0..=4 {
            for i in 0..n {
                for j in 0..n {
                    let (paths, m) = alg.class_matrix(t, i, j).unwrap();
                    let d = alg.dim(t, i, j).unwrap();
                    prop_assert_eq!(m.rank(), d);
                    let kernel = if paths.is_empty() { 0 } else { m.kernel().len() };
                    prop_assert_eq!(kernel + d, paths.len());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn ar_arrow_counts_survive_base_change(seed in any::<u64>()) {
        let g = common::load_in("kronecker", Field::prime(101).unwrap());
        let alg = RepAlgebra::new(&g).unwrap();
        let c = closure(&alg, 1, ClosureDirection::Minus, 3).unwrap();
        let reps: Vec<Rep> = c.members.iter().map(|m| m.rep.clone()).collect();
        let base = radical_table(&alg, &reps).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let moved: Vec<Rep> = reps.iter().map(|m| m.random_base_change(alg.quiver(), &mut rng)).collect();
        let table = radical_table(&alg, &moved).unwrap();
        for x in 0..reps.len() {
            for y in 0..reps.len() {
                prop_assert_eq!(table.arrow_count(x, y), base.arrow_count(x, y));
                prop_assert_eq!(table.hom_dims[x][y], base.hom_dims[x][y]);
            }
        }
    }

    #[test]
    fn hom_agrees_with_the_naive_solver(seed in any::<u64>()) {
        let g = common::load("a3_rad2");
        let alg = RepAlgebra::new(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mods: Vec<Rep> = (0..3)
            .flat_map(|v| [projective(&alg, v).unwrap(), injective(&alg, v).unwrap(), simple(&alg, v)])
            .map(|m| m.random_base_change(alg.quiver(), &mut rng))
            .collect();
        for m in &mods {
            for n in &mods {
                prop_assert_eq!(hom_dim(&alg, m, n).unwrap(), hom_space_naive(alg.quiver(), m, n).len());
            }
        }
    }
}
