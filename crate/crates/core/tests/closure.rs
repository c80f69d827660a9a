mod common;

use nquiver::rep::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Run {
    alg: RepAlgebra,
    closure: ClosureResult,
    table: RadicalTable,
    report: CompareReport,
}

fn run(name: &str, n: usize, dir: ClosureDirection, budget: usize) -> Run {
    let g = common::load(name);
    let alg = RepAlgebra::new(&g).unwrap();
    let closure = closure(&alg, n, dir, budget).unwrap();
    let reps: Vec<Rep> = closure.members.iter().map(|m| m.rep.clone()).collect();
    let table = radical_table(&alg, &reps).unwrap();
    let report = compare_with_prediction(&g, &closure, &table, budget).unwrap();
    Run {
        alg,
        closure,
        table,
        report,
    }
}

// dimension vectors of tau^{-t} P(u) from the inverse Coxeter matrix of the Kronecker quiver
fn coxeter_orbit(start: [i64; 2], steps: usize) -> Vec<[i64; 2]> {
    let mut out = vec![start];
    for _ in 0..steps {
        let [x, y] = *out.last().unwrap();
        out.push([-x + 2 * y, -2 * x + 3 * y]);
    }
    out
}

#[test]
fn kronecker_preprojectives_match_coxeter() {
    let r = run("kronecker", 1, ClosureDirection::Minus, 5);
    assert!(r.report.passed(), "{:?}", r.report);
    assert_eq!(r.closure.members.len(), 12);
    for (u, start) in [(0, [1, 2]), (1, [0, 1])] {
        let orbit = coxeter_orbit(start, 5);
        for m in r.closure.members.iter().filter(|m| m.vertex == u) {
            let d = orbit[m.step as usize];
            assert_eq!(m.rep.dims, vec![d[0] as usize, d[1] as usize]);
        }
    }
    let g = common::load("kronecker");
    assert_eq!(orlov_violation(&g, &r.closure, &r.table).unwrap(), None);
}

#[test]
fn kronecker_preinjectives() {
    let r = run("kronecker", 1, ClosureDirection::Plus, 3);
    assert!(r.report.passed(), "{:?}", r.report);
    assert!(r.closure.members.iter().all(|m| m.step <= 0));
}

#[test]
fn a3_closure_is_the_ar_quiver() {
    let r = run("a3", 1, ClosureDirection::Minus, 4);
    assert!(r.closure.terminated);
    assert_eq!(r.closure.members.len(), 6);
    assert_eq!(r.report.predicted_vertices, 6);
    assert!(r.report.passed(), "{:?}", r.report);
    let ar = ar_quiver(&r.closure, &r.table);
    assert_eq!(ar.arrows.values().sum::<usize>(), 6);
    assert_eq!(ar.translation.len(), 3);
    let g = common::load("a3");
    assert_eq!(orlov_violation(&g, &r.closure, &r.table).unwrap(), None);
}

#[test]
fn arrow_counts_survive_base_change() {
    let r = run("kronecker", 1, ClosureDirection::Minus, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let reps: Vec<Rep> = r
        .closure
        .members
        .iter()
        .map(|m| m.rep.random_base_change(r.alg.quiver(), &mut rng))
        .collect();
    let table = radical_table(&r.alg, &reps).unwrap();
    let n = reps.len();
    for x in 0..n {
        for y in 0..n {
            assert_eq!(table.arrow_count(x, y), r.table.arrow_count(x, y));
        }
    }
}

#[test]
fn closure_rejects_large_global_dimension() {
    let g = common::load("a3_rad2");
    let alg = RepAlgebra::new(&g).unwrap();
    assert!(matches!(
        closure(&alg, 1, ClosureDirection::Minus, 2),
        Err(nquiver::Error::GlobalDimension {
            expected: 1,
            found: 2
        })
    ));
}

#[test]
fn a3_rad2_tau2_inverse_matches_ext_oracle() {
    // tau_2^- M has dimension Ext^2_op(DM, P_op(v)) at v
    let g = common::load("a3_rad2");
    let alg = RepAlgebra::new(&g).unwrap();
    let op = alg.op();
    for u in 0..3 {
        let p = projective(&alg, u).unwrap();
        let t = tau_n_inverse(&alg, &p, 2).unwrap();
        for v in 0..3 {
            let e = ext_dim(&op, 2, &duality(&p), &projective(&op, v).unwrap()).unwrap();
            assert_eq!(t.dims[v], e, "P({u}) at {v}");
        }
    }
}

#[test]
fn a4_auslander_two_closure() {
    let g = common::load("a4_auslander");
    let alg = RepAlgebra::new(&g).unwrap();
    let iy = iyama_check(&alg, 2, 2, 12).unwrap();
    assert!(iy.holds, "{iy:?}");
    assert!(iyama_check(&alg, 3, 2, 12).unwrap().holds);
    for dir in [ClosureDirection::Minus, ClosureDirection::Plus] {
        let r = run("a4_auslander", 2, dir, 4);
        assert!(r.closure.terminated);
        assert_eq!(r.closure.members.len(), 20);
        assert!(r.report.passed(), "{dir:?} {:?}", r.report);
        assert_eq!(rigidity_violation(&r.alg, &r.closure).unwrap(), None);
        assert_eq!(orlov_violation(&g, &r.closure, &r.table).unwrap(), None);
    }
}

#[test]
fn probes() {
    assert!(n_rep_infinite_probe(&common::load("kronecker"), 1, 6)
        .unwrap()
        .positive());
    let a3 = n_rep_infinite_probe(&common::load("a3"), 1, 6).unwrap();
    assert!(!a3.all_nonzero && !a3.positive());
}
