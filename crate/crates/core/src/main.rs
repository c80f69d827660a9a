use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use nquiver::dot::{emit_dot, DotOptions};
use nquiver::graded::{GradedAlgebra, DEFAULT_CUTOFF};
use nquiver::koszul::{
    koszul_type, koszul_xi, koszul_zeta, obstructed_objects, verify_n_almost_split, KoszulSetting,
};
use nquiver::qdual::{dual_pair_check, quadratic_dual};
use nquiver::rep::{self, ClosureDirection, RepAlgebra};
use nquiver::translation::{
    hammock, hammock_bijection_check, is_tau_mature, Direction, TranslationStructure,
};
use nquiver::zq::{
    extract_tau_slice_by_choice, preprojective_presentation, returning_arrow_quiver,
    verify_slice_reconstruction, zq_window, Twist, ZqWindow,
};
use nquiver::{dsl, json, BoundQuiver, Error, Field};

#[derive(Parser)]
#[command(
    name = "nquiver",
    version,
    about = "Bound quivers, n-translation quivers and n-slice algebras"
)]
struct Cli {
    /// `rat` or `fp:<p>`.
    #[arg(long, global = true, default_value = "rat")]
    field: String,
    /// Degree cutoff for graded computations, or step cutoff for resolutions.
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true)]
    dot: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Input {
    /// Quiver file, text format or `.json`.
    file: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum TwistArg {
    Sign,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirArg {
    Ending,
    Starting,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureArg {
    Minus,
    Plus,
}

impl From<ClosureArg> for ClosureDirection {
    fn from(d: ClosureArg) -> Self {
        match d {
            ClosureArg::Minus => ClosureDirection::Minus,
            ClosureArg::Plus => ClosureDirection::Plus,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and print the canonical form.
    #[command(alias = "validate")]
    Parse(Input),
    /// Dimensions of graded components.
    Dims {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        deg: usize,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
    /// Quadratic dual.
    Qdual {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        verify: bool,
    },
    /// Returning-arrow presentation of the trivial extension.
    Trivext {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "sign")]
        twist: TwistArg,
    },
    /// Presentation of the (n+1)-preprojective algebra.
    Prepro {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
    },
    /// A finite window of the repetitive quiver.
    Zq {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: Option<usize>,
        /// Inclusive range `a..b`.
        #[arg(long, allow_hyphen_values = true)]
        slices: String,
    },
    /// Complete slice of a window, chosen by one slice index per base vertex.
    Slice {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        slices: String,
        /// Comma-separated slice indices, one per base vertex.
        #[arg(long, allow_hyphen_values = true)]
        choice: String,
        #[arg(long)]
        verify: bool,
    },
    /// Hammock of a vertex in a translation quiver.
    Hammock {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        vertex: String,
        #[arg(long, value_enum, default_value = "ending")]
        dir: DirArg,
        /// Also check the bijection with the hammock at the other end.
        #[arg(long)]
        bijection: bool,
    },
    /// Maturity of a truncation.
    Mature {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        truncation: String,
        /// Integer or `inf`.
        #[arg(long)]
        q: String,
    },
    /// Koszul complex of a vertex over the dual of a translation quiver.
    Koszul {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        zeta: bool,
    },
    /// Almost-split verification of a Koszul complex.
    Nass {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        vertex: String,
        /// `all`, `mature:<q>`, or a comma-separated vertex list.
        #[arg(long, default_value = "all")]
        test_set: String,
    },
    /// Purity of the minimal graded resolution of the degree-zero part.
    Ktype {
        #[command(flatten)]
        input: Input,
        /// Apply the twisted trivial extension first.
        #[arg(long)]
        trivext: bool,
        #[arg(long, value_enum, default_value = "sign")]
        twist: TwistArg,
    },
    /// Closure under higher translates.
    Closure {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "minus")]
        dir: ClosureArg,
        #[arg(long, default_value_t = 4)]
        budget: usize,
    },
    /// Closure compared with the truncated repetitive quiver.
    Compare {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "minus")]
        dir: ClosureArg,
        #[arg(long, default_value_t = 4)]
        budget: usize,
        /// Also recompute arrow counts after a random base change (seeded by `--seed`).
        #[arg(long)]
        base_change: bool,
    },
    /// Iyama condition on the minimal injective resolution.
    Iyama {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        lp: usize,
    },
    /// Probe for representation-infiniteness.
    Probe {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        budget: usize,
    },
}

struct Outcome {
    text: String,
    json: Value,
    dot: Option<String>,
    ok: bool,
}

impl Outcome {
    fn new(text: String, json: Value) -> Outcome {
        Outcome {
            text,
            json,
            dot: None,
            ok: true,
        }
    }
    fn dot(mut self, d: String) -> Outcome {
        self.dot = Some(d);
        self
    }
    fn verdict(mut self, ok: bool) -> Outcome {
        self.ok = ok;
        self
    }
}

fn load(path: &PathBuf, field: Field) -> nquiver::Result<BoundQuiver> {
    let src = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        json::from_json_str(&src)
    } else {
        dsl::parse(&src, field)
    }
}

/// Splits on commas outside brackets, so names like `(1,2)[-1]` survive.
fn split_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn vertices(bq: &BoundQuiver, s: &str) -> nquiver::Result<Vec<usize>> {
    split_list(s).iter().map(|v| bq.quiver.vertex(v)).collect()
}

fn range(s: &str) -> nquiver::Result<(i64, i64)> {
    let bad = || Error::InvalidArgument(format!("expected a range a..b, got `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn twist(t: TwistArg) -> Twist {
    match t {
        TwistArg::Sign => Twist::Sign,
        TwistArg::None => Twist::None,
    }
}

fn window_dot(w: &ZqWindow) -> String {
    let nb = w.base.base_arrows;
    let q = &w.base.bound.quiver;
    let returning: Vec<usize> = w
        .bound
        .quiver
        .arrows()
        .iter()
        .enumerate()
        .filter(|(_, a)| {
            (nb..q.num_arrows()).any(|k| a.name.starts_with(&format!("{}[", q.arrow(k).name)))
        })
        .map(|(k, _)| k)
        .collect();
    let slices = (0..w.bound.quiver.num_vertices())
        .map(|v| w.coords(v).1)
        .collect();
    emit_dot(
        &w.bound,
        &DotOptions {
            slices: Some(slices),
            returning,
            ..Default::default()
        },
    )
}

fn graded_for(cli: &Cli, bq: &BoundQuiver) -> GradedAlgebra {
    GradedAlgebra::with_cutoff(bq, cli.cutoff.unwrap_or(DEFAULT_CUTOFF))
}

fn run(cli: &Cli, field: Field) -> nquiver::Result<Outcome> {
    Ok(match &cli.cmd {
        Cmd::Parse(i) => {
            let bq = load(&i.file, field)?;
            Outcome::new(
                dsl::serialize(&bq),
                serde_json::to_value(json::to_json(&bq)).unwrap(),
            )
            .dot(emit_dot(&bq, &DotOptions::default()))
        }
        Cmd::Dims {
            input,
            deg,
            from,
            to,
        } => {
            let bq = load(&input.file, field)?;
            let alg = graded_for(cli, &bq);
            let nv = bq.quiver.num_vertices();
            let pick = |s: &Option<String>| -> nquiver::Result<Vec<usize>> {
                match s {
                    Some(v) => Ok(vec![bq.quiver.vertex(v)?]),
                    None => Ok((0..nv).collect()),
                }
            };
            let mut text = String::new();
            let mut rows = Vec::new();
            for i in pick(from)? {
                for j in pick(to)? {
                    let d = alg.dim(*deg, i, j)?;
                    if d > 0 || from.is_some() {
                        text += &format!(
                            "{} -> {}: {d}\n",
                            bq.quiver.vertex_name(i),
                            bq.quiver.vertex_name(j)
                        );
                        rows.push(json!({"from": bq.quiver.vertex_name(i), "to": bq.quiver.vertex_name(j), "dim": d}));
                    }
                }
            }
            Outcome::new(text, json!({"degree": deg, "dims": rows}))
        }
        Cmd::Qdual { input, verify } => {
            let bq = load(&input.file, field)?;
            let dual = quadratic_dual(&bq)?;
            let mut out = Outcome::new(
                dsl::serialize(&dual),
                serde_json::to_value(json::to_json(&dual)).unwrap(),
            )
            .dot(emit_dot(&dual, &DotOptions::default()));
            if *verify {
                let r = dual_pair_check(&bq)?;
                if !r.passed() {
                    eprintln!("dual pair check failed: {r:?}");
                }
                out = out.verdict(r.passed());
            }
            out
        }
        Cmd::Trivext { input, twist: t } => {
            let bq = load(&input.file, field)?;
            let r = returning_arrow_quiver(&bq, &twist(*t))?;
            if let Some(w) = &r.warning {
                eprintln!("warning: {w}");
            }
            let returning: Vec<usize> = (r.base_arrows..r.bound.quiver.num_arrows()).collect();
            Outcome::new(
                dsl::serialize(&r.bound),
                json!({"quiver": json::to_json(&r.bound), "n": r.n, "returning": returning, "quadratic": r.quadratic}),
            )
            .dot(emit_dot(&r.bound, &DotOptions { returning, ..Default::default() }))
        }
        Cmd::Prepro { input, n } => {
            let bq = load(&input.file, field)?;
            let p = preprojective_presentation(&bq, *n)?;
            if let Some(w) = &p.warning {
                eprintln!("warning: {w}");
            }
            Outcome::new(
                dsl::serialize(&p.bound),
                serde_json::to_value(json::to_json(&p.bound)).unwrap(),
            )
            .dot(emit_dot(&p.bound, &DotOptions::default()))
        }
        Cmd::Zq { input, n, slices } => {
            let bq = load(&input.file, field)?;
            let (a, b) = range(slices)?;
            let w = zq_window(&bq, a, b)?;
            if let Some(n) = n {
                if *n != w.n() {
                    return Err(Error::NotProperlyGraded {
                        lengths: vec![w.n()],
                        witness: format!("input is {}-properly graded, not {n}", w.n()),
                    });
                }
            }
            if !w.dropped_arrows.is_empty() {
                eprintln!(
                    "dropped {} arrows and {} relations at the window edges",
                    w.dropped_arrows.len(),
                    w.dropped_relations
                );
            }
            Outcome::new(
                dsl::serialize(&w.bound),
                json!({"quiver": json::to_json(&w.bound), "n": w.n(), "dropped_arrows": w.dropped_arrows, "dropped_relations": w.dropped_relations}),
            )
            .dot(window_dot(&w))
        }
        Cmd::Slice {
            input,
            slices,
            choice,
            verify,
        } => {
            let bq = load(&input.file, field)?;
            let (a, b) = range(slices)?;
            let w = zq_window(&bq, a, b)?;
            let choice: Vec<i64> = split_list(choice)
                .iter()
                .map(|s| {
                    s.parse()
                        .map_err(|_| Error::InvalidArgument(format!("bad slice index `{s}`")))
                })
                .collect::<nquiver::Result<_>>()?;
            let slice = extract_tau_slice_by_choice(&w, &choice)?;
            let mut out = Outcome::new(
                dsl::serialize(&slice),
                serde_json::to_value(json::to_json(&slice)).unwrap(),
            )
            .dot(emit_dot(&slice, &DotOptions::default()));
            if *verify {
                let vs: Vec<usize> = choice
                    .iter()
                    .enumerate()
                    .map(|(u, &t)| w.vertex(u, t).unwrap())
                    .collect();
                let r = verify_slice_reconstruction(&w, &vs)?;
                eprintln!("reconstruction: {r:?}");
                out = out.verdict(r.passed());
            }
            out
        }
        Cmd::Hammock {
            input,
            vertex,
            dir,
            bijection,
        } => {
            let bq = load(&input.file, field)?;
            let i = bq.quiver.vertex(vertex)?;
            let ts = TranslationStructure::new(bq.clone())?;
            let d = match dir {
                DirArg::Ending => Direction::Ending,
                DirArg::Starting => Direction::Starting,
            };
            let h = hammock(&ts, i, d)?;
            let q = &bq.quiver;
            let mut text = String::new();
            let mut mu = Vec::new();
            for (&(j, t), &m) in &h.mu {
                text += &format!("({}, {t}): {m}\n", q.vertex_name(j));
                mu.push(json!({"vertex": q.vertex_name(j), "level": t, "mu": m}));
            }
            let arrows: Vec<Value> = h
                .arrows
                .iter()
                .map(|a| json!({"arrow": q.arrow(a.arrow).name, "level": a.level, "from": [q.vertex_name(a.from.0), a.from.1], "to": [q.vertex_name(a.to.0), a.to.1]}))
                .collect();
            let mut dot = String::from("digraph hammock {\n  rankdir=LR;\n");
            for (&(j, t), &m) in &h.mu {
                dot += &format!(
                    "  \"{}_{t}\" [label=\"{} ({t})\\n{m}\"];\n",
                    q.vertex_name(j),
                    q.vertex_name(j)
                );
            }
            for a in &h.arrows {
                dot += &format!(
                    "  \"{}_{}\" -> \"{}_{}\" [label=\"{}\"];\n",
                    q.vertex_name(a.from.0),
                    a.from.1,
                    q.vertex_name(a.to.0),
                    a.to.1,
                    q.arrow(a.arrow).name
                );
            }
            dot += "}\n";
            let mut out = Outcome::new(text, json!({"mu": mu, "arrows": arrows})).dot(dot);
            if *bijection {
                let f = hammock_bijection_check(&ts, i)?;
                if let Some(f) = &f {
                    eprintln!("bijection fails: {f:?}");
                }
                out = out.verdict(f.is_none());
            }
            out
        }
        Cmd::Mature {
            input,
            truncation,
            q,
        } => {
            let bq = load(&input.file, field)?;
            let tr = vertices(&bq, truncation)?;
            let q = match q.as_str() {
                "inf" => None,
                s => Some(
                    s.parse()
                        .map_err(|_| Error::InvalidArgument(format!("bad q `{s}`")))?,
                ),
            };
            let r = is_tau_mature(&bq, &tr, q)?;
            let qv = &bq.quiver;
            let witnesses: Vec<Value> = r
                .witnesses
                .iter()
                .map(|w| json!({"vertex": qv.vertex_name(w.vertex), "inverse_translate": qv.vertex_name(w.inverse_translate), "target": qv.vertex_name(w.target)}))
                .collect();
            let mut text = format!("mature: {}\n", r.mature);
            for w in &r.witnesses {
                text += &format!(
                    "  path of length q from {} (inverse translate of {}) to {}\n",
                    qv.vertex_name(w.inverse_translate),
                    qv.vertex_name(w.vertex),
                    qv.vertex_name(w.target)
                );
            }
            Outcome::new(text, json!({"mature": r.mature, "witnesses": witnesses, "simple_criterion": r.simple_criterion}))
                .verdict(r.mature)
        }
        Cmd::Koszul {
            input,
            vertex,
            zeta,
        } => {
            let bq = load(&input.file, field)?;
            let ks = KoszulSetting::new(&bq)?;
            let i = bq.quiver.vertex(vertex)?;
            let c = if *zeta {
                koszul_zeta(&ks, i)?
            } else {
                koszul_xi(&ks, i)?
            };
            let q = &bq.quiver;
            let mut text = String::new();
            let mut terms = Vec::new();
            for (t, term) in c.terms.iter().enumerate() {
                let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
                for s in term {
                    *counts.entry(q.vertex_name(s.vertex)).or_default() += 1;
                }
                let parts: Vec<String> = counts
                    .iter()
                    .map(|(v, m)| {
                        if *m == 1 {
                            format!("P({v})")
                        } else {
                            format!("P({v})^{m}")
                        }
                    })
                    .collect();
                text += &format!("{t}: {}\n", parts.join(" + "));
                terms.push(json!(counts));
            }
            let composite = nquiver::koszul::composite_zero(&ks, &c)?;
            if let Some(p) = composite {
                eprintln!("composite nonzero at {p:?}");
            }
            Outcome::new(
                text,
                json!({"terms": terms, "composite_zero": composite.is_none()}),
            )
            .verdict(composite.is_none())
        }
        Cmd::Nass {
            input,
            vertex,
            test_set,
        } => {
            let bq = load(&input.file, field)?;
            let ks = KoszulSetting::new(&bq)?;
            let i = bq.quiver.vertex(vertex)?;
            let c = koszul_xi(&ks, i)?;
            let nv = bq.quiver.num_vertices();
            let objects: Vec<usize> = if test_set == "all" {
                (0..nv).collect()
            } else if let Some(q) = test_set.strip_prefix("mature:") {
                let q: usize = q
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad q `{q}`")))?;
                let bad: BTreeSet<usize> = obstructed_objects(&ks, i, q)?
                    .into_iter()
                    .map(|(x, _)| x)
                    .collect();
                (0..nv).filter(|x| !bad.contains(x)).collect()
            } else {
                vertices(&bq, test_set)?
            };
            let r = verify_n_almost_split(&ks, &c, &objects)?;
            let q = &bq.quiver;
            let failures: Vec<Value> = r
                .failures
                .iter()
                .map(|f| json!({"object": q.vertex_name(f.object), "side": format!("{:?}", f.side), "position": f.position}))
                .collect();
            let mut text = format!(
                "tested {} objects: {}\n",
                r.tested,
                if r.passed() { "pass" } else { "FAIL" }
            );
            if let Some(p) = r.composite {
                text += &format!("  composite nonzero at {p:?}\n");
            }
            for f in &r.failures {
                text += &format!(
                    "  {} {:?} side, position {}\n",
                    q.vertex_name(f.object),
                    f.side,
                    f.position
                );
            }
            Outcome::new(text, json!({"passed": r.passed(), "tested": r.tested, "composite_zero": r.composite.is_none(), "failures": failures}))
                .verdict(r.passed())
        }
        Cmd::Ktype {
            input,
            trivext,
            twist: t,
        } => {
            let mut bq = load(&input.file, field)?;
            if *trivext {
                bq = returning_arrow_quiver(&bq, &twist(*t))?.bound;
            }
            let cutoff = cli.cutoff.unwrap_or(6);
            let r = koszul_type(&bq, cutoff)?;
            let mut text = format!("loewy length {}\n", r.p + 1);
            for (k, (lo, hi)) in r.steps.iter().enumerate() {
                let pure = *lo == k && *hi == k;
                text += &format!(
                    "step {k}: degrees {lo}..{hi}{}\n",
                    if pure { "" } else { " (impure)" }
                );
            }
            text += &match r.q_hat {
                None => "pure through the end of the resolution\n".to_string(),
                Some(q) if q == cutoff && r.steps.len() == cutoff + 1 => {
                    format!("purity verified to step {q} (q >= {q})\n")
                }
                Some(q) => format!("q = {q}\n"),
            };
            Outcome::new(
                text,
                json!({"p": r.p, "steps": r.steps, "q_hat": r.q_hat, "terminated": r.terminated}),
            )
        }
        Cmd::Closure {
            input,
            n,
            dir,
            budget,
        } => {
            let bq = load(&input.file, field)?;
            let alg = RepAlgebra::new(&bq)?;
            let c = rep::closure(&alg, *n, (*dir).into(), *budget)?;
            let q = &bq.quiver;
            let mut text = String::new();
            let mut members = Vec::new();
            for m in &c.members {
                text += &format!(
                    "({}, {}): {:?}\n",
                    q.vertex_name(m.vertex),
                    m.step,
                    m.rep.dims
                );
                members.push(
                    json!({"vertex": q.vertex_name(m.vertex), "step": m.step, "dims": m.rep.dims}),
                );
            }
            text += &format!(
                "{} members{}\n",
                c.members.len(),
                if c.terminated { "" } else { ", budget reached" }
            );
            let mut out = Outcome::new(
                text,
                json!({"members": members, "terminated": c.terminated}),
            );
            if cli.dot {
                let reps: Vec<rep::Rep> = c.members.iter().map(|m| m.rep.clone()).collect();
                let table = rep::radical_table(&alg, &reps)?;
                out = out.dot(ar_dot(&bq, &c, &table));
            }
            out
        }
        Cmd::Compare {
            input,
            n,
            dir,
            budget,
            base_change,
        } => {
            let bq = load(&input.file, field)?;
            let alg = RepAlgebra::new(&bq)?;
            let c = rep::closure(&alg, *n, (*dir).into(), *budget)?;
            let reps: Vec<rep::Rep> = c.members.iter().map(|m| m.rep.clone()).collect();
            let table = rep::radical_table(&alg, &reps)?;
            let r = rep::compare_with_prediction(&bq, &c, &table, *budget)?;
            let orlov = rep::orlov_violation(&bq, &c, &table)?;
            let m = reps.len();
            let stable = if *base_change {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                let moved: Vec<rep::Rep> = reps
                    .iter()
                    .map(|m| m.random_base_change(alg.quiver(), &mut rng))
                    .collect();
                let moved_table = rep::radical_table(&alg, &moved)?;
                (0..m).all(|x| {
                    (0..m).all(|y| moved_table.arrow_count(x, y) == table.arrow_count(x, y))
                })
            } else {
                true
            };
            let mismatches: Vec<&String> = [
                &r.vertex_mismatch,
                &r.arrow_mismatch,
                &r.translation_mismatch,
                &r.relation_mismatch,
                &r.hom_mismatch,
            ]
            .into_iter()
            .flatten()
            .collect();
            let ok = r.passed() && orlov.is_none() && stable;
            let mut text = format!(
                "{} members, {} predicted vertices\n",
                m, r.predicted_vertices
            );
            for s in &mismatches {
                text += &format!("  mismatch: {s}\n");
            }
            if let Some((x, y)) = orlov {
                text += &format!(
                    "  degree order violated by {} -> {}\n",
                    c.members[x].rep.label, c.members[y].rep.label
                );
            }
            if !stable {
                text += "  arrow counts changed under base change\n";
            }
            text += if ok {
                "isomorphic\n"
            } else {
                "not isomorphic\n"
            };
            Outcome::new(
                text,
                json!({"passed": ok, "members": m, "predicted": r.predicted_vertices, "mismatches": mismatches, "orlov": orlov.is_none(), "base_change_stable": stable}),
            )
            .dot(ar_dot(&bq, &c, &table))
            .verdict(ok)
        }
        Cmd::Iyama { input, l, lp } => {
            let bq = load(&input.file, field)?;
            let alg = RepAlgebra::new(&bq)?;
            let r = rep::iyama_check(
                &alg,
                *l,
                *lp,
                cli.cutoff.unwrap_or(bq.quiver.num_vertices() + l + lp + 2),
            )?;
            let mut text = String::new();
            for row in &r.rows {
                text += &format!(
                    "I{}: {:?} flat dimension {}\n",
                    row.step, row.multiplicities, row.flat_dimension
                );
            }
            text += &format!(
                "({}, {}) condition {}\n",
                l,
                lp,
                if r.holds { "holds" } else { "fails" }
            );
            let rows: Vec<Value> =
                r.rows.iter().map(|x| json!({"step": x.step, "multiplicities": x.multiplicities, "flat_dimension": x.flat_dimension})).collect();
            Outcome::new(text, json!({"holds": r.holds, "rows": rows})).verdict(r.holds)
        }
        Cmd::Probe { input, n, budget } => {
            let bq = load(&input.file, field)?;
            let r = rep::n_rep_infinite_probe(&bq, *n, *budget)?;
            let text = format!(
                "{} members; translates nonzero through budget: {}; prediction matches: {}\n",
                r.members, r.all_nonzero, r.compare_passed
            );
            Outcome::new(text, json!({"members": r.members, "all_nonzero": r.all_nonzero, "compare_passed": r.compare_passed, "positive": r.positive()}))
                .verdict(r.positive())
        }
    })
}

fn ar_dot(bq: &BoundQuiver, c: &rep::ClosureResult, table: &rep::RadicalTable) -> String {
    let ar = rep::ar_quiver(c, table);
    let q = &bq.quiver;
    let mut s = String::from("digraph ar {\n  rankdir=LR;\n");
    for (k, m) in c.members.iter().enumerate() {
        let dims: Vec<String> = m.rep.dims.iter().map(|d| d.to_string()).collect();
        s += &format!(
            "  m{k} [label=\"({}, {})\\n{}\"];\n",
            q.vertex_name(m.vertex),
            m.step,
            dims.join(" ")
        );
    }
    for (&(x, y), &d) in &ar.arrows {
        for _ in 0..d {
            s += &format!("  m{x} -> m{y};\n");
        }
    }
    for (x, y) in &ar.translation {
        s += &format!("  m{x} -> m{y} [style=dotted, arrowhead=none, constraint=false];\n");
    }
    s += "}\n";
    s
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Io(_)
        | Error::InvalidArgument(_)
        | Error::InvalidField(_)
        | Error::UnknownVertex(_)
        | Error::UnknownArrow(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let field = match Field::parse(&cli.field) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.cutoff == Some(0) {
        eprintln!("error: cutoff must be positive");
        return ExitCode::from(2);
    }
    match run(&cli, field) {
        Ok(out) => {
            let body = if let (true, Some(dot)) = (cli.dot, &out.dot) {
                dot.clone()
            } else if cli.json {
                serde_json::to_string_pretty(&out.json).unwrap() + "\n"
            } else {
                out.text
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
