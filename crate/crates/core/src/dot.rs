//! Graphviz output.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::quiver::BoundQuiver;

#[derive(Clone, Debug, Default)]
pub struct DotOptions {
    /// Slice coordinate per vertex; vertices sharing `t` are ranked together, left to right.
    pub slices: Option<Vec<i64>>,
    /// Arrows drawn in the returning style.
    pub returning: Vec<usize>,
    /// Extra node labels, e.g. dimension vectors.
    pub notes: BTreeMap<usize, String>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn emit_dot(bq: &BoundQuiver, opts: &DotOptions) -> String {
    let q = &bq.quiver;
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(&q.name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for v in 0..q.num_vertices() {
        let label = match opts.notes.get(&v) {
            Some(n) => format!("{}\\n{n}", q.vertex_name(v)),
            None => q.vertex_name(v).to_string(),
        };
        writeln!(out, "  v{v} [label={}];", quote(&label)).unwrap();
    }
    if let Some(slices) = &opts.slices {
        let mut by_t: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (v, &t) in slices.iter().enumerate() {
            by_t.entry(t).or_default().push(v);
        }
        for (t, vs) in by_t {
            let names: Vec<String> = vs.iter().map(|v| format!("v{v}")).collect();
            writeln!(
                out,
                "  subgraph {} {{ rank=same; {}; }}",
                quote(&format!("slice {t}")),
                names.join("; ")
            )
            .unwrap();
        }
    }
    for (k, a) in q.arrows().iter().enumerate() {
        let style = if opts.returning.contains(&k) {
            ", class=\"returning\", color=red, style=dashed"
        } else {
            ""
        };
        writeln!(
            out,
            "  v{} -> v{} [label={}{style}];",
            a.source,
            a.target,
            quote(&a.name)
        )
        .unwrap();
    }
    if let Some(t) = &bq.translation {
        for (&x, &y) in &t.tau {
            writeln!(
                out,
                "  v{x} -> v{y} [style=dotted, arrowhead=none, constraint=false];"
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::scalar::Field;

    #[test]
    fn empty_quiver() {
        let bq = BoundQuiver::new(
            Quiver::new("E", vec![], vec![]).unwrap(),
            Field::Rational,
            vec![],
        )
        .unwrap();
        assert_eq!(
            emit_dot(&bq, &DotOptions::default()),
            "digraph \"E\" {\n  rankdir=LR;\n}\n"
        );
    }
}
