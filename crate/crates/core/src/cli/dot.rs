use std::fmt::Write as _;

use crate::kernel::{typecheck, Signature, Term, TypeError};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn label(t: &Term, sig: &Signature) -> Result<String, TypeError> {
    let head = match t {
        Term::Gen(n) => n.clone(),
        Term::Scale(s, _) => format!("scale {s}"),
        Term::Inj(k, _) => format!("inj {k}"),
        Term::Proj(k, _) => format!("proj {k}"),
        other => other.constructor().to_string(),
    };
    Ok(format!("{head}\\n{}", escape(&typecheck(t, sig)?.to_string())))
}

/// The stages of a composite chain, first applied first.
fn stages(t: &Term) -> Vec<&Term> {
    let mut out = Vec::new();
    let mut cur = t;
    while let Term::Compose(g, f) = cur {
        out.push(&**g);
        cur = f;
    }
    out.push(cur);
    out.reverse();
    out
}

struct Writer<'a> {
    sig: &'a Signature,
    next: usize,
    nodes: String,
    edges: String,
}

impl Writer<'_> {
    /// Emit `t` and its subterms in pre-order; returns the id of `t`.
    fn node(&mut self, t: &Term, indent: &str) -> Result<usize, TypeError> {
        let id = self.next;
        self.next += 1;
        writeln!(self.nodes, "{indent}n{id} [label=\"{}\"];", label(t, self.sig)?).expect("write to string");
        let mut kids = Vec::new();
        for c in t.children() {
            let k = self.node(c, indent)?;
            writeln!(self.edges, "  n{id} -> n{k};").expect("write to string");
            kids.push(k);
        }
        if matches!(t, Term::Tensor(..)) {
            let same: Vec<String> = kids.iter().map(|k| format!("n{k};")).collect();
            writeln!(self.edges, "  {{ rank=same; {} }}", same.join(" ")).expect("write to string");
        }
        Ok(id)
    }
}

/// Deterministic Graphviz rendering of `t`: one node per constructor,
/// numbered in pre-order and labeled with its judgment. A top-level
/// composite puts each stage in its own cluster, the first stage applied
/// at the bottom.
pub fn export_dot(t: &Term, sig: &Signature) -> Result<String, TypeError> {
    typecheck(t, sig)?;
    let mut w = Writer { sig, next: 0, nodes: String::new(), edges: String::new() };
    let parts = stages(t);
    if parts.len() == 1 {
        w.node(t, "  ")?;
    } else {
        // spine of binary compositions, then one cluster per stage
        let mut spine = Vec::new();
        let mut cur = t;
        while let Term::Compose(g, f) = cur {
            let id = w.next;
            w.next += 1;
            writeln!(w.nodes, "  n{id} [label=\"{}\"];", label(cur, sig)?).expect("write to string");
            spine.push(id);
            let stage = parts.len() - spine.len() + 1;
            writeln!(w.nodes, "  subgraph cluster_{stage} {{\n    label=\"stage {stage}\";").expect("write to string");
            let g_id = w.node(g, "    ")?;
            w.nodes.push_str("  }\n");
            writeln!(w.edges, "  n{id} -> n{g_id};").expect("write to string");
            if !matches!(**f, Term::Compose(..)) {
                writeln!(w.nodes, "  subgraph cluster_1 {{\n    label=\"stage 1\";").expect("write to string");
                let f_id = w.node(f, "    ")?;
                w.nodes.push_str("  }\n");
                writeln!(w.edges, "  n{id} -> n{f_id};").expect("write to string");
            } else {
                writeln!(w.edges, "  n{id} -> n{};", w.next).expect("write to string");
            }
            cur = f;
        }
    }
    Ok(format!(
        "digraph term {{\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n{}{}}}\n",
        w.nodes, w.edges
    ))
}

/// Number of stage clusters in a DOT rendering.
pub fn stage_count(dot: &str) -> usize {
    dot.matches("subgraph cluster_").count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Object;
    use crate::protocols::{build_teleportation, Setting};

    #[test]
    fn identity_is_one_node() {
        let st = Setting::standard();
        let dot = export_dot(&Term::Id(Object::gen("Q")), &st.sig).unwrap();
        assert_eq!(dot.matches("[label=").count(), 1);
        assert_eq!(stage_count(&dot), 0);
    }

    #[test]
    fn teleportation_has_six_stages() {
        let st = Setting::standard();
        let (_, rhs) = build_teleportation();
        let dot = export_dot(&rhs, &st.sig).unwrap();
        assert_eq!(stage_count(&dot), 6);
        assert_eq!(dot, export_dot(&rhs, &st.sig).unwrap());
        assert_eq!(dot.matches("[label=").count(), rhs.size());
        assert!(dot.contains("stage 6"));
        assert!(export_dot(&Term::gen("nope"), &st.sig).is_err());
    }
}
