//! Graphviz export of a dual digraph.
//!
//! `E` edges are solid; a pair of opposite edges becomes one double-headed
//! edge. `g` is drawn dotted without arrowheads, a 2-cycle of `g` as a
//! single edge. Output depends only on the digraph, so it is byte-stable.

use std::fmt::Write as _;

use orthodual_core::digraph::Digraph;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DotOptions {
    /// Leave out `E`-loops (every vertex of a reflexive digraph has one).
    pub no_loops: bool,
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            q.push('\\');
        }
        q.push(c);
    }
    q.push('"');
    q
}

pub fn export_dot(name: &str, g: &Digraph, opts: DotOptions) -> String {
    let mut s = String::new();
    writeln!(s, "digraph {} {{", quote(name)).unwrap();
    writeln!(s, "  node [shape=ellipse];").unwrap();
    for x in g.vertices() {
        writeln!(s, "  v{x} [label={}];", quote(g.label(x))).unwrap();
    }
    for (x, y) in g.edges() {
        if x == y {
            if !opts.no_loops {
                writeln!(s, "  v{x} -> v{x};").unwrap();
            }
        } else if g.has_edge(y, x) {
            if x < y {
                writeln!(s, "  v{x} -> v{y} [dir=both];").unwrap();
            }
        } else {
            writeln!(s, "  v{x} -> v{y};").unwrap();
        }
    }
    if let Some(gm) = g.g() {
        for (x, &y) in gm.iter().enumerate() {
            let back = gm[y] == x;
            if x == y || !back {
                writeln!(s, "  v{x} -> v{y} [style=dotted, arrowhead=open];").unwrap();
            } else if x < y {
                writeln!(s, "  v{x} -> v{y} [style=dotted, dir=both, arrowhead=open, arrowtail=open];").unwrap();
            }
        }
    }
    s.push_str("}\n");
    s
}

/// The `E` relation as a 0/1 matrix, row `x`, column `y` is 1 iff `(x, y) ∈ E`.
pub fn edges_table(g: &Digraph) -> String {
    let w = g.labels().iter().map(|l| l.chars().count()).max().unwrap_or(1).max(1);
    let mut s = String::new();
    write!(s, "{:w$}", "E").unwrap();
    for y in g.vertices() {
        write!(s, " {:>w$}", g.label(y)).unwrap();
    }
    s.push('\n');
    for x in g.vertices() {
        write!(s, "{:w$}", g.label(x)).unwrap();
        for y in g.vertices() {
            write!(s, " {:>w$}", u8::from(g.has_edge(x, y))).unwrap();
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use orthodual_core::dual::build_dual;
    use orthodual_core::family::Family;

    #[test]
    fn two_chain() {
        let d = build_dual(&Family::TwoChain.generate()).unwrap();
        let dot = export_dot("two", d.graph(), DotOptions::default());
        assert_eq!(
            dot,
            "digraph \"two\" {\n  node [shape=ellipse];\n  v0 [label=\"1|0\"];\n  v0 -> v0;\n  v0 -> v0 [style=dotted, arrowhead=open];\n}\n"
        );
        let bare = export_dot("two", d.graph(), DotOptions { no_loops: true });
        assert!(!bare.contains("v0 -> v0;"));
    }

    #[test]
    fn boolean_square_has_no_cross_edges() {
        let d = build_dual(&Family::Boolean(2).generate()).unwrap();
        let dot = export_dot("b2", d.graph(), DotOptions::default());
        assert!(!dot.contains("v0 -> v1") && !dot.contains("v1 -> v0"));
        assert_eq!(dot.matches("style=dotted").count(), 2);
    }

    #[test]
    fn benzene_table() {
        let d = build_dual(&Family::Benzene.generate()).unwrap();
        let t = edges_table(d.graph());
        let rows: Vec<&str> = t.lines().collect();
        assert_eq!(rows.len(), 5);
        assert!(rows[1].ends_with("1     0     0     1"));
        assert!(rows[4].ends_with("0     1     1     1"));
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("a\"b\\"), "\"a\\\"b\\\\\"");
    }
}
