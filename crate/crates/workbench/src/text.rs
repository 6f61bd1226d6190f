//! Edge-list input and output, DOT export.
//!
//! Edge-list format: a first line `n <count>`, then one `u v` pair per line
//! with 0-based indices. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use koszulgraph_core::{Graph, GraphError};

use crate::classify::{Certificate, Classification};
use crate::error::WorkbenchError;

pub fn parse_edgelist(text: &str) -> Result<Graph, WorkbenchError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let bad = |line: usize, reason: String| WorkbenchError::MalformedEdgeList { line, reason };
    let (first, header) = lines.next().ok_or_else(|| bad(1, "missing `n <count>` header".into()))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", count] => count
            .parse::<usize>()
            .map_err(|e| bad(first, format!("vertex count {count:?}: {e}")))?,
        _ => return Err(bad(first, format!("expected `n <count>`, got {header:?}"))),
    };

    Graph::empty(n).map_err(|source| WorkbenchError::EdgeList { line: first, source })?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [u, v] = fields.as_slice() else {
            return Err(bad(line, format!("expected `u v`, got {l:?}")));
        };
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| bad(line, format!("vertex {s:?}: {e}")))
        };
        let (u, v) = (parse(u)?, parse(v)?);
        let source = if u.max(v) >= n {
            Some(GraphError::IndexOutOfRange { index: u.max(v), n })
        } else if u == v {
            Some(GraphError::LoopEdge(u))
        } else {
            None
        };
        if let Some(source) = source {
            return Err(WorkbenchError::EdgeList { line, source });
        }
        edges.push((u, v));
    }
    Ok(Graph::from_edges(n, edges).expect("every edge validated above"))
}

pub fn emit_edgelist(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Graphviz DOT. With a classification, witness vertices and the edges
/// between them are drawn red and the verdict becomes the graph label.
pub fn emit_dot(g: &Graph, classification: Option<&Classification>) -> String {
    let witness: &[usize] = classification.map_or(&[], |c| c.witness_vertices());
    let mut out = String::from("graph G {\n");
    if let Some(c) = classification {
        let label = match &c.certificate {
            Certificate::Join { .. } => "universally Koszul".to_string(),
            Certificate::Obstruction { pattern, .. } => {
                format!("not universally Koszul (induced {})", pattern.kind)
            }
        };
        let _ = writeln!(out, "  label=\"{label}\";");
    }
    for v in 0..g.vertex_count() {
        if witness.contains(&v) {
            let _ = writeln!(out, "  {v} [color=red, fontcolor=red];");
        } else {
            let _ = writeln!(out, "  {v};");
        }
    }
    for (u, v) in g.edges() {
        if witness.contains(&u) && witness.contains(&v) {
            let _ = writeln!(out, "  {u} -- {v} [color=red];");
        } else {
            let _ = writeln!(out, "  {u} -- {v};");
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, ClassifyOptions};

    #[test]
    fn parse_examples() {
        assert_eq!(parse_edgelist("n 4\n0 1\n1 2\n2 3").unwrap(), Graph::path(4).unwrap());
        assert_eq!(parse_edgelist("n 2").unwrap(), Graph::empty(2).unwrap());
        let err = parse_edgelist("n 2\n0 2").unwrap_err();
        assert!(matches!(
            err,
            WorkbenchError::EdgeList { line: 2, source: GraphError::IndexOutOfRange { index: 2, n: 2 } }
        ));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let line_of = |s: &str| match parse_edgelist(s).unwrap_err() {
            WorkbenchError::MalformedEdgeList { line, .. } | WorkbenchError::EdgeList { line, .. } => line,
            e => panic!("unexpected {e}"),
        };
        assert_eq!(line_of(""), 1);
        assert_eq!(line_of("4\n0 1"), 1);
        assert_eq!(line_of("n 4\n0 1\n\n# c\n1 x"), 5);
        assert_eq!(line_of("n 4\n0 1 2"), 2);
        assert_eq!(line_of("n 4\n3 3"), 2);
        assert_eq!(line_of("n 65"), 1);
    }

    #[test]
    fn comments_and_round_trip() {
        let g = parse_edgelist("# a C4\nn 4\n0 1 # first\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(g, Graph::cycle(4).unwrap());
        assert_eq!(parse_edgelist(&emit_edgelist(&g)).unwrap(), g);
    }

    #[test]
    fn dot_marks_witness() {
        let g = Graph::path(4).unwrap();
        let c = classify(&g, ClassifyOptions::default()).unwrap();
        let dot = emit_dot(&g, Some(&c));
        assert!(dot.contains("0 [color=red"));
        assert!(dot.contains("1 -- 2 [color=red]"));
        assert!(dot.contains("induced P4"));
        let plain = emit_dot(&g, None);
        assert!(!plain.contains("red"));
        assert_eq!(plain.matches("--").count(), 3);
    }
}
