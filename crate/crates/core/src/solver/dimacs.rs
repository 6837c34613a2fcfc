//! DIMACS clique format: `p edge V E` then `e u v` lines, 1-indexed.

use std::fmt::Write;

use super::graph::CliqueGraph;
use crate::error::{Error, Result};

pub fn to_dimacs(g: &CliqueGraph, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "c {line}");
        }
    }
    let _ = writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn parse_dimacs(text: &str) -> Result<CliqueGraph> {
    let mut graph: Option<CliqueGraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let err = |field: usize, message: String| Error::Parse {
            line,
            field,
            message,
        };
        let num = |field: usize| -> Result<usize> {
            let tok = fields
                .get(field)
                .ok_or_else(|| err(field + 1, "missing field".into()))?;
            tok.parse()
                .map_err(|e| err(field + 1, format!("`{tok}`: {e}")))
        };
        match fields.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if graph.is_some() {
                    return Err(err(1, "duplicate problem line".into()));
                }
                if fields.get(1) != Some(&"edge") && fields.get(1) != Some(&"col") {
                    return Err(err(2, "expected `p edge V E`".into()));
                }
                graph = Some(CliqueGraph::new(num(2)?));
            }
            Some("e") => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| err(1, "edge before problem line".into()))?;
                let (u, v) = (num(1)?, num(2)?);
                if u == 0 || v == 0 {
                    return Err(err(2, "vertices are 1-indexed".into()));
                }
                g.add_edge(u - 1, v - 1)
                    .map_err(|e| err(2, e.to_string()))?;
            }
            Some(other) => return Err(err(1, format!("unknown line type `{other}`"))),
        }
    }
    graph.ok_or(Error::Parse {
        line: 1,
        field: 1,
        message: "no problem line".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::build_product_graph;

    #[test]
    fn round_trip_petersen() {
        let g = build_product_graph(5, 2, 1).unwrap();
        let text = to_dimacs(&g, Some("petersen"));
        assert!(text.starts_with("c petersen\np edge 10 15\n"));
        let h = parse_dimacs(&text).unwrap();
        assert_eq!(h.vertex_count(), 10);
        assert!(g.edges().eq(h.edges()));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_dimacs("e 1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 1 x\n"),
            Err(Error::Parse {
                line: 2,
                field: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 0 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_dimacs("c nothing\n").is_err());
    }
}
