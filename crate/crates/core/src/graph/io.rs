//! Plain edge-list text format and the JSON form used in reports.
//!
//! Text format: a header line `n m`, then `m` lines `u v`. Blank lines and
//! lines starting with `#` are ignored. Directed graphs use the same
//! format; the caller says how to interpret it.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{Graph, Vertex};
use crate::error::{Error, Result};

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn read_edge_list<R: BufRead>(input: R, directed: bool) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums = parse_pair(line).map_err(|message| Error::Parse { line: i + 1, message })?;
        if header.is_none() {
            header = Some(nums);
        } else {
            edges.push(nums);
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        message: "missing `n m` header".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            message: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, edges, directed)
}

fn parse_pair(line: &str) -> std::result::Result<(usize, usize), String> {
    let mut it = line.split_whitespace();
    let mut next = || -> std::result::Result<usize, String> {
        it.next()
            .ok_or_else(|| "expected two integers".to_string())?
            .parse::<usize>()
            .map_err(|e| e.to_string())
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err("trailing tokens".into());
    }
    Ok((a, b))
}

/// Serialized shape of a [`Graph`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertex_count: usize,
    pub directed: bool,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> GraphJson {
        GraphJson {
            vertex_count: g.vertex_count(),
            directed: g.is_directed(),
            edges: g.edges().collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        Graph::from_edges(j.vertex_count, j.edges, j.directed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::petersen_graph;

    #[test]
    fn edge_list_round_trip() {
        let g = petersen_graph();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("10 15\n"));
        let back = read_edge_list(&buf[..], false).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn edge_list_errors() {
        assert!(read_edge_list("3 2\n0 1\n".as_bytes(), false).is_err());
        assert!(read_edge_list("3 1\n0 x\n".as_bytes(), false).is_err());
        assert!(read_edge_list("# only a comment\n".as_bytes(), false).is_err());
        let g = read_edge_list("# tri\n3 3\n0 1\n\n1 2\n2 0\n".as_bytes(), false).unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn json_round_trip() {
        let g = crate::graph::blowup_cycle(3, 2, true).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"vertex_count":2,"directed":false,"edges":[[0,0]]}"#).is_err());
    }
}
