//! Graph file formats: JSON, plain edge lists and DOT export.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// `{"n": 5, "edges": [[1, 2], ...]}` with 1-based vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Self> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.n, &edges)
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl Graph {
    pub fn from_json_str(s: &str) -> Result<Graph> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Graph::try_from(j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&GraphJson::from(self.clone())).expect("graph serializes")
    }

    /// Parses an edge list: one `i j` pair per line, `#` starts a comment.
    /// The vertex count is the largest label that occurs.
    pub fn parse_edge_list(s: &str) -> Result<Graph> {
        let mut edges = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let mut fields = Vec::new();
            let mut offset = 0;
            for tok in line.split_whitespace() {
                let col = line[offset..].find(tok).unwrap() + offset;
                offset = col + tok.len();
                fields.push((col + 1, tok));
            }
            if fields.is_empty() {
                continue;
            }
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    column: fields.get(2).map_or(fields[0].0, |f| f.0),
                    message: format!("expected two vertices, found {} fields", fields.len()),
                });
            }
            let mut pair = [0usize; 2];
            for (k, (col, tok)) in fields.iter().enumerate() {
                pair[k] = match tok.parse::<usize>() {
                    Ok(v) if v >= 1 => v,
                    _ => {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            column: *col,
                            message: format!("`{tok}` is not a positive vertex label"),
                        })
                    }
                };
            }
            edges.push((pair[0], pair[1]));
        }
        let n = edges.iter().map(|&(i, j)| i.max(j)).max().unwrap_or(0);
        Graph::from_edges(n, &edges)
    }

    /// Parses JSON when the first non-blank character is `{`, otherwise an
    /// edge list.
    pub fn parse(s: &str) -> Result<Graph> {
        if s.trim_start().starts_with('{') {
            Graph::from_json_str(s)
        } else {
            Graph::parse_edge_list(s)
        }
    }

    /// DOT rendering; `names` optionally labels vertex `v` with `names[v-1]`.
    pub fn to_dot(&self, names: Option<&[String]>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 1..=self.n() {
            match names {
                Some(ns) => out.push_str(&format!("  {v} [label=\"{}\"];\n", ns[v - 1])),
                None => out.push_str(&format!("  {v};\n")),
            }
        }
        for (i, j) in self.edges() {
            out.push_str(&format!("  {i} -- {j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_edge_list_agree() {
        let a = Graph::parse(r#"{"n": 4, "edges": [[1,2],[2,3],[3,4]]}"#).unwrap();
        let b = Graph::parse("# path\n1 2\n2 3  # middle\n\n3 4\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(Graph::from_json_str(&a.to_json_string()).unwrap(), a);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match Graph::parse_edge_list("1 2\n2 x\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        match Graph::parse_edge_list("1 2 3\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("{other:?}"),
        }
        match Graph::parse("{\"n\": 3,\n \"edges\": [[1,2],}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            Graph::parse(r#"{"n": 2, "edges": [[1,3]]}"#),
            Err(Error::InvalidVertex { .. })
        ));
    }

    #[test]
    fn dot_export() {
        let g = Graph::path(3).unwrap();
        let dot = g.to_dot(None);
        assert!(dot.contains("1 -- 2;"));
        assert!(dot.contains("2 -- 3;"));
    }
}
