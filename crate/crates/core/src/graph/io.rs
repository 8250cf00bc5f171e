use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, VertexId};

/// JSON shape of a graph: `{"n": 4, "edges": [[0, 1], ...], "labels": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GraphJson {
    pub fn into_graph(self) -> Result<Graph, GraphError> {
        let g = Graph::new(self.n, &self.edges)?;
        match self.labels {
            Some(labels) => g.with_labels(labels),
            None => Ok(g),
        }
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse { line, message: message.into() }
}

/// Parses an edge list: a header line `n m` followed by `m` lines `u v`.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or_else(|| parse_error(1, "missing header `n m`"))?;
    let pair = |line: usize, l: &str| -> Result<(usize, usize), GraphError> {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_error(line, format!("expected two integers, found `{l}`")));
        }
        let parse = |s: &str| s.parse::<usize>().map_err(|_| parse_error(line, format!("`{s}` is not a vertex id")));
        Ok((parse(fields[0])?, parse(fields[1])?))
    };
    let (n, m) = pair(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, l) in lines {
        let (u, v) = pair(line, l)?;
        for id in [u, v] {
            if id >= n {
                return Err(parse_error(line, format!("vertex {id} out of range for {n} vertices")));
            }
        }
        if u == v {
            return Err(parse_error(line, format!("self-loop at vertex {u}")));
        }
        edges.push((u, v));
        last_line = line;
    }
    if edges.len() != m {
        return Err(parse_error(last_line, format!("header promises {m} edges, found {}", edges.len())));
    }
    Graph::new(n, &edges)
}

pub fn parse_graph_json(text: &str) -> Result<Graph, GraphError> {
    let parsed: GraphJson = serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))?;
    parsed.into_graph()
}

/// Parses either format, choosing JSON when the text starts with `{`.
pub fn parse_graph_text(text: &str) -> Result<Graph, GraphError> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_edge_list(text)
    }
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn to_json(g: &Graph) -> GraphJson {
    GraphJson { n: g.vertex_count(), edges: g.edges().collect(), labels: g.labels().map(<[String]>::to_vec) }
}
