//! Line-oriented text formats for graphs and walks.
//!
//! ```text
//! graph 3
//! edge 0 1 1.5
//! edge 1 2 0.001
//! label 0 alpha
//! ```
//!
//! A walk file holds a single `walk v0 v1 ...` line. Blank lines and lines
//! starting with `#` are ignored in both formats.

use std::fmt::Write as _;

use crate::graph::{Graph, GraphBuilder, GraphError, VertexId, Walk};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("missing `graph <N>` header")]
    MissingHeader,
    #[error("missing `walk` line")]
    MissingWalk,
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
}

fn syntax(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        reason: reason.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_vertex(tok: Option<&str>, line: usize) -> Result<VertexId, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, "missing vertex id"))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("bad vertex id `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut builder: Option<GraphBuilder> = None;
    for (line, content) in content_lines(text) {
        let mut toks = content.split_whitespace();
        let keyword = toks.next().unwrap_or_default();
        match (keyword, builder.as_mut()) {
            ("graph", None) => {
                let n = parse_vertex(toks.next(), line)?;
                if toks.next().is_some() {
                    return Err(syntax(line, "trailing tokens after vertex count"));
                }
                builder = Some(GraphBuilder::new(n));
            }
            ("graph", Some(_)) => return Err(syntax(line, "duplicate `graph` header")),
            (_, None) => return Err(ParseError::MissingHeader),
            ("edge", Some(b)) => {
                let u = parse_vertex(toks.next(), line)?;
                let v = parse_vertex(toks.next(), line)?;
                let w_tok = toks.next().ok_or_else(|| syntax(line, "missing weight"))?;
                let w: Weight = w_tok
                    .parse()
                    .map_err(|e| syntax(line, format!("bad weight: {e}")))?;
                if toks.next().is_some() {
                    return Err(syntax(line, "trailing tokens after weight"));
                }
                b.add_edge(u, v, w)
                    .map_err(|source| ParseError::Graph { line, source })?;
            }
            ("label", Some(b)) => {
                let v = parse_vertex(toks.next(), line)?;
                let rest: Vec<&str> = toks.collect();
                if rest.is_empty() {
                    return Err(syntax(line, "missing label text"));
                }
                b.set_label(v, rest.join(" "))
                    .map_err(|source| ParseError::Graph { line, source })?;
            }
            (other, Some(_)) => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    builder.map(GraphBuilder::build).ok_or(ParseError::MissingHeader)
}

/// Parses the vertex sequence of a walk file without validating it.
pub fn parse_walk_vertices(text: &str) -> Result<Vec<VertexId>, ParseError> {
    let mut found = None;
    for (line, content) in content_lines(text) {
        let mut toks = content.split_whitespace();
        if toks.next() != Some("walk") {
            return Err(syntax(line, "expected `walk v0 v1 ...`"));
        }
        if found.is_some() {
            return Err(syntax(line, "more than one `walk` line"));
        }
        let vs = toks
            .map(|t| parse_vertex(Some(t), line))
            .collect::<Result<Vec<_>, _>>()?;
        if vs.is_empty() {
            return Err(syntax(line, "walk has no vertices"));
        }
        found = Some(vs);
    }
    found.ok_or(ParseError::MissingWalk)
}

/// Parses and validates a walk against `graph`.
pub fn parse_walk(graph: &Graph, text: &str) -> Result<Walk, ParseError> {
    let vertices = parse_walk_vertices(text)?;
    let line = content_lines(text).next().map_or(1, |(l, _)| l);
    Walk::new(graph, vertices).map_err(|source| ParseError::Graph { line, source })
}

pub fn write_graph(graph: &Graph) -> String {
    let mut out = format!("graph {}\n", graph.vertex_count());
    for (u, v, w) in graph.edges() {
        let _ = writeln!(out, "edge {u} {v} {w}");
    }
    for v in 0..graph.vertex_count() {
        if let Some(l) = graph.label(v) {
            let _ = writeln!(out, "label {v} {l}");
        }
    }
    out
}

pub fn write_walk(walk: &Walk) -> String {
    let mut out = String::from("walk");
    for v in walk.vertices() {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
    out
}

/// Graphviz rendering with labels and weights, for inspection only.
pub fn write_dot(graph: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..graph.vertex_count() {
        match graph.label(v) {
            Some(l) => {
                let _ = writeln!(out, "  {v} [label=\"{v}:{}\"];", l.replace('"', "'"));
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for (u, v, w) in graph.edges() {
        let _ = writeln!(out, "  {u} -- {v} [label=\"{w}\"];");
    }
    out.push_str("}\n");
    out
}
