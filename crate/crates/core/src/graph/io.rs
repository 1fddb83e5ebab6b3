//! Plain-text edge list format.
//!
//! ```text
//! n m
//! u v        (m lines, 0-indexed)
//! bipartition: 0101...   (optional, length n)
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

impl Graph {
    pub fn to_edgelist(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n(), self.num_edges());
        for &(u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        if let Some(side) = self.bipartition() {
            let bits: String = side.iter().map(|&s| if s { '1' } else { '0' }).collect();
            let _ = writeln!(out, "bipartition: {bits}");
        }
        out
    }

    pub fn read_edgelist(path: impl AsRef<Path>) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }

    pub fn write_edgelist(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_edgelist())?;
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (line_no, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input".into(),
        })?;
        let [n, m] = parse_pair(header, line_no)?;

        let mut edges = Vec::with_capacity(m);
        let mut seen = HashSet::with_capacity(m);
        for _ in 0..m {
            let (line, text) = lines.next().ok_or(Error::Parse {
                line: line_no,
                message: format!("header promises {m} edges, found {}", edges.len()),
            })?;
            let [u, v] = parse_pair(text, line)?;
            if u >= n || v >= n {
                return Err(parse_err(line, format!("vertex out of range 0..{n}")));
            }
            if u == v {
                return Err(parse_err(line, format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(parse_err(line, format!("duplicate edge ({u}, {v})")));
            }
            edges.push((u, v));
        }

        let mut graph = Graph::from_edges(n, edges)?;
        if let Some((line, text)) = lines.next() {
            let bits = text
                .strip_prefix("bipartition:")
                .ok_or_else(|| parse_err(line, "unexpected trailing content"))?
                .trim();
            let side = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(parse_err(line, format!("bad bipartition character {c:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            graph = graph
                .with_bipartition(side)
                .map_err(|e| parse_err(line, e.to_string()))?;
            if let Some((line, _)) = lines.next() {
                return Err(parse_err(line, "content after bipartition line"));
            }
        }
        Ok(graph)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_pair(text: &str, line: usize) -> Result<[usize; 2]> {
    let mut it = text.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|_| parse_err(line, format!("expected a non-negative integer, got {t:?}")))
    });
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok([a?, b?]),
        _ => Err(parse_err(line, "expected two integers")),
    }
}
