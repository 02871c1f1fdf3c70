//! Graph file formats: graph6 and the DIMACS-like edge list.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::Graph;

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes one graph6 line.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    parse_graph6_at(line, 1)
}

fn parse_graph6_at(line: &str, lineno: usize) -> Result<Graph> {
    let mut text = line.trim_end_matches(['\r', '\n']);
    if let Some(rest) = text.strip_prefix(GRAPH6_HEADER) {
        text = rest;
    }
    let bytes = text.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::parse(lineno, "graph6 byte outside 63..=126"));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::parse(lineno, "empty graph6 line")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::parse(lineno, "truncated graph6 size"));
            }
            let n = rest[..6]
                .iter()
                .fold(0u64, |acc, &b| (acc << 6) | u64::from(b - 63));
            (n as usize, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::parse(lineno, "truncated graph6 size"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
            (n, &rest[3..])
        }
        [first, rest @ ..] => (usize::from(first - 63), rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::parse(
            lineno,
            format!(
                "graph6 body has {} bytes, expected {expected} for n = {n}",
                body.len()
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n as u32 {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).map_err(|e| Error::parse(lineno, e.to_string()))
}

/// Encodes a graph as graph6 (no header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n as u32 {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Streams `(graph6 text, graph)` pairs from a reader, one graph per line.
/// Blank lines are skipped.
pub struct Graph6Reader<R> {
    reader: R,
    line: usize,
    buf: String,
}

impl<R: BufRead> Graph6Reader<R> {
    pub fn new(reader: R) -> Self {
        Graph6Reader {
            reader,
            line: 0,
            buf: String::new(),
        }
    }
}

impl<R: BufRead> Iterator for Graph6Reader<R> {
    type Item = Result<(String, Graph)>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.reader.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(e.into())),
            }
            self.line += 1;
            let text = self.buf.trim();
            if text.is_empty() {
                continue;
            }
            let text = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text).to_string();
            return Some(parse_graph6_at(&text, self.line).map(|g| (text, g)));
        }
    }
}

/// Parses the edge-list format: `p <n> <edge-count>` then `e <u> <v>` lines
/// with 0-based endpoints. Lines starting with `c` are comments.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["p", n, m] | ["p", "edge", n, m] if header.is_none() => {
                let n = n
                    .parse()
                    .map_err(|_| Error::parse(lineno, "vertex count is not an integer"))?;
                let m = m
                    .parse()
                    .map_err(|_| Error::parse(lineno, "edge count is not an integer"))?;
                header = Some((n, m));
            }
            ["e", u, v] => {
                let (n, _) = header.ok_or_else(|| Error::parse(lineno, "edge before `p` line"))?;
                let u: u32 = u
                    .parse()
                    .map_err(|_| Error::parse(lineno, "endpoint is not an integer"))?;
                let v: u32 = v
                    .parse()
                    .map_err(|_| Error::parse(lineno, "endpoint is not an integer"))?;
                if u as usize >= n || v as usize >= n {
                    return Err(Error::parse(
                        lineno,
                        format!("endpoint out of range 0..{n}"),
                    ));
                }
                if u == v {
                    return Err(Error::parse(lineno, "self-loop"));
                }
                edges.push((u, v));
            }
            _ => return Err(Error::parse(lineno, format!("unrecognised line `{line}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(1, "missing `p <n> <edge-count>` line"))?;
    if edges.len() != m {
        return Err(Error::parse(
            0,
            format!("header declares {m} edges but {} were listed", edges.len()),
        ));
    }
    let g = Graph::from_edges(n, edges)?;
    if g.edge_count() != m {
        return Err(Error::parse(0, "duplicate edges in edge list"));
    }
    Ok(g)
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}
