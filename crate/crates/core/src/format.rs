//! Line-oriented text format for hypergraphs.
//!
//! ```text
//! # K_2^{1,2}
//! n 2
//! e 1
//! e 2
//! e 1 2
//! ```
//!
//! The first non-comment line is `n <count>`; every following line is
//! `e <v1> … <vk>` with distinct 1-based labels. `#` starts a comment.
//! Serialisation emits edges by size, then lexicographically.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};

pub fn parse(text: &str) -> Result<Hypergraph> {
    let mut graph: Option<Hypergraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let tag = tokens.next().unwrap();
        match (tag, graph.as_mut()) {
            ("n", None) => {
                let count = tokens
                    .next()
                    .ok_or_else(|| Error::parse(line_no, "missing vertex count"))?;
                let n: usize = count
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad vertex count {count:?}")))?;
                if tokens.next().is_some() {
                    return Err(Error::parse(line_no, "trailing tokens after vertex count"));
                }
                if n == 0 {
                    return Err(Error::parse(line_no, "vertex count must be positive"));
                }
                graph = Some(Hypergraph::new(n)?);
            }
            ("n", Some(_)) => return Err(Error::parse(line_no, "repeated `n` line")),
            ("e", None) => return Err(Error::parse(line_no, "edge before `n` line")),
            ("e", Some(g)) => {
                let mut verts = Vec::new();
                for tok in tokens {
                    let label: usize = tok
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad vertex label {tok:?}")))?;
                    if label == 0 || label > g.n() {
                        return Err(Error::parse(
                            line_no,
                            format!("vertex {label} out of range 1..={}", g.n()),
                        ));
                    }
                    verts.push(label - 1);
                }
                if verts.is_empty() {
                    return Err(Error::parse(line_no, "empty edge"));
                }
                let edge = Edge::new(verts).map_err(|e| Error::parse(line_no, e.to_string()))?;
                if g.contains_edge(&edge) {
                    return Err(Error::parse(line_no, format!("duplicate edge {edge}")));
                }
                g.insert_edge(edge)
                    .map_err(|e| Error::parse(line_no, e.to_string()))?;
            }
            (other, _) => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown directive {other:?}"),
                ))
            }
        }
    }
    graph.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing `n` line"))
}

pub fn serialize(h: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", h.n()).unwrap();
    for e in h.edges() {
        out.push('e');
        for v in e.vertices() {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_file(path: impl AsRef<std::path::Path>) -> Result<Hypergraph> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write_file(path: impl AsRef<std::path::Path>, h: &Hypergraph) -> Result<()> {
    std::fs::write(path, serialize(h))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::complete;

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse("n 2\ne 1\ne 2\ne 1 2").unwrap(),
            complete(2, &[1, 2]).unwrap()
        );
        assert_eq!(
            parse("n 3\ne 1 2\ne 2 3\ne 1 3").unwrap(),
            complete(3, &[2]).unwrap()
        );
    }

    #[test]
    fn comments_and_order() {
        let h = parse("# header\n\nn 3  # three\ne 3 1\ne 2 # singleton\n").unwrap();
        assert_eq!(serialize(&h), "n 3\ne 2\ne 1 3\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("n 2\ne 3", 2),
            ("n 2\ne 1\ne 1", 3),
            ("n 2\ne 1 1", 2),
            ("n 2\ne", 2),
            ("e 1\nn 2", 1),
            ("n 0", 1),
            ("n x", 1),
            ("n 2\nx 1", 2),
            ("n 2\nn 3", 2),
            ("", 1),
        ];
        for (text, line) in cases {
            match parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: expected parse error, got {other:?}"),
            }
        }
    }
}
