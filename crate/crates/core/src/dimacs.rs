//! DIMACS `.col` reading and writing.
//!
//! Vertex indices are 1-based in the file and 0-based in [`Graph`].

use std::fmt::Write as _;

use crate::error::{ParseError, ParseErrorKind};
use crate::graph::Graph;

/// Parses a DIMACS edge file.
///
/// Accepts `c` comment lines, blank lines, exactly one `p edge <n> <m>`
/// problem line (`p col` is accepted as a synonym) and `e <u> <v>` edge
/// lines. The declared edge count is informational only; repeated edges and
/// reversed orientations collapse.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |kind| ParseError {
            line: line_no,
            kind,
        };
        let mut tokens = raw.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if n.is_some() {
                    return Err(err(ParseErrorKind::DuplicateProblemLine));
                }
                let format = tokens.next();
                if !matches!(format, Some("edge" | "col")) {
                    return Err(err(malformed(raw)));
                }
                let vertices = number(tokens.next()).ok_or_else(|| err(malformed(raw)))?;
                number(tokens.next()).ok_or_else(|| err(malformed(raw)))?;
                if tokens.next().is_some() {
                    return Err(err(malformed(raw)));
                }
                n = Some(vertices);
            }
            "e" => {
                let Some(n) = n else {
                    return Err(err(ParseErrorKind::EdgeBeforeProblemLine));
                };
                let u = number(tokens.next()).ok_or_else(|| err(malformed(raw)))?;
                let v = number(tokens.next()).ok_or_else(|| err(malformed(raw)))?;
                if tokens.next().is_some() {
                    return Err(err(malformed(raw)));
                }
                for index in [u, v] {
                    if index == 0 || index > n {
                        return Err(err(ParseErrorKind::IndexOutOfRange { index, n }));
                    }
                }
                if u == v {
                    return Err(err(ParseErrorKind::SelfLoop(u)));
                }
                edges.push((u - 1, v - 1));
            }
            _ => return Err(err(malformed(raw))),
        }
    }

    let Some(n) = n else {
        return Err(ParseError {
            line: text.lines().count().max(1),
            kind: ParseErrorKind::MissingProblemLine,
        });
    };
    // endpoints were range-checked above
    Ok(Graph::new(n, edges).expect("validated edge list"))
}

fn number(token: Option<&str>) -> Option<usize> {
    token?.parse().ok()
}

fn malformed(line: &str) -> ParseErrorKind {
    ParseErrorKind::Malformed(line.trim().to_string())
}

/// Canonical DIMACS text: the problem line followed by edges sorted
/// ascending, each line LF-terminated.
pub fn write_dimacs(graph: &Graph) -> String {
    let mut out = String::with_capacity(16 + graph.m() * 12);
    writeln!(out, "p edge {} {}", graph.n(), graph.m()).unwrap();
    for &(u, v) in graph.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}
