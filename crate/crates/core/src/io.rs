//! Text formats: edge lists, team files and DOT export.
//!
//! Edge list:
//!
//! ```text
//! n m [base]
//! u v
//! ...
//! ```
//!
//! `base` is 0 (default) or 1; with base 1 the endpoints are read as `1..=n`
//! and printed back the same way. Lines starting with `#` and blank lines are
//! ignored. LF and CRLF line endings are both accepted.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::criteria::TeamCandidate;
use crate::error::{Error, Result};
use crate::graph::Graph;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected {what}, found `{tok}`"),
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `n m` header".into(),
    })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() < 2 || toks.len() > 3 {
        return Err(Error::Parse {
            line: hline,
            message: format!("header must be `n m [base]`, found `{header}`"),
        });
    }
    let n = parse_num(toks[0], hline, "vertex count")?;
    let m = parse_num(toks[1], hline, "edge count")?;
    let base = match toks.get(2) {
        None => 0,
        Some(t) => match parse_num(t, hline, "label base")? {
            b @ (0 | 1) => b,
            b => {
                return Err(Error::Parse {
                    line: hline,
                    message: format!("label base must be 0 or 1, found {b}"),
                })
            }
        },
    };

    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected `u v`, found `{body}`"),
            });
        }
        let mut ends = [0usize; 2];
        for (slot, tok) in ends.iter_mut().zip(&toks) {
            let raw = parse_num(tok, line, "vertex label")?;
            if raw < base || raw - base >= n {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex {raw} out of range for n = {n}"),
                });
            }
            *slot = raw - base;
        }
        if ends[0] == ends[1] {
            return Err(Error::Parse {
                line,
                message: format!("self-loop at vertex {}", toks[0]),
            });
        }
        edges.push((ends[0], ends[1]));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hline,
            message: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Ok(Graph::from_edges(n, edges)?.with_label_base(base))
}

/// Canonical edge-list text: sorted edges, `u < v`, trailing newline.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    if g.label_base() == 0 {
        writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    } else {
        writeln!(out, "{} {} {}", g.n(), g.m(), g.label_base()).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v)).unwrap();
    }
    out
}

/// First 16 hex digits of the SHA-256 of the canonical edge list.
pub fn digest(g: &Graph) -> String {
    let hash = Sha256::digest(to_edge_list(g).as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Team file: one vertex label per line; `#` comments and blank lines ignored.
pub fn parse_team(text: &str, g: &Graph) -> Result<TeamCandidate> {
    let mut members = Vec::new();
    for (line, body) in content_lines(text) {
        let raw = parse_num(body, line, "vertex label")?;
        if raw < g.label_base() || raw - g.label_base() >= g.n() {
            return Err(Error::Parse {
                line,
                message: format!("vertex {raw} not in graph"),
            });
        }
        members.push(raw - g.label_base());
    }
    TeamCandidate::new(g, members)
}

pub fn to_team_file(g: &Graph, team: &TeamCandidate) -> String {
    team.members()
        .iter()
        .map(|&v| format!("{}\n", g.label(v)))
        .collect()
}

/// DOT text with vertices and edges in ascending order. Team members carry
/// `team=true` and a fill colour.
pub fn to_dot(g: &Graph, team: Option<&TeamCandidate>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let label = g.label(v);
        if team.is_some_and(|t| t.contains(v)) {
            writeln!(
                out,
                "  {label} [team=true, style=filled, fillcolor=\"#f4a261\"];"
            )
            .unwrap();
        } else {
            writeln!(out, "  {label};").unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {} -- {};", g.label(u), g.label(v)).unwrap();
    }
    out.push_str("}\n");
    out
}
