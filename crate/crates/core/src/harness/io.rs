//! Plain-text instance files.
//!
//! ```text
//! BCE 3 2 1 1
//! 0 1
//! 1 2
//! ```
//!
//! The header is `VARIANT n m k eta`, followed by exactly `m` edge lines.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{pair, Graph, Instance, Variant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub msg: String,
}

fn err(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        msg: msg.into(),
    }
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push((b + 1, &s[b..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((b + 1, &s[b..]));
    }
    out
}

fn number(line: usize, (col, tok): (usize, &str), what: &str) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| err(line, col, format!("expected {what}, found `{tok}`")))
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or_else(|| err(1, 1, "missing header"))?;
    let toks = tokens(header);
    if toks.len() != 5 {
        return Err(err(
            hl,
            1,
            format!("header needs 5 fields, found {}", toks.len()),
        ));
    }
    let variant = Variant::parse(toks[0].1)
        .ok_or_else(|| err(hl, toks[0].0, format!("unknown variant `{}`", toks[0].1)))?;
    let n = number(hl, toks[1], "vertex count")?;
    let m = number(hl, toks[2], "edge count")?;
    let k = number(hl, toks[3], "budget")?;
    let eta = number(hl, toks[4], "balance slack")?;

    let mut g = Graph::new(n);
    let mut seen = 0;
    for (ln, line) in lines {
        let toks = tokens(line);
        if toks.len() != 2 {
            return Err(err(
                ln,
                1,
                format!("edge line needs 2 fields, found {}", toks.len()),
            ));
        }
        let u = number(ln, toks[0], "vertex id")?;
        let v = number(ln, toks[1], "vertex id")?;
        for (t, x) in [(toks[0], u), (toks[1], v)] {
            if x >= n {
                return Err(err(ln, t.0, format!("vertex {x} out of range 0..{n}")));
            }
        }
        if u == v {
            return Err(err(ln, toks[1].0, format!("self-loop at {u}")));
        }
        if !g.add_edge(u, v) {
            let (a, b) = pair(u, v);
            return Err(err(ln, 1, format!("duplicate edge {a} {b}")));
        }
        seen += 1;
        if seen > m {
            return Err(err(ln, 1, format!("more than {m} edge lines")));
        }
    }
    if seen != m {
        return Err(err(
            hl,
            toks[2].0,
            format!("header says {m} edges, found {seen}"),
        ));
    }
    if variant == Variant::Bcc && !g.is_cluster_graph() {
        return Err(err(hl, toks[0].0, "BCC instance must be a cluster graph"));
    }
    Ok(Instance {
        graph: g,
        k,
        eta,
        variant,
    })
}

/// Canonical text: header, then edges in increasing order with `u < v`.
pub fn serialize_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut s = format!(
        "{} {} {} {} {}\n",
        inst.variant.name(),
        g.n(),
        g.m(),
        inst.k,
        inst.eta
    );
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_round_trip() {
        let inst = parse_instance("BCE 3 2 1 1\n0 1\n1 2\n").unwrap();
        assert_eq!(inst.variant, Variant::Bce);
        assert_eq!(inst.graph.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!((inst.k, inst.eta), (1, 1));
        assert_eq!(serialize_instance(&inst), "BCE 3 2 1 1\n0 1\n1 2\n");
    }

    #[test]
    fn empty_body() {
        let inst = parse_instance("BCD 2 0 0 0\n").unwrap();
        assert_eq!(inst.graph.n(), 2);
        assert_eq!(inst.graph.m(), 0);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_instance("BCE 3 2 1 1\n0 1\n1 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 1));
        assert!(e.msg.contains("duplicate"));
        let e = parse_instance("BCE 3 1 1 1\n0   7\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        let e = parse_instance("XYZ 3 0 1 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse_instance("BCE 3 x 1 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 7));
        assert!(parse_instance("BCC 3 2 0 0\n0 1\n1 2\n").is_err());
        assert!(parse_instance("BCE 3 2 0 0\n0 1\n").is_err());
        assert!(parse_instance("").is_err());
    }
}
