//! Text formats.
//!
//! `.h3`: header `h3 <n> <m>`, then `m` lines `a b c` with `a < b < c`.
//! `.p3`: header `p3 <n>`, then three lines of space-separated vertices.
//! Lines starting with `#` are comments; blank lines are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;
use crate::partition::Partition3;
use crate::triple::Triple;

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str, keep_blank: bool) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(move |(_, l)| !l.starts_with('#') && (keep_blank || !l.is_empty()))
}

fn numbers(line: usize, s: &str) -> Result<Vec<u32>> {
    s.split_whitespace()
        .map(|w| {
            w.parse::<u32>()
                .or_else(|_| parse_err(line, format!("not a vertex label: {w:?}")))
        })
        .collect()
}

pub fn parse_h3(text: &str) -> Result<Hypergraph3> {
    let mut lines = content_lines(text, false);
    let Some((hl, header)) = lines.next() else {
        return parse_err(1, "missing `h3 <n> <m>` header");
    };
    let mut words = header.split_whitespace();
    if words.next() != Some("h3") {
        return parse_err(hl, "header must start with `h3`");
    }
    let rest = numbers(hl, &words.collect::<Vec<_>>().join(" "))?;
    let [n, m] = rest[..] else {
        return parse_err(hl, "header must be `h3 <n> <m>`");
    };
    let mut seen = std::collections::BTreeSet::new();
    for (ln, l) in lines {
        let v = numbers(ln, l)?;
        let [a, b, c] = v[..] else {
            return parse_err(ln, "an edge line needs exactly three vertices");
        };
        if !(1 <= a && a < b && b < c && c <= n) {
            return parse_err(ln, format!("edge `{l}` is not 1 <= a < b < c <= {n}"));
        }
        if !seen.insert(Triple::of(a, b, c)) {
            return parse_err(ln, format!("duplicate edge `{l}`"));
        }
    }
    if seen.len() != m as usize {
        return parse_err(hl, format!("header declares {m} edges, found {}", seen.len()));
    }
    Ok(Hypergraph3::from_set(n, seen))
}

pub fn write_h3(h: &Hypergraph3, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for l in c.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
    let _ = writeln!(out, "h3 {} {}", h.n(), h.edge_count());
    for e in h.edges() {
        let [a, b, c] = e.vertices();
        let _ = writeln!(out, "{a} {b} {c}");
    }
    out
}

/// Parses a `.p3` partition; returns `n` and the partition. Empty parts are
/// written as blank lines.
pub fn parse_p3(text: &str) -> Result<(u32, Partition3)> {
    let mut lines = content_lines(text, true).skip_while(|(_, l)| l.is_empty());
    let Some((hl, header)) = lines.next() else {
        return parse_err(1, "missing `p3 <n>` header");
    };
    let mut words = header.split_whitespace();
    if words.next() != Some("p3") {
        return parse_err(hl, "header must start with `p3`");
    }
    let rest = numbers(hl, &words.collect::<Vec<_>>().join(" "))?;
    let [n] = rest[..] else {
        return parse_err(hl, "header must be `p3 <n>`");
    };
    let mut parts: [Vec<u32>; 3] = Default::default();
    let mut count = 0;
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        if count == 3 {
            if l.is_empty() {
                continue;
            }
            return parse_err(ln, "more than three parts");
        }
        parts[count] = numbers(ln, l)?;
        if let Some(&v) = parts[count].iter().find(|&&v| v == 0 || v > n) {
            return parse_err(ln, format!("vertex {v} outside [1, {n}]"));
        }
        count += 1;
    }
    let pi = Partition3::new(parts).map_err(|e| Error::Parse {
        line: last,
        msg: e.to_string(),
    })?;
    Ok((n, pi))
}

pub fn write_p3(n: u32, pi: &Partition3) -> String {
    let mut out = format!("p3 {n}\n");
    for p in pi.parts() {
        let words: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h3_roundtrip() {
        let h = Hypergraph3::new(5, [[1, 2, 3], [1, 2, 4], [3, 4, 5]]).unwrap();
        let text = write_h3(&h, &["generalized triangle".into()]);
        assert!(text.starts_with("# generalized triangle\nh3 5 3\n"));
        assert_eq!(parse_h3(&text).unwrap(), h);
    }

    #[test]
    fn h3_errors() {
        assert!(matches!(parse_h3("h3 4 2\n1 2 3\n1 2 3\n"), Err(Error::Parse { line: 3, .. })));
        assert!(parse_h3("h3 4 1\n2 1 3\n").is_err());
        assert!(parse_h3("h3 4 1\n1 2 5\n").is_err());
        assert!(parse_h3("h3 4 2\n1 2 3\n").is_err());
        assert!(parse_h3("# only a comment\n").is_err());
    }

    #[test]
    fn p3_roundtrip_with_empty_part() {
        let pi = Partition3::new([vec![1, 2], vec![], vec![3]]).unwrap();
        let text = write_p3(3, &pi);
        assert_eq!(text, "p3 3\n1 2\n\n3\n");
        assert_eq!(parse_p3(&text).unwrap(), (3, pi));
    }
}
