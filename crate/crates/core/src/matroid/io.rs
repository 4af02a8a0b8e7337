//! Line-oriented text formats for matroids and graphs.
//!
//! ```text
//! matroid U2,3
//! elements 3
//! rank 2
//! bases
//! 0 1
//! 0 2
//! 1 2
//! end
//! ```
//!
//! ```text
//! graph triangle
//! vertices 3
//! edges
//! 0 1
//! 1 2
//! 2 0
//! end
//! ```
//!
//! Element and vertex ids are 0-based. Blank lines and `#` comments are
//! ignored; the empty basis of a rank-0 matroid is written as `-`.

use std::fmt::Write as _;

use thiserror::Error;

use super::{ElementSet, Graph, Matroid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Non-blank lines with comments stripped, paired with 1-based numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<(usize, &'a str), ParseError> {
        let last = self.lines.last().map_or(1, |l| l.0);
        let l = self
            .lines
            .get(self.pos)
            .copied()
            .ok_or_else(|| err(last, "unexpected end of input"))?;
        self.pos += 1;
        Ok(l)
    }

    fn keyword(&mut self, key: &str) -> Result<(usize, &'a str), ParseError> {
        let (n, l) = self.next()?;
        let mut parts = l.splitn(2, char::is_whitespace);
        if parts.next() != Some(key) {
            return Err(err(n, format!("expected `{key}`")));
        }
        Ok((n, parts.next().unwrap_or("").trim()))
    }

    fn number(&mut self, key: &str) -> Result<usize, ParseError> {
        let (n, rest) = self.keyword(key)?;
        rest.parse()
            .map_err(|_| err(n, format!("`{key}` needs a nonnegative integer")))
    }
}

fn indices(n: usize, line: &str) -> Result<Vec<usize>, ParseError> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| err(n, format!("bad index `{t}`"))))
        .collect()
}

pub fn parse_matroid(text: &str) -> Result<Matroid, ParseError> {
    let mut lines = Lines {
        lines: content_lines(text),
        pos: 0,
    };
    let (_, name) = lines.keyword("matroid")?;
    let nelems = lines.number("elements")?;
    let rank = lines.number("rank")?;
    lines.keyword("bases")?;
    let mut bases = Vec::new();
    loop {
        let (n, l) = lines.next()?;
        if l == "end" {
            break;
        }
        let elems = if l == "-" { Vec::new() } else { indices(n, l)? };
        if elems.len() != rank {
            return Err(err(
                n,
                format!("basis has {} elements, rank is {rank}", elems.len()),
            ));
        }
        if let Some(e) = elems.iter().find(|&&e| e >= nelems) {
            return Err(err(
                n,
                format!("element {e} outside ground set of size {nelems}"),
            ));
        }
        let set: ElementSet = elems.iter().copied().collect();
        if set.len() != elems.len() {
            return Err(err(n, "repeated element in basis"));
        }
        bases.push(set);
    }
    let m = Matroid::from_bases(nelems, bases)
        .map_err(|e| err(lines.lines.last().map_or(1, |l| l.0), e.to_string()))?;
    Ok(if name.is_empty() {
        m
    } else {
        m.with_name(name)
    })
}

pub fn format_matroid(m: &Matroid) -> String {
    let mut s = String::new();
    writeln!(s, "matroid {}", m.name().unwrap_or("unnamed")).unwrap();
    writeln!(s, "elements {}", m.nelems()).unwrap();
    writeln!(s, "rank {}", m.rank()).unwrap();
    writeln!(s, "bases").unwrap();
    for b in m.bases() {
        if b.is_empty() {
            writeln!(s, "-").unwrap();
        } else {
            let parts: Vec<String> = b.iter().map(|e| e.to_string()).collect();
            writeln!(s, "{}", parts.join(" ")).unwrap();
        }
    }
    writeln!(s, "end").unwrap();
    s
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = Lines {
        lines: content_lines(text),
        pos: 0,
    };
    let (_, name) = lines.keyword("graph")?;
    let nverts = lines.number("vertices")?;
    lines.keyword("edges")?;
    let mut edges = Vec::new();
    loop {
        let (n, l) = lines.next()?;
        if l == "end" {
            break;
        }
        match indices(n, l)?.as_slice() {
            &[u, v] if u < nverts && v < nverts => edges.push((u, v)),
            &[_, _] => return Err(err(n, format!("endpoint outside {nverts} vertices"))),
            _ => return Err(err(n, "an edge line needs exactly two vertices")),
        }
    }
    let g = Graph::new(nverts, edges).expect("endpoints validated");
    Ok(if name.is_empty() {
        g
    } else {
        g.with_name(name)
    })
}

pub fn format_graph(g: &Graph) -> String {
    let mut s = String::new();
    writeln!(s, "graph {}", g.name().unwrap_or("unnamed")).unwrap();
    writeln!(s, "vertices {}", g.nverts()).unwrap();
    writeln!(s, "edges").unwrap();
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    writeln!(s, "end").unwrap();
    s
}

/// Either kind of file, judged by its first keyword. Graphs become their
/// cycle matroids.
pub fn parse_matroid_or_graph(text: &str) -> Result<(Matroid, Option<Graph>), ParseError> {
    let first = content_lines(text)
        .first()
        .map(|l| l.1.to_string())
        .unwrap_or_default();
    if first.starts_with("graph") {
        let g = parse_graph(text)?;
        let m = Matroid::graphic(&g).map_err(|e| err(1, e.to_string()))?;
        Ok((m, Some(g)))
    } else {
        Ok((parse_matroid(text)?, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matroid_roundtrip() {
        let m = Matroid::uniform(2, 4).unwrap();
        let text = format_matroid(&m);
        assert!(text.starts_with("matroid U2,4\nelements 4\nrank 2\nbases\n0 1\n"));
        let back = parse_matroid(&text).unwrap();
        assert!(back.same_bases(&m));
        assert_eq!(back.name(), Some("U2,4"));
        let r0 = Matroid::uniform(0, 2).unwrap();
        assert!(parse_matroid(&format_matroid(&r0)).unwrap().same_bases(&r0));
    }

    #[test]
    fn graph_roundtrip() {
        let g = Graph::wheel(4);
        let back = parse_graph(&format_graph(&g)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn line_numbered_diagnostics() {
        let bad = "matroid x\nelements 3\nrank 2\nbases\n0 1\n0 7\nend\n";
        let e = parse_matroid(bad).unwrap_err();
        assert_eq!(e.line, 6);
        let bad = "matroid x\n# comment\nelements 3\nrank 2\nbases\n0 1 2\nend\n";
        assert_eq!(parse_matroid(bad).unwrap_err().line, 6);
        let bad = "graph g\nvertices 2\nedges\n0 1 1\nend\n";
        assert_eq!(parse_graph(bad).unwrap_err().line, 4);
        assert_eq!(
            parse_matroid("matroid x\nelements 3\n").unwrap_err().line,
            2
        );
        assert_eq!(parse_matroid("nonsense").unwrap_err().line, 1);
    }

    #[test]
    fn detects_kind() {
        let (m, g) = parse_matroid_or_graph(&format_graph(&Graph::complete(4))).unwrap();
        assert_eq!(m.bases().len(), 16);
        assert!(g.is_some());
    }
}
