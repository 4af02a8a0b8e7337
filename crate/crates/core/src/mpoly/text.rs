//! Text form of [`MPoly`]: terms in decreasing graded lexicographic order,
//! `coeff * y3^2 y5` per term, joined by ` + `. A constant term is written as
//! the bare coefficient and the zero polynomial as `0`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{MPoly, Monomial};
use num_traits::One;

use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial term `{term}`: {reason}")]
pub struct ParsePolyError {
    pub term: String,
    pub reason: &'static str,
}

pub(super) fn write_poly(p: &MPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (m, c)) in p.terms().rev().enumerate() {
        if i > 0 {
            write!(f, " + ")?;
        }
        if m.is_one() {
            write!(f, "{c}")?;
        } else {
            write!(f, "{c} * {m}")?;
        }
    }
    Ok(())
}

fn parse_factor(tok: &str) -> Option<(usize, u32)> {
    let rest = tok.strip_prefix('y')?;
    match rest.split_once('^') {
        Some((v, e)) => Some((v.parse().ok()?, e.parse().ok()?)),
        None => Some((rest.parse().ok()?, 1)),
    }
}

/// Splits at `+`, and at `-` when it follows the end of a term (so signs of
/// coefficients such as `+ -3/2` stay attached).
fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut prev: Option<char> = None;
    for (i, ch) in s.char_indices() {
        let ends_term = prev.is_some_and(|p| p.is_ascii_alphanumeric());
        if ch == '+' || (ch == '-' && ends_term) {
            out.push(&s[start..i]);
            start = if ch == '+' { i + 1 } else { i };
            prev = Some(ch);
            continue;
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    out.push(&s[start..]);
    out
}

/// Accepts the canonical form and the usual shorthand: `*` optional,
/// coefficient 1 implied, `-` between terms (`8 y4^2 - 4 y4 y5`, `-y0`).
impl FromStr for MPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = MPoly::zero();
        for raw in split_terms(s) {
            let term = raw.trim();
            let fail = |reason| ParsePolyError {
                term: term.to_string(),
                reason,
            };
            if term.is_empty() {
                return Err(fail("empty term"));
            }
            let (negate, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term),
            };
            let mut c = Rational::one();
            let mut seen_coeff = false;
            let mut exps = Vec::new();
            for tok in body
                .split(|ch: char| ch.is_whitespace() || ch == '*')
                .filter(|t| !t.is_empty())
            {
                if tok.starts_with('y') {
                    exps.push(parse_factor(tok).ok_or_else(|| fail("bad variable factor"))?);
                } else if seen_coeff || !exps.is_empty() {
                    return Err(fail("coefficient must come first"));
                } else {
                    c = parse_rational(tok).map_err(|_| fail("bad coefficient"))?;
                    seen_coeff = true;
                }
            }
            if !seen_coeff && exps.is_empty() {
                return Err(fail("empty term"));
            }
            if body.trim_end().ends_with('*') {
                return Err(fail("missing variables after `*`"));
            }
            if negate {
                c = -c;
            }
            p.add_term(Monomial::from_exponents(exps), c);
        }
        Ok(p)
    }
}
