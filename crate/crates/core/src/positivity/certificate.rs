//! Replayable text form of nonnegativity certificates.
//!
//! ```text
//! certificate quadsplit
//! label IV S={0,1,2,3}
//! poly 8 y4^2 + 8 y5^2 - 4 y4 y5
//! factor 1
//! vars 4 5
//! nonneg
//! 0 0
//! 0 0
//! psd
//! 8 -2
//! -2 8
//! perm 0 1
//! pivots 8 15/2
//! lower
//! 0 0
//! -1/4 0
//! end
//! ```
//!
//! A `gram` block has `factor`, then `basis` (monomials separated by
//! commas), `remainder`, the `gram` rows, and the same `perm` / `pivots` /
//! `lower` factorization.
//!
//! A `coefficientwise` block carries only `label` (optional) and `poly`.
//! A file may hold any number of blocks.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Certificate, Ldl, Matrix};
use crate::mpoly::{MPoly, Monomial, VarId};
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct CertificateParseError {
    pub line: usize,
    pub message: String,
}

/// A certificate together with the polynomial it claims to certify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledCertificate {
    pub label: Option<String>,
    pub poly: MPoly,
    pub certificate: Certificate,
}

impl LabeledCertificate {
    pub fn verify(&self) -> bool {
        self.certificate.verify(&self.poly)
    }
}

fn row(out: &mut String, xs: &[Rational]) {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    writeln!(out, "{}", parts.join(" ")).unwrap();
}

fn matrix(out: &mut String, key: &str, m: &Matrix) {
    writeln!(out, "{key}").unwrap();
    for r in m {
        row(out, r);
    }
}

fn monomial_text(m: &Monomial) -> String {
    if m.is_one() {
        "1".to_string()
    } else {
        m.to_string()
    }
}

fn ldl_lines(s: &mut String, ldl: &Ldl) {
    let perm: Vec<String> = ldl.perm.iter().map(|v| v.to_string()).collect();
    writeln!(s, "perm {}", perm.join(" ")).unwrap();
    write!(s, "pivots ").unwrap();
    row(s, &ldl.pivots);
    matrix(s, "lower", &ldl.lower);
}

pub fn format_certificate(c: &LabeledCertificate) -> String {
    let mut s = String::new();
    writeln!(s, "certificate {}", c.certificate.kind()).unwrap();
    if let Some(l) = &c.label {
        writeln!(s, "label {l}").unwrap();
    }
    writeln!(s, "poly {}", c.poly).unwrap();
    match &c.certificate {
        Certificate::Coefficientwise => {}
        Certificate::QuadSplit {
            vars,
            factor,
            nonneg,
            psd,
            ldl,
        } => {
            writeln!(s, "factor {}", monomial_text(factor)).unwrap();
            let vs: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
            writeln!(s, "vars {}", vs.join(" ")).unwrap();
            matrix(&mut s, "nonneg", nonneg);
            matrix(&mut s, "psd", psd);
            ldl_lines(&mut s, ldl);
        }
        Certificate::Gram {
            factor,
            basis,
            remainder,
            gram,
            ldl,
        } => {
            writeln!(s, "factor {}", monomial_text(factor)).unwrap();
            let bs: Vec<String> = basis.iter().map(monomial_text).collect();
            writeln!(s, "basis {}", bs.join(", ")).unwrap();
            writeln!(s, "remainder {remainder}").unwrap();
            matrix(&mut s, "gram", gram);
            ldl_lines(&mut s, ldl);
        }
    }
    writeln!(s, "end").unwrap();
    s
}

struct Reader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn err(&self, line: usize, message: impl Into<String>) -> CertificateParseError {
        CertificateParseError {
            line,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self) -> Result<(usize, &'a str), CertificateParseError> {
        let last = self.lines.last().map_or(1, |l| l.0);
        let l = self
            .peek()
            .ok_or_else(|| self.err(last, "unexpected end of input"))?;
        self.pos += 1;
        Ok(l)
    }

    fn keyword(&mut self, key: &str) -> Result<(usize, &'a str), CertificateParseError> {
        let (n, l) = self.next()?;
        let (k, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        if k != key {
            return Err(self.err(n, format!("expected `{key}`")));
        }
        Ok((n, rest.trim()))
    }

    fn rationals(&self, n: usize, s: &str) -> Result<Vec<Rational>, CertificateParseError> {
        s.split_whitespace()
            .map(|t| parse_rational(t).map_err(|_| self.err(n, format!("bad rational `{t}`"))))
            .collect()
    }

    fn matrix(&mut self, key: &str, size: usize) -> Result<Matrix, CertificateParseError> {
        self.keyword(key)?;
        (0..size)
            .map(|_| {
                let (n, l) = self.next()?;
                let r = self.rationals(n, l)?;
                if r.len() != size {
                    return Err(self.err(n, format!("`{key}` row needs {size} entries")));
                }
                Ok(r)
            })
            .collect()
    }
}

/// A monomial written as a polynomial with the single coefficient 1.
fn parse_monomial(text: &str) -> Option<Monomial> {
    let f: MPoly = text.parse().ok()?;
    let (m, c) = f.terms().next()?;
    (f.len() == 1 && *c == Rational::from_integer(1.into())).then(|| m.clone())
}

fn parse_ldl(r: &mut Reader<'_>, size: usize) -> Result<Ldl, CertificateParseError> {
    let (permn, ptext) = r.keyword("perm")?;
    let perm: Vec<usize> = ptext
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| r.err(permn, format!("bad index `{t}`")))
        })
        .collect::<Result<_, _>>()?;
    let (pivn, pivtext) = r.keyword("pivots")?;
    let pivots = r.rationals(pivn, pivtext)?;
    if perm.len() != size || pivots.len() != size {
        return Err(r.err(pivn, format!("perm and pivots need {size} entries")));
    }
    let lower = r.matrix("lower", size)?;
    Ok(Ldl {
        perm,
        pivots,
        lower,
    })
}

fn parse_block(r: &mut Reader<'_>) -> Result<LabeledCertificate, CertificateParseError> {
    let (n, kind) = r.keyword("certificate")?;
    let label = match r.peek() {
        Some((_, l)) if l.starts_with("label") => Some(r.keyword("label")?.1.to_string()),
        _ => None,
    };
    let (pn, ptext) = r.keyword("poly")?;
    let poly: MPoly = ptext.parse().map_err(|e| r.err(pn, format!("{e}")))?;
    let certificate = match kind {
        "coefficientwise" => Certificate::Coefficientwise,
        "quadsplit" => {
            let (fnum, ftext) = r.keyword("factor")?;
            let factor =
                parse_monomial(ftext).ok_or_else(|| r.err(fnum, "factor must be a monomial"))?;
            let (vn, vtext) = r.keyword("vars")?;
            let vars: Vec<VarId> = vtext
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| r.err(vn, format!("bad variable `{t}`")))
                })
                .collect::<Result<_, _>>()?;
            let size = vars.len();
            let nonneg = r.matrix("nonneg", size)?;
            let psd = r.matrix("psd", size)?;
            let ldl = parse_ldl(r, size)?;
            Certificate::QuadSplit {
                vars,
                factor,
                nonneg,
                psd,
                ldl,
            }
        }
        "gram" => {
            let (fnum, ftext) = r.keyword("factor")?;
            let factor =
                parse_monomial(ftext).ok_or_else(|| r.err(fnum, "factor must be a monomial"))?;
            let (bn, btext) = r.keyword("basis")?;
            let basis: Vec<Monomial> = btext
                .split(',')
                .map(|t| {
                    parse_monomial(t.trim())
                        .ok_or_else(|| r.err(bn, format!("bad monomial `{}`", t.trim())))
                })
                .collect::<Result<_, _>>()?;
            let (rn, rtext) = r.keyword("remainder")?;
            let remainder: MPoly = rtext.parse().map_err(|e| r.err(rn, format!("{e}")))?;
            let gram = r.matrix("gram", basis.len())?;
            let ldl = parse_ldl(r, basis.len())?;
            Certificate::Gram {
                factor,
                basis,
                remainder,
                gram,
                ldl,
            }
        }
        other => return Err(r.err(n, format!("unknown certificate kind `{other}`"))),
    };
    r.keyword("end")?;
    Ok(LabeledCertificate {
        label,
        poly,
        certificate,
    })
}

pub fn parse_certificates(text: &str) -> Result<Vec<LabeledCertificate>, CertificateParseError> {
    let lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut r = Reader { lines, pos: 0 };
    let mut out = Vec::new();
    while r.peek().is_some() {
        out.push(parse_block(&mut r)?);
    }
    Ok(out)
}
