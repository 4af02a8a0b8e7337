//! Matrices over `Q(ω)` and the Binet–Cauchy checks for sixth-root-of-unity
//! representations.
//!
//! ```text
//! matrix U2,3
//! shape 2 3
//! 1 0 1
//! 0 1 w
//! end
//! ```
//!
//! Entries are `a+bw`, `a+bw/c+dw`, or plain rationals, separated by
//! whitespace.

use std::fmt::Write as _;

use num_traits::One;
use thiserror::Error;

use super::eisenstein::EisRational;
use crate::genpoly::WeightAssignment;
use crate::matroid::io::ParseError;
use crate::matroid::{ElementSet, Matroid};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HppError {
    #[error("matrix is {rows}x{cols}, matroid needs {rank}x{nelems}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        rank: usize,
        nelems: usize,
    },
    #[error("no weight for column {0}")]
    MissingWeight(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EisMatrix {
    pub name: Option<String>,
    rows: Vec<Vec<EisRational>>,
    cols: usize,
}

impl EisMatrix {
    /// Rows must share a length.
    pub fn new(rows: Vec<Vec<EisRational>>) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        rows.iter().all(|r| r.len() == cols).then_some(EisMatrix {
            name: None,
            rows,
            cols,
        })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| EisRational::from_real(Rational::from_integer(x.into())))
                    .collect()
            })
            .collect();
        Self::new(rows).expect("rectangular")
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &EisRational {
        &self.rows[i][j]
    }

    /// Determinant of the square submatrix on `cols`.
    pub fn minor(&self, cols: ElementSet) -> EisRational {
        let sub: Vec<Vec<EisRational>> = self
            .rows
            .iter()
            .map(|r| cols.iter().map(|j| r[j].clone()).collect())
            .collect();
        determinant(sub)
    }
}

/// Gaussian elimination over `Q(ω)`.
pub fn determinant(mut a: Vec<Vec<EisRational>>) -> EisRational {
    let n = a.len();
    let mut det = EisRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return EisRational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -&det;
        }
        let pivot = a[k][k].clone();
        let inv = pivot.inv().expect("nonzero pivot");
        det = &det * &pivot;
        for i in (k + 1)..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] * &inv;
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] = &a[i][j] - &d;
            }
        }
    }
    det
}

/// `(is_representation, all_unimodular)`: the nonzero maximal minors are
/// exactly the bases, and each of them has norm 1.
pub fn sixth_root_verify(a: &EisMatrix, m: &Matroid) -> Result<(bool, bool), HppError> {
    if a.nrows() != m.rank() || a.ncols() != m.nelems() {
        return Err(HppError::ShapeMismatch {
            rows: a.nrows(),
            cols: a.ncols(),
            rank: m.rank(),
            nelems: m.nelems(),
        });
    }
    let mut representation = true;
    let mut unimodular = true;
    for s in m.ground().subsets_of_size(m.rank()) {
        let d = a.minor(s);
        if d.is_zero() == m.is_basis(s) {
            representation = false;
        }
        if !d.is_zero() && !d.norm().is_one() {
            unimodular = false;
        }
    }
    Ok((representation, unimodular))
}

/// `det(A · diag(w) · A*)`, which is real because the matrix is Hermitian.
pub fn weighted_gram_eval(a: &EisMatrix, w: &WeightAssignment) -> Result<Rational, HppError> {
    let weights: Vec<&Rational> = (0..a.ncols())
        .map(|j| w.get(j).ok_or(HppError::MissingWeight(j)))
        .collect::<Result<_, _>>()?;
    let r = a.nrows();
    let gram: Vec<Vec<EisRational>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|k| {
                    let mut s = EisRational::zero();
                    for (j, wj) in weights.iter().enumerate() {
                        let t = &a.rows[i][j] * &a.rows[k][j].conj();
                        s = &s + &EisRational::new(t.a * *wj, t.b * *wj);
                    }
                    s
                })
                .collect()
        })
        .collect();
    let d = determinant(gram);
    Ok(d.as_real().expect("Hermitian determinant is real"))
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

pub fn parse_matrix(text: &str) -> Result<EisMatrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut last = 1;
    let mut next = |what: &str| -> Result<(usize, &str), ParseError> {
        let l = lines
            .next()
            .ok_or_else(|| err(last, format!("unexpected end of input, expected {what}")))?;
        last = l.0;
        Ok(l)
    };
    let (n, head) = next("`matrix`")?;
    let name = head
        .strip_prefix("matrix")
        .ok_or_else(|| err(n, "expected `matrix`"))?
        .trim()
        .to_string();
    let (n, shape) = next("`shape`")?;
    let dims: Vec<usize> = shape
        .strip_prefix("shape")
        .ok_or_else(|| err(n, "expected `shape r n`"))?
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| err(n, format!("bad dimension `{t}`")))
        })
        .collect::<Result<_, _>>()?;
    let [rows, cols] = dims[..] else {
        return Err(err(n, "expected `shape r n`"));
    };
    let mut entries = Vec::with_capacity(rows);
    for _ in 0..rows {
        let (n, l) = next("a matrix row")?;
        let row: Vec<EisRational> = l
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| err(n, format!("bad entry `{t}`"))))
            .collect::<Result<_, _>>()?;
        if row.len() != cols {
            return Err(err(
                n,
                format!("row has {} entries, expected {cols}", row.len()),
            ));
        }
        entries.push(row);
    }
    let (n, end) = next("`end`")?;
    if end != "end" {
        return Err(err(n, "expected `end`"));
    }
    let mut m = EisMatrix {
        name: None,
        rows: entries,
        cols,
    };
    if !name.is_empty() {
        m.name = Some(name);
    }
    Ok(m)
}

pub fn format_matrix(a: &EisMatrix) -> String {
    let mut s = String::new();
    writeln!(s, "matrix {}", a.name.as_deref().unwrap_or("unnamed")).unwrap();
    writeln!(s, "shape {} {}", a.nrows(), a.ncols()).unwrap();
    for r in &a.rows {
        let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        writeln!(s, "{}", parts.join(" ")).unwrap();
    }
    writeln!(s, "end").unwrap();
    s
}
