//! Named matroids: the nine six-point rank-3 configurations `I`..`IX`,
//! wheels, complete and complete bipartite graphs, Fano, Pappus and the
//! uniform matroids, plus the expected coefficient tables for the rank-3
//! configurations.
//!
//! The configurations are given by their nontrivial lines with 1-based
//! point labels (element `i - 1` is point `i`); a 3-set is a basis iff no
//! line contains it.

use itertools::Itertools;
use thiserror::Error;

use crate::genpoly::psi;
use crate::matroid::{ElementSet, Graph, Matroid};
use crate::mpoly::Monomial;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog name `{0}` (try `catalog list`)")]
    UnknownName(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// One of the nine six-point configurations, by numeral.
    Configuration(&'static str),
    Graphic(Graph),
    Named,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub matroid: Matroid,
    pub provenance: Provenance,
}

pub const NUMERALS: [&str; 9] = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX"];

/// Nontrivial lines of each configuration, 1-based.
const CONFIGURATION_LINES: [&[&[usize]]; 9] = [
    &[&[2, 3, 4, 5, 6]],
    &[&[2, 4, 5, 6], &[1, 3, 6]],
    &[&[3, 4, 5, 6]],
    &[&[2, 3, 5], &[1, 3, 6], &[2, 4, 6], &[1, 4, 5]],
    &[&[2, 3, 4], &[1, 2, 6], &[1, 3, 5]],
    &[&[2, 5, 6], &[1, 4, 6]],
    &[&[1, 3, 4], &[2, 5, 6]],
    &[&[4, 5, 6]],
    &[],
];

const FANO_LINES: [[usize; 3]; 7] = [
    [0, 1, 2],
    [0, 3, 4],
    [0, 5, 6],
    [1, 3, 5],
    [1, 4, 6],
    [2, 3, 6],
    [2, 4, 5],
];

/// Points `A1 A2 A3 B1 B2 B3 C1 C2 C3` are elements `0..9`.
const PAPPUS_LINES: [[usize; 3]; 9] = [
    [0, 1, 2],
    [3, 4, 5],
    [6, 7, 8],
    [0, 4, 8],
    [1, 3, 8],
    [0, 5, 7],
    [2, 3, 7],
    [1, 5, 6],
    [2, 4, 6],
];

/// Simple rank-3 matroid whose nontrivial flats are `lines`.
pub fn rank3_from_lines(n: usize, lines: &[ElementSet]) -> Matroid {
    let bases = ElementSet::full(n)
        .subsets_of_size(3)
        .filter(|t| !lines.iter().any(|l| t.is_subset(*l)));
    Matroid::from_bases(n, bases).expect("line arrangements have bases")
}

fn configuration(idx: usize) -> Matroid {
    let lines: Vec<ElementSet> = CONFIGURATION_LINES[idx]
        .iter()
        .map(|l| l.iter().map(|p| p - 1).collect())
        .collect();
    rank3_from_lines(6, &lines).with_name(NUMERALS[idx])
}

fn graphic_entry(name: &str, g: Graph) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        matroid: Matroid::graphic(&g)
            .expect("connected graph")
            .with_name(name),
        provenance: Provenance::Graphic(g.with_name(name)),
    }
}

fn named(name: &str, m: Matroid) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        matroid: m.with_name(name),
        provenance: Provenance::Named,
    }
}

/// `U{r},{n}` / `Ur,n`.
fn parse_uniform(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix('U')?;
    let rest = rest.trim_start_matches('{').trim_end_matches('}');
    let (r, n) = rest.split_once(',')?;
    Some((r.trim().parse().ok()?, n.trim().parse().ok()?))
}

pub fn builtin(name: &str) -> Result<CatalogEntry, CatalogError> {
    let unknown = || CatalogError::UnknownName(name.to_string());
    if let Some(idx) = NUMERALS.iter().position(|&n| n == name) {
        return Ok(CatalogEntry {
            name: name.to_string(),
            matroid: configuration(idx),
            provenance: Provenance::Configuration(NUMERALS[idx]),
        });
    }
    match name {
        "Fano" => {
            let lines: Vec<ElementSet> = FANO_LINES
                .iter()
                .map(|l| l.iter().copied().collect())
                .collect();
            return Ok(named(name, rank3_from_lines(7, &lines)));
        }
        "Pappus" => {
            let lines: Vec<ElementSet> = PAPPUS_LINES
                .iter()
                .map(|l| l.iter().copied().collect())
                .collect();
            return Ok(named(name, rank3_from_lines(9, &lines)));
        }
        "K33" => return Ok(graphic_entry(name, Graph::complete_bipartite(3, 3))),
        _ => {}
    }
    if let Some((r, n)) = parse_uniform(name) {
        let m = Matroid::uniform(r, n).map_err(|_| unknown())?;
        return Ok(named(name, m));
    }
    let size = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|s| s.parse::<usize>().ok())
    };
    if let Some(n) = size("W").filter(|&n| (3..=32).contains(&n)) {
        return Ok(graphic_entry(name, Graph::wheel(n)));
    }
    if let Some(n) = size("K").filter(|&n| (2..=11).contains(&n)) {
        return Ok(graphic_entry(name, Graph::complete(n)));
    }
    Err(unknown())
}

/// Names shown by `catalog list`; wheels, complete graphs and uniforms
/// accept other sizes too.
pub fn list() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = NUMERALS.to_vec();
    names.extend([
        "W3", "W4", "K4", "K5", "K33", "Fano", "Pappus", "U2,4", "U3,6",
    ]);
    names
}

/// The rank-3 catalog entries used for the three-element checks.
pub fn rank3_names() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = NUMERALS.to_vec();
    names.extend(["Fano", "Pappus"]);
    names
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub numeral: &'static str,
    /// The 1-based points `a, b, c, d`.
    pub points: [usize; 4],
    pub psi2: i64,
    pub psi3: i64,
    pub combo: i64,
}

impl TableRow {
    pub fn set(&self) -> ElementSet {
        self.points.iter().map(|p| p - 1).collect()
    }

    pub fn label(&self) -> String {
        format!("{}{{{}}}", self.numeral, self.points.iter().join(","))
    }

    pub fn is_consistent(&self) -> bool {
        self.combo == 2 * self.psi2 - 3 * self.psi3
    }
}

const fn row(
    numeral: &'static str,
    points: [usize; 4],
    psi2: i64,
    psi3: i64,
    combo: i64,
) -> TableRow {
    TableRow {
        numeral,
        points,
        psi2,
        psi3,
        combo,
    }
}

const TABLE1: [TableRow; 12] = [
    row("I", [2, 3, 4, 1], 0, 0, 0),
    row("II", [1, 3, 6, 2], 8, 2, 10),
    row("II", [2, 4, 5, 1], 6, 3, 3),
    row("II", [2, 4, 6, 1], 6, 3, 3),
    row("III", [3, 4, 5, 1], 6, 3, 3),
    row("IV", [1, 3, 6, 2], 8, 2, 10),
    row("V", [1, 2, 6, 3], 8, 3, 7),
    row("V", [1, 2, 6, 4], 10, 3, 11),
    row("VI", [1, 4, 6, 2], 10, 3, 11),
    row("VI", [1, 4, 6, 3], 12, 3, 18),
    row("VII", [1, 3, 4, 2], 12, 3, 15),
    row("VIII", [4, 5, 6, 1], 12, 3, 15),
];

const TABLE2: [TableRow; 11] = [
    row("II", [1, 2, 3, 4], 8, 2, 10),
    row("III", [1, 2, 3, 4], 8, 2, 10),
    row("IV", [1, 2, 3, 4], 4, 4, -4),
    row("V", [1, 2, 4, 5], 6, 4, 0),
    row("V", [1, 4, 5, 6], 8, 3, 7),
    row("VI", [1, 2, 4, 5], 8, 4, 4),
    row("VI", [1, 2, 3, 4], 10, 3, 11),
    row("VI", [1, 2, 3, 6], 10, 4, 8),
    row("VII", [1, 2, 3, 5], 8, 4, 4),
    row("VIII", [1, 2, 4, 5], 10, 4, 8),
    row("IX", [1, 2, 3, 4], 12, 4, 12),
];

/// The printed rows of table 1 or 2.
pub fn expected_rows(which: u8) -> &'static [TableRow] {
    match which {
        1 => &TABLE1,
        2 => &TABLE2,
        _ => &[],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparedRow {
    pub expected: TableRow,
    pub computed: TableRow,
    /// The printed row is internally inconsistent (`combo ≠ 2·Ψ₂ − 3·Ψ₃`).
    pub printed_inconsistent: bool,
    /// Which printed entries differ from the recomputation.
    pub mismatched: Vec<&'static str>,
}

impl ComparedRow {
    pub fn matches(&self) -> bool {
        self.mismatched.is_empty()
    }
}

/// Recomputes a row: the coefficients of `y_e y_f` in `Ψ₂` and `Ψ₃`,
/// where `{e, f}` is the complement of the row's four points.
pub fn compute_row(expected: &TableRow) -> TableRow {
    let m = builtin(expected.numeral).expect("catalog numeral").matroid;
    let s = expected.set();
    let ef = Monomial::from_vars(m.ground().difference(s).iter());
    let coeff = |k| -> i64 {
        let c: Rational = psi(&m, s, k).expect("valid set").coefficient(&ef);
        i64::try_from(c.to_integer()).expect("small integer")
    };
    let (psi2, psi3) = (coeff(2), coeff(3));
    TableRow {
        psi2,
        psi3,
        combo: 2 * psi2 - 3 * psi3,
        ..expected.clone()
    }
}

pub fn table_rows(which: u8) -> Vec<ComparedRow> {
    expected_rows(which)
        .iter()
        .map(|e| {
            let c = compute_row(e);
            let mut mismatched = Vec::new();
            if c.psi2 != e.psi2 {
                mismatched.push("psi2");
            }
            if c.psi3 != e.psi3 {
                mismatched.push("psi3");
            }
            if c.combo != e.combo {
                mismatched.push("combo");
            }
            ComparedRow {
                expected: e.clone(),
                computed: c,
                printed_inconsistent: !e.is_consistent(),
                mismatched,
            }
        })
        .collect()
}

/// `W4` inside `K5`: hub 0 and rim 1-2-3-4; deleting the two rim diagonals
/// `{1,3}` and `{2,4}` leaves the wheel. Returns the deleted `K5` edges and
/// the map from wheel elements to `K5` edges.
pub fn w4_in_k5() -> (ElementSet, Vec<usize>) {
    let k5 = Graph::complete(5);
    let w4 = Graph::wheel(4);
    let find = |(u, v): (usize, usize)| {
        k5.edges()
            .iter()
            .position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            .expect("edge of K5")
    };
    let map: Vec<usize> = w4.edges().iter().map(|&e| find(e)).collect();
    let deleted = [(1, 3), (2, 4)].iter().map(|&e| find(e)).collect();
    (deleted, map)
}

/// A coarse isomorphism invariant for rank-3 configurations: basis count,
/// the sorted multiset of nontrivial line sizes, and how many pairs of
/// those lines meet.
pub fn line_signature(m: &Matroid) -> (usize, Vec<usize>, usize) {
    let n = m.nelems();
    let mut lines: Vec<ElementSet> = Vec::new();
    for t in ElementSet::full(n).subsets_of_size(3) {
        if m.is_basis(t) || lines.iter().any(|l| t.is_subset(*l)) {
            continue;
        }
        // closure of a dependent triple in a simple rank-3 matroid
        let line = (0..n).filter(|&e| m.rank_of(t.with(e)) == 2).collect();
        lines.push(line);
    }
    let mut sizes: Vec<usize> = lines.iter().map(|l| l.len()).collect();
    sizes.sort_unstable();
    let meeting = lines
        .iter()
        .tuple_combinations()
        .filter(|(x, y)| !x.is_disjoint(**y))
        .count();
    (m.bases().len(), sizes, meeting)
}
