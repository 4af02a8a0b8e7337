//! Generating polynomials of a matroid and the difference polynomials of the
//! correlation inequalities built from them.
//!
//! Every polynomial here keeps the parent's element labels as variable
//! indices: `minor_poly(M, I, J)` is a polynomial in `y_e` for
//! `e ∉ I ∪ J`, never in renumbered minor elements.

mod conditions;
mod weights;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::matroid::{ElementSet, Graph, Matroid, MatroidError};
use crate::mpoly::{MPoly, MPolyError, Monomial, UniPoly, VarId};
use crate::rational::{binomial, Rational};

pub use conditions::{
    check_condition, check_prop46, BlcVariant, ConditionId, ConditionOutcome, ConditionReport,
    ConditionWitness, Prop46Report, SetRecord, SetStatus,
};
pub use weights::{WeightAssignment, WeightError};

/// Above this many free variables the difference polynomials are only
/// evaluated numerically.
pub const SYMBOLIC_VAR_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenPolyError {
    #[error("contracted and deleted sets overlap")]
    OverlappingSets,
    #[error("element {0} outside the ground set")]
    ElementOutOfRange(usize),
    #[error("the two elements must differ")]
    SameElement,
    #[error("set has {got} elements, expected {expected}")]
    WrongSetSize { expected: usize, got: usize },
    #[error("invalid sets: {0}")]
    InvalidSets(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("denominator evaluates to zero")]
    ZeroDenominator,
    #[error("index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error(transparent)]
    Poly(#[from] MPolyError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

fn check_in_ground(m: &Matroid, s: ElementSet) -> Result<(), GenPolyError> {
    match s.difference(m.ground()).max_element() {
        Some(e) => Err(GenPolyError::ElementOutOfRange(e)),
        None => Ok(()),
    }
}

fn monomial_of(s: ElementSet) -> Monomial {
    Monomial::from_vars(s.iter())
}

/// `M(y) = sum over bases B of y^B`.
pub fn basis_poly(m: &Matroid) -> MPoly {
    MPoly::from_terms(m.bases().iter().map(|b| (monomial_of(*b), Rational::one())))
}

/// `M_I^J(y)`: sum of `y^(B \ I)` over bases with `I ⊆ B ⊆ E \ J`.
pub fn minor_poly(
    m: &Matroid,
    contract: ElementSet,
    delete: ElementSet,
) -> Result<MPoly, GenPolyError> {
    if !contract.is_disjoint(delete) {
        return Err(GenPolyError::OverlappingSets);
    }
    check_in_ground(m, contract.union(delete))?;
    Ok(minor_poly_unchecked(m, contract, delete))
}

fn minor_poly_unchecked(m: &Matroid, contract: ElementSet, delete: ElementSet) -> MPoly {
    MPoly::from_terms(
        m.bases()
            .iter()
            .filter(|b| contract.is_subset(**b) && b.is_disjoint(delete))
            .map(|b| (monomial_of(b.difference(contract)), Rational::one())),
    )
}

/// `[M_0(S,y), .., M_|S|(S,y)]`, splitting `M(y)` by `|B ∩ S|`.
pub fn mj_slices(m: &Matroid, s: ElementSet) -> Result<Vec<MPoly>, GenPolyError> {
    check_in_ground(m, s)?;
    let mut out = vec![MPoly::zero(); s.len() + 1];
    for b in m.bases() {
        out[b.intersection(s).len()].add_term(monomial_of(*b), Rational::one());
    }
    Ok(out)
}

/// Slice values at a point, computed straight from the bases.
pub fn mj_values(
    m: &Matroid,
    s: ElementSet,
    w: &WeightAssignment,
) -> Result<Vec<Rational>, GenPolyError> {
    check_in_ground(m, s)?;
    let weights = dense_weights(m, w)?;
    let mut out = vec![Rational::zero(); s.len() + 1];
    for b in m.bases() {
        out[b.intersection(s).len()] += weight_of(&weights, *b);
    }
    Ok(out)
}

fn dense_weights(m: &Matroid, w: &WeightAssignment) -> Result<Vec<Rational>, GenPolyError> {
    (0..m.nelems())
        .map(|e| {
            w.get(e)
                .cloned()
                .ok_or(MPolyError::MissingVariable(e).into())
        })
        .collect()
}

fn weight_of(weights: &[Rational], b: ElementSet) -> Rational {
    b.iter().fold(Rational::one(), |acc, e| acc * &weights[e])
}

/// `π = (S, T, C_1, .., C_k)` with quotas `c_i` on the blocks `C_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedPartition {
    pub s: ElementSet,
    pub t: ElementSet,
    pub blocks: Vec<ElementSet>,
    pub quotas: Vec<usize>,
}

impl OrderedPartition {
    pub fn new(
        nelems: usize,
        s: ElementSet,
        t: ElementSet,
        blocks: Vec<ElementSet>,
        quotas: Vec<usize>,
    ) -> Result<Self, GenPolyError> {
        let bad = |msg: &str| Err(GenPolyError::InvalidPartition(msg.to_string()));
        if blocks.len() != quotas.len() {
            return bad("one quota per block is required");
        }
        if blocks.iter().any(|c| c.is_empty()) {
            return bad("blocks must be nonempty");
        }
        let mut seen = ElementSet::EMPTY;
        for part in [s, t].iter().chain(&blocks) {
            if !seen.is_disjoint(*part) {
                return bad("parts overlap");
            }
            seen = seen.union(*part);
        }
        if seen != ElementSet::full(nelems) {
            return bad("parts do not cover the ground set");
        }
        if blocks.iter().zip(&quotas).any(|(c, &q)| q > c.len()) {
            return bad("quota exceeds its block");
        }
        Ok(OrderedPartition {
            s,
            t,
            blocks,
            quotas,
        })
    }
}

/// `sum_j M_j(π, w) x^j`, where `M_j(π, w)` sums `w^B` over bases with
/// `|B ∩ S| = j` and `|B ∩ C_i| = c_i` for every block.
pub fn partition_poly(
    m: &Matroid,
    pi: &OrderedPartition,
    w: &WeightAssignment,
) -> Result<UniPoly, GenPolyError> {
    if pi
        .s
        .union(pi.t)
        .union(pi.blocks.iter().fold(ElementSet::EMPTY, |a, c| a.union(*c)))
        != m.ground()
    {
        return Err(GenPolyError::InvalidPartition(
            "partition of a different ground set".into(),
        ));
    }
    let weights = dense_weights(m, w)?;
    let mut coeffs = vec![Rational::zero(); pi.s.len() + 1];
    for b in m.bases() {
        if pi
            .blocks
            .iter()
            .zip(&pi.quotas)
            .all(|(c, &q)| b.intersection(*c).len() == q)
        {
            coeffs[b.intersection(pi.s).len()] += weight_of(&weights, *b);
        }
    }
    Ok(UniPoly::new(coeffs))
}

/// `Ψ_k M S = sum over k-subsets A of S of M_A^(S\A) · M_(S\A)^A`, a
/// polynomial in the variables outside `S`.
pub fn psi(m: &Matroid, s: ElementSet, k: usize) -> Result<MPoly, GenPolyError> {
    check_in_ground(m, s)?;
    if k > s.len() {
        return Err(GenPolyError::IndexOutOfRange {
            index: k,
            max: s.len(),
        });
    }
    let mut total = MPoly::zero();
    for a in s.subsets_of_size(k) {
        let rest = s.difference(a);
        let left = minor_poly_unchecked(m, a, rest);
        if left.is_zero() {
            continue;
        }
        let right = minor_poly_unchecked(m, rest, a);
        total = &total + &(&left * &right);
    }
    Ok(total)
}

/// `Ψ_k M S` at a point, without building the polynomial.
pub fn psi_value(
    m: &Matroid,
    s: ElementSet,
    k: usize,
    w: &WeightAssignment,
) -> Result<Rational, GenPolyError> {
    check_in_ground(m, s)?;
    if k > s.len() {
        return Err(GenPolyError::IndexOutOfRange {
            index: k,
            max: s.len(),
        });
    }
    let weights = dense_weights(m, w)?;
    let minor = |contract: ElementSet, delete: ElementSet| -> Rational {
        m.bases()
            .iter()
            .filter(|b| contract.is_subset(**b) && b.is_disjoint(delete))
            .map(|b| weight_of(&weights, b.difference(contract)))
            .sum()
    };
    Ok(s.subsets_of_size(k)
        .map(|a| {
            let rest = s.difference(a);
            minor(a, rest) * minor(rest, a)
        })
        .sum())
}

/// `M_e^f · M_f^e − M_ef · M^ef`.
pub fn rayleigh_diff(m: &Matroid, e: usize, f: usize) -> Result<MPoly, GenPolyError> {
    if e == f {
        return Err(GenPolyError::SameElement);
    }
    let (se, sf) = (ElementSet::singleton(e), ElementSet::singleton(f));
    check_in_ground(m, se.union(sf))?;
    let both = se.union(sf);
    let lhs = &minor_poly_unchecked(m, se, sf) * &minor_poly_unchecked(m, sf, se);
    let rhs = &minor_poly_unchecked(m, both, ElementSet::EMPTY)
        * &minor_poly_unchecked(m, ElementSet::EMPTY, both);
    Ok(&lhs - &rhs)
}

fn check_lray_set(s: ElementSet, k: usize) -> Result<(), GenPolyError> {
    if k == 0 || s.len() != 2 * k {
        return Err(GenPolyError::WrongSetSize {
            expected: 2 * k,
            got: s.len(),
        });
    }
    Ok(())
}

/// `Ψ_k M S − λ Ψ_(k+1) M S` for `|S| = 2k`.
pub fn lray_diff(
    m: &Matroid,
    s: ElementSet,
    k: usize,
    lambda: &Rational,
) -> Result<MPoly, GenPolyError> {
    check_lray_set(s, k)?;
    Ok(&psi(m, s, k)? - &psi(m, s, k + 1)?.scale(lambda))
}

pub fn lray_value(
    m: &Matroid,
    s: ElementSet,
    k: usize,
    lambda: &Rational,
    w: &WeightAssignment,
) -> Result<Rational, GenPolyError> {
    check_lray_set(s, k)?;
    Ok(psi_value(m, s, k, w)? - lambda * psi_value(m, s, k + 1, w)?)
}

/// `M_A^B · M_B^A − M_(A+b)^(B−b) · M_(B−b)^(A+b)` for disjoint equal-size
/// `A`, `B` and `b ∈ B`.
pub fn prop46_diff(
    m: &Matroid,
    a: ElementSet,
    b_set: ElementSet,
    b: usize,
) -> Result<MPoly, GenPolyError> {
    check_in_ground(m, a.union(b_set))?;
    if !a.is_disjoint(b_set) {
        return Err(GenPolyError::InvalidSets("A and B must be disjoint".into()));
    }
    if a.len() != b_set.len() {
        return Err(GenPolyError::InvalidSets(
            "A and B must have equal size".into(),
        ));
    }
    if !b_set.contains(b) {
        return Err(GenPolyError::InvalidSets(format!("{b} is not in B")));
    }
    let (ab, bb) = (a.with(b), b_set.without(b));
    let lhs = &minor_poly_unchecked(m, a, b_set) * &minor_poly_unchecked(m, b_set, a);
    let rhs = &minor_poly_unchecked(m, ab, bb) * &minor_poly_unchecked(m, bb, ab);
    Ok(&lhs - &rhs)
}

/// Effective conductance between `v` and `w` when edge `i` has conductance
/// `wt[i]`: the spanning-tree polynomial of `G` over that of `G` with `v`
/// and `w` merged.
pub fn kirchhoff_conductance(
    g: &Graph,
    v: usize,
    w: usize,
    wt: &WeightAssignment,
) -> Result<Rational, GenPolyError> {
    for x in [v, w] {
        if x >= g.nverts() {
            return Err(GenPolyError::VertexOutOfRange(x));
        }
    }
    if v == w {
        return Err(GenPolyError::SameElement);
    }
    if !g.is_connected() {
        return Err(GenPolyError::DisconnectedGraph);
    }
    let map = wt.as_map();
    let whole = Matroid::graphic(g).map_err(|_| GenPolyError::DisconnectedGraph)?;
    let merged =
        Matroid::graphic(&g.identify(v, w)).map_err(|_| GenPolyError::DisconnectedGraph)?;
    let num = basis_poly(&whole).evaluate(map)?;
    let den = basis_poly(&merged).evaluate(map)?;
    if den.is_zero() {
        return Err(GenPolyError::ZeroDenominator);
    }
    Ok(num / den)
}

/// The constant `κ` in `M_j^2 ≥ κ M_(j−1) M_(j+1)` (strict for the last two).
pub fn blc_constant(variant: BlcVariant, n: usize, j: usize) -> Result<Rational, GenPolyError> {
    if j == 0 || j >= n {
        return Err(GenPolyError::IndexOutOfRange {
            index: j,
            max: n.saturating_sub(1),
        });
    }
    let r = |a: usize, b: usize| Rational::new(a.into(), b.into());
    Ok(match variant {
        BlcVariant::Blc => Rational::one() + r(n + 1, j * (n - j)),
        BlcVariant::SqrtBlc => Rational::one() + r(1, j.min(n - j)),
        BlcVariant::Slc => Rational::one(),
    })
}

/// `M_j(S,w)^2 − κ M_(j−1)(S,w) M_(j+1)(S,w)`.
pub fn blc_margin(
    m: &Matroid,
    s: ElementSet,
    w: &WeightAssignment,
    j: usize,
    variant: BlcVariant,
) -> Result<Rational, GenPolyError> {
    let kappa = blc_constant(variant, s.len(), j)?;
    let vals = mj_values(m, s, w)?;
    Ok(&vals[j] * &vals[j] - kappa * &vals[j - 1] * &vals[j + 1])
}

/// The margin as a polynomial in all the variables.
pub fn blc_margin_poly(
    m: &Matroid,
    s: ElementSet,
    j: usize,
    variant: BlcVariant,
) -> Result<MPoly, GenPolyError> {
    let kappa = blc_constant(variant, s.len(), j)?;
    let sl = mj_slices(m, s)?;
    Ok(&(&sl[j] * &sl[j]) - &(&sl[j - 1] * &sl[j + 1]).scale(&kappa))
}

/// Substitutes `y_e -> poly` for each listed variable; used to collapse a
/// difference polynomial onto a one-parameter family of weights.
pub fn specialize(p: &MPoly, subs: &BTreeMap<VarId, MPoly>) -> MPoly {
    p.substitute(subs)
}

/// One level of the free-extension experiment: the slice count
/// `L_j(S, 1)` of `T_r(M ⊕ U_{ℓ,ℓ})`, where `S` is the set of added points,
/// against `C(ℓ, j) · I_{r-j}(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasonLevel {
    pub j: usize,
    pub observed: Rational,
    pub expected: Rational,
}

/// The matroid `T_r(M ⊕ U_{ℓ,ℓ})` with its added points last.
pub fn free_extension_truncation(
    m: &Matroid,
    ell: usize,
    r: usize,
) -> Result<(Matroid, ElementSet), GenPolyError> {
    let sum = m.direct_sum(&Matroid::uniform(ell, ell)?)?;
    let added = ElementSet::full(sum.nelems()).difference(m.ground());
    Ok((sum.truncate(r)?, added))
}

pub fn mason_levels(m: &Matroid, ell: usize, r: usize) -> Result<Vec<MasonLevel>, GenPolyError> {
    let (l, added) = free_extension_truncation(m, ell, r)?;
    let ones = WeightAssignment::uniform(l.ground().iter(), Rational::one()).expect("positive");
    let slices = mj_values(&l, added, &ones)?;
    let profile = m.independence_profile();
    Ok((0..=r)
        .map(|j| {
            let count = r
                .checked_sub(j)
                .and_then(|i| profile.get(i))
                .copied()
                .unwrap_or(0);
            MasonLevel {
                j,
                observed: slices.get(j).cloned().unwrap_or_else(Rational::zero),
                expected: Rational::from_integer(binomial(ell, j) * count),
            }
        })
        .collect())
}
