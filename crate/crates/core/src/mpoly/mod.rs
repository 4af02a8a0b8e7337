//! Sparse multivariate and dense univariate polynomials with exact rational
//! coefficients.
//!
//! [`MPoly`] keeps its terms in a `BTreeMap` keyed by [`Monomial`] in graded
//! lexicographic order, so iteration and the text form are deterministic.
//! Zero coefficients are never stored; the zero polynomial is the empty map.

mod intform;
mod monomial;
mod text;
mod uni;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

pub use intform::IntegerForm;
pub use monomial::Monomial;
pub use text::ParsePolyError;
pub use uni::UniPoly;

/// Index of a ground-set element or formal variable.
pub type VarId = usize;

/// Complex number with exact rational parts.
pub type GaussianRational = Complex<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MPolyError {
    #[error("no value supplied for variable y{0}")]
    MissingVariable(VarId),
    #[error("negative value supplied for variable y{0}")]
    NegativeValue(VarId),
    #[error("polynomial is not a quadratic form")]
    NotQuadratic,
}

/// Outcome of a homogeneity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Degree(u32),
    Mixed,
}

impl Homogeneity {
    pub fn degree(self) -> Option<u32> {
        match self {
            Homogeneity::Degree(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MPoly::term(Monomial::one(), c)
    }

    pub fn var(v: VarId) -> Self {
        MPoly::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Every coefficient is nonnegative.
    pub fn coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn is_homogeneous(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) if degrees.all(|e| e == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::Mixed,
        }
    }

    /// Largest monomial dividing every term (1 for the zero polynomial).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    /// Divides every term by `m`; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<MPoly> {
        let mut terms = BTreeMap::new();
        for (n, c) in &self.terms {
            terms.insert(n.div(m)?, c.clone());
        }
        Some(MPoly { terms })
    }

    pub fn evaluate(&self, point: &BTreeMap<VarId, Rational>) -> Result<Rational, MPolyError> {
        self.evaluate_with(|v| point.get(&v))
    }

    /// Evaluates with `point[v]` as the value of `y_v`.
    pub fn evaluate_dense(&self, point: &[Rational]) -> Result<Rational, MPolyError> {
        self.evaluate_with(|v| point.get(v))
    }

    pub fn evaluate_with<'a, F>(&self, lookup: F) -> Result<Rational, MPolyError>
    where
        F: Fn(VarId) -> Option<&'a Rational>,
    {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = lookup(v).ok_or(MPolyError::MissingVariable(v))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Exact evaluation at a point with Gaussian-rational coordinates.
    pub fn evaluate_gaussian(
        &self,
        point: &BTreeMap<VarId, GaussianRational>,
    ) -> Result<GaussianRational, MPolyError> {
        let mut total = GaussianRational::new(Rational::zero(), Rational::zero());
        for (m, c) in &self.terms {
            let mut t = GaussianRational::new(c.clone(), Rational::zero());
            for (v, e) in m.iter() {
                let z = point.get(&v).ok_or(MPolyError::MissingVariable(v))?;
                for _ in 0..e {
                    t = t * z.clone();
                }
            }
            total = total + t;
        }
        Ok(total)
    }

    /// `y_v^n * p(.., 1/y_v, ..)` with `n = deg_v(p)`.
    pub fn reflect(&self, v: VarId) -> MPoly {
        self.reflect_to(v, self.degree_in(v))
    }

    /// `y_v^n * p(.., 1/y_v, ..)` for an explicit `n >= deg_v(p)`.
    pub fn reflect_to(&self, v: VarId, n: u32) -> MPoly {
        assert!(n >= self.degree_in(v), "reflection degree below deg_v");
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.with_exponent(v, n - m.exponent(v)), c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, v: VarId) -> MPoly {
        MPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            (e > 0).then(|| {
                (
                    m.with_exponent(v, e - 1),
                    c * Rational::from_integer(e.into()),
                )
            })
        }))
    }

    /// The coefficient `P_k` in `P = sum_k P_k y_v^k`.
    pub fn coefficient_of(&self, v: VarId, k: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == k)
                .map(|(m, c)| (m.with_exponent(v, 0), c.clone()))
                .collect(),
        }
    }

    /// Substitutes polynomials for some variables; others are left alone.
    pub fn substitute(&self, subs: &BTreeMap<VarId, MPoly>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut t = MPoly::constant(c.clone());
            for (v, e) in m.iter() {
                match subs.get(&v) {
                    Some(q) => t = &t * &q.pow(e),
                    None => kept.push((v, e)),
                }
            }
            out = &out + &t.mul_monomial(&Monomial::from_exponents(kept));
        }
        out
    }

    /// The univariate polynomial `P(a x + b)`; `a` and `b` must be
    /// nonnegative and cover every variable of `P`.
    pub fn substitute_affine(
        &self,
        a: &BTreeMap<VarId, Rational>,
        b: &BTreeMap<VarId, Rational>,
    ) -> Result<UniPoly, MPolyError> {
        let mut linear: BTreeMap<VarId, Vec<UniPoly>> = BTreeMap::new();
        for v in self.vars() {
            let av = a.get(&v).ok_or(MPolyError::MissingVariable(v))?;
            let bv = b.get(&v).ok_or(MPolyError::MissingVariable(v))?;
            if av.is_negative() || bv.is_negative() {
                return Err(MPolyError::NegativeValue(v));
            }
            let base = UniPoly::new(vec![bv.clone(), av.clone()]);
            let mut powers = vec![UniPoly::one()];
            for _ in 0..self.degree_in(v) {
                let next = powers.last().unwrap() * &base;
                powers.push(next);
            }
            linear.insert(v, powers);
        }
        let mut total = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut t = UniPoly::constant(c.clone());
            for (v, e) in m.iter() {
                t = &t * &linear[&v][e as usize];
            }
            total = &total + &t;
        }
        Ok(total)
    }

    /// The symmetric matrix of a quadratic form in `vars`:
    /// `Q[i][i] = coeff(y_i^2)`, `Q[i][j] = coeff(y_i y_j) / 2`.
    pub fn quadratic_form_matrix(&self, vars: &[VarId]) -> Result<Vec<Vec<Rational>>, MPolyError> {
        let n = vars.len();
        let index = |v: VarId| vars.iter().position(|&w| w == v);
        let mut q = vec![vec![Rational::zero(); n]; n];
        let half = Rational::new(1.into(), 2.into());
        for (m, c) in &self.terms {
            if m.degree() != 2 {
                return Err(MPolyError::NotQuadratic);
            }
            let mut it = m.iter();
            match (it.next(), it.next()) {
                (Some((v, 2)), None) => {
                    let i = index(v).ok_or(MPolyError::NotQuadratic)?;
                    q[i][i] = c.clone();
                }
                (Some((v, 1)), Some((w, 1))) => {
                    let i = index(v).ok_or(MPolyError::NotQuadratic)?;
                    let j = index(w).ok_or(MPolyError::NotQuadratic)?;
                    q[i][j] = c * &half;
                    q[j][i] = c * &half;
                }
                _ => return Err(MPolyError::NotQuadratic),
            }
        }
        Ok(q)
    }

    /// Inverse of [`MPoly::quadratic_form_matrix`].
    pub fn from_quadratic_form(vars: &[VarId], q: &[Vec<Rational>]) -> MPoly {
        let mut p = MPoly::zero();
        for i in 0..vars.len() {
            p.add_term(Monomial::power(vars[i], 2), q[i][i].clone());
            for j in (i + 1)..vars.len() {
                let c = &q[i][j] + &q[j][i];
                p.add_term(Monomial::from_vars([vars[i], vars[j]]), c);
            }
        }
        p
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_poly(self, f)
    }
}
