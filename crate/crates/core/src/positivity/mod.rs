//! Nonnegativity of polynomials on the open positive orthant.
//!
//! [`orthant_nonneg`] runs three tiers in order:
//!
//! 1. every coefficient is nonnegative;
//! 2. after stripping the common monomial factor, `p` is a quadratic form
//!    whose matrix splits as an entrywise-nonnegative part plus a positive
//!    semidefinite part (an exact copositivity certificate);
//! 3. after stripping the common monomial factor, `p` is a nonnegative
//!    combination of monomials plus `v^T G v` for a vector `v` of
//!    monomials and a positive semidefinite `G` (a monomial Gram
//!    certificate, built from the square terms of `p`);
//! 4. seeded sampling finds a point where `p < 0`.
//!
//! Anything else is [`Verdict::Unknown`].

mod certificate;
mod ldl;
mod sampler;

use num_traits::{Signed, Zero};

use crate::genpoly::WeightAssignment;
use crate::mpoly::{MPoly, MPolyError, Monomial, VarId};
use crate::rational::Rational;

pub use certificate::{
    format_certificate, parse_certificates, CertificateParseError, LabeledCertificate,
};
pub use ldl::{is_symmetric, rational_psd, Ldl, Matrix};
pub use sampler::{draw_point, draw_weight, first_success, sample_falsify, trial_rng};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SamplerConfig {
    pub seed: u64,
    pub trials: u64,
    /// Weights are drawn from `[2^-B, 7 * 2^B]`.
    pub log2_range: u32,
    /// Depth of the coordinate-descent refinement after a hit.
    pub grid_refine: u32,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 0,
            trials: 1000,
            log2_range: 6,
            grid_refine: 4,
        }
    }
}

impl SamplerConfig {
    pub fn with_trials(&self, trials: u64) -> Self {
        SamplerConfig {
            trials: trials.max(1),
            ..self.clone()
        }
    }
}

/// A point of the positive orthant and the (negative) exact value there.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub point: WeightAssignment,
    pub value: Rational,
}

impl Witness {
    /// Re-evaluates `p` at the stored point.
    pub fn verify(&self, p: &MPoly) -> bool {
        self.value.is_negative() && self.point.evaluate(p).ok().as_ref() == Some(&self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Coefficientwise,
    /// `p = factor * y^T (nonneg + psd) y` over `vars`, with
    /// `psd = L D L^T` replayed from `ldl`.
    QuadSplit {
        vars: Vec<VarId>,
        factor: Monomial,
        nonneg: Matrix,
        psd: Matrix,
        ldl: Ldl,
    },
    /// `p = factor * (remainder + v^T gram v)` with `v = basis`, a
    /// coefficientwise-nonnegative `remainder` and `gram = L D L^T`.
    Gram {
        factor: Monomial,
        basis: Vec<Monomial>,
        remainder: MPoly,
        gram: Matrix,
        ldl: Ldl,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Coefficientwise => "coefficientwise",
            Certificate::QuadSplit { .. } => "quadsplit",
            Certificate::Gram { .. } => "gram",
        }
    }

    /// Independent replay: checks every claim the certificate makes about `p`.
    pub fn verify(&self, p: &MPoly) -> bool {
        match self {
            Certificate::Coefficientwise => coeffwise_nonneg(p),
            Certificate::QuadSplit {
                vars,
                factor,
                nonneg,
                psd,
                ldl,
            } => {
                let n = vars.len();
                let square = |m: &Matrix| m.len() == n && m.iter().all(|r| r.len() == n);
                if !square(nonneg) || !square(psd) || ldl.perm.len() != n || !ldl.is_valid_shape() {
                    return false;
                }
                if !is_symmetric(nonneg) || nonneg.iter().flatten().any(Signed::is_negative) {
                    return false;
                }
                if ldl.pivots.iter().any(Signed::is_negative) || &ldl.reconstruct() != psd {
                    return false;
                }
                let q: Matrix = (0..n)
                    .map(|i| (0..n).map(|j| &nonneg[i][j] + &psd[i][j]).collect())
                    .collect();
                MPoly::from_quadratic_form(vars, &q).mul_monomial(factor) == *p
            }
            Certificate::Gram {
                factor,
                basis,
                remainder,
                gram,
                ldl,
            } => {
                let n = basis.len();
                if gram.len() != n || gram.iter().any(|r| r.len() != n) || ldl.perm.len() != n {
                    return false;
                }
                if !ldl.is_valid_shape()
                    || ldl.pivots.iter().any(Signed::is_negative)
                    || &ldl.reconstruct() != gram
                {
                    return false;
                }
                if !coeffwise_nonneg(remainder) {
                    return false;
                }
                let mut q = remainder.clone();
                for (i, mi) in basis.iter().enumerate() {
                    for (j, mj) in basis.iter().enumerate() {
                        q.add_term(mi.mul(mj), gram[i][j].clone());
                    }
                }
                q.mul_monomial(factor) == *p
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    NonnegCertified(Certificate),
    Falsified(Witness),
    Unknown,
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::NonnegCertified(_) => "certified",
            Verdict::Falsified(_) => "falsified",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::NonnegCertified(_))
    }

    pub fn is_falsified(&self) -> bool {
        matches!(self, Verdict::Falsified(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Falsified(w) => Some(w),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::NonnegCertified(c) => Some(c),
            _ => None,
        }
    }
}

pub fn coeffwise_nonneg(p: &MPoly) -> bool {
    p.coefficients_nonnegative()
}

/// Splits the form's matrix `Q` into its positive off-diagonal part `N` and
/// `P = Q - N`, and certifies when `P` is PSD. `p` must be a quadratic form
/// in `vars`.
pub fn quad_split_cert(p: &MPoly, vars: &[VarId]) -> Result<Option<Certificate>, MPolyError> {
    let q = p.quadratic_form_matrix(vars)?;
    let n = vars.len();
    let mut nonneg = vec![vec![Rational::zero(); n]; n];
    let mut psd = q.clone();
    for i in 0..n {
        for j in 0..n {
            if i != j && q[i][j].is_positive() {
                nonneg[i][j] = q[i][j].clone();
                psd[i][j] = Rational::zero();
            }
        }
    }
    Ok(rational_psd(&psd).map(|ldl| Certificate::QuadSplit {
        vars: vars.to_vec(),
        factor: Monomial::one(),
        nonneg,
        psd,
        ldl,
    }))
}

/// Tier 2 on an arbitrary polynomial: strips the monomial content and tries
/// the split when what remains is a quadratic form.
fn quad_tier(p: &MPoly) -> Option<Certificate> {
    let factor = p.monomial_content();
    let q = p.div_monomial(&factor)?;
    if q.is_homogeneous().degree() != Some(2) {
        return None;
    }
    let vars: Vec<VarId> = q.vars().into_iter().collect();
    match quad_split_cert(&q, &vars).ok()?? {
        Certificate::QuadSplit {
            vars,
            nonneg,
            psd,
            ldl,
            ..
        } => Some(Certificate::QuadSplit {
            vars,
            factor,
            nonneg,
            psd,
            ldl,
        }),
        c => Some(c),
    }
}

/// Square root of a monomial with all exponents even.
fn monomial_sqrt(m: &Monomial) -> Option<Monomial> {
    m.iter()
        .all(|(_, e)| e % 2 == 0)
        .then(|| Monomial::from_exponents(m.iter().map(|(v, e)| (v, e / 2))))
}

/// Tier 3. The basis is the square roots of the positive square terms;
/// each negative term is spread evenly over the off-diagonal entries whose
/// basis products equal it, and positive non-square terms go to the
/// remainder.
pub fn gram_cert(p: &MPoly) -> Option<Certificate> {
    let factor = p.monomial_content();
    let q = p.div_monomial(&factor)?;
    let basis: Vec<Monomial> = q
        .terms()
        .filter(|(_, c)| c.is_positive())
        .filter_map(|(m, _)| monomial_sqrt(m))
        .collect();
    let n = basis.len();
    let mut gram = vec![vec![Rational::zero(); n]; n];
    let mut remainder = MPoly::zero();
    for (m, c) in q.terms() {
        if let Some(i) = monomial_sqrt(m).and_then(|r| basis.iter().position(|b| *b == r)) {
            gram[i][i] = c.clone();
            continue;
        }
        if c.is_positive() {
            remainder.add_term(m.clone(), c.clone());
            continue;
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(|&(i, j)| basis[i].mul(&basis[j]) == *m)
            .collect();
        if pairs.is_empty() {
            return None;
        }
        let share = c / Rational::from_integer((2 * pairs.len()).into());
        for (i, j) in pairs {
            gram[i][j] = &gram[i][j] + &share;
            gram[j][i] = gram[i][j].clone();
        }
    }
    let ldl = rational_psd(&gram)?;
    Some(Certificate::Gram {
        factor,
        basis,
        remainder,
        gram,
        ldl,
    })
}

pub fn orthant_nonneg(p: &MPoly, cfg: &SamplerConfig) -> Verdict {
    if coeffwise_nonneg(p) {
        return Verdict::NonnegCertified(Certificate::Coefficientwise);
    }
    if let Some(c) = quad_tier(p).or_else(|| gram_cert(p)) {
        return Verdict::NonnegCertified(c);
    }
    match sample_falsify(p, cfg) {
        Some(w) => Verdict::Falsified(w),
        None => Verdict::Unknown,
    }
}
