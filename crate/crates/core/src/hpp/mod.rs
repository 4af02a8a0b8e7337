//! Half-plane property: sampled falsification and sixth-root-of-unity
//! representations.
//!
//! A homogeneous polynomial with nonnegative coefficients has the half-plane
//! property iff `P(a x + b)` is real-rooted for all nonnegative vectors `a`
//! and `b`. Sampling such specializations can only ever refute the
//! property; a clean run is reported as "no counterexample found".

mod eisenstein;
mod matrix;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;

use crate::genpoly::basis_poly;
use crate::matroid::Matroid;
use crate::mpoly::{GaussianRational, UniPoly, VarId};
use crate::positivity::{draw_weight, first_success, trial_rng, SamplerConfig};
use crate::rational::Rational;
use crate::realroot::is_real_rooted;

pub use eisenstein::{EisInt, EisRational, Eisenstein, ParseEisError};
pub use matrix::{
    determinant, format_matrix, parse_matrix, sixth_root_verify, weighted_gram_eval, EisMatrix,
    HppError,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HppWitness {
    pub a: BTreeMap<VarId, Rational>,
    pub b: BTreeMap<VarId, Rational>,
    /// `M(a x + b)`, which is not real-rooted.
    pub poly: UniPoly,
}

impl HppWitness {
    pub fn verify(&self, m: &Matroid) -> bool {
        basis_poly(m)
            .substitute_affine(&self.a, &self.b)
            .is_ok_and(|p| p == self.poly && !is_real_rooted(&p).real_rooted)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HppVerdict {
    NoCounterexampleFound,
    Falsified(HppWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HppReport {
    pub verdict: HppVerdict,
    /// Trials evaluated before stopping (the whole budget when clean).
    pub trials_run: u64,
}

/// Each coordinate is zero with probability 1/2, otherwise a log-uniform
/// positive weight.
fn sparse_vector<R: Rng>(rng: &mut R, n: usize, log2_range: u32) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Rational::zero()
            } else {
                draw_weight(rng, log2_range)
            }
        })
        .collect()
}

fn draw_specialization(
    seed: u64,
    trial: u64,
    n: usize,
    log2_range: u32,
) -> (BTreeMap<VarId, Rational>, BTreeMap<VarId, Rational>) {
    let mut rng = trial_rng(seed, trial);
    let a = sparse_vector(&mut rng, n, log2_range);
    let b = sparse_vector(&mut rng, n, log2_range);
    (
        a.into_iter().enumerate().collect(),
        b.into_iter().enumerate().collect(),
    )
}

pub fn hpp_sample_test(m: &Matroid, cfg: &SamplerConfig) -> HppReport {
    let p = basis_poly(m);
    let n = m.nelems();
    let specialize = |t: u64| {
        let (a, b) = draw_specialization(cfg.seed, t, n, cfg.log2_range);
        let q = p
            .substitute_affine(&a, &b)
            .expect("nonnegative and complete");
        (a, b, q)
    };
    match first_success(cfg.trials, |t| {
        !is_real_rooted(&specialize(t).2).real_rooted
    }) {
        Some(t) => {
            let (a, b, poly) = specialize(t);
            HppReport {
                verdict: HppVerdict::Falsified(HppWitness { a, b, poly }),
                trials_run: t + 1,
            }
        }
        None => HppReport {
            verdict: HppVerdict::NoCounterexampleFound,
            trials_run: cfg.trials,
        },
    }
}

/// Evaluates `M(y)` at Gaussian-rational points with positive real parts
/// and returns any point where it vanishes exactly.
pub fn complex_smoke_test(
    m: &Matroid,
    cfg: &SamplerConfig,
) -> Option<BTreeMap<VarId, GaussianRational>> {
    let p = basis_poly(m);
    let point = |t: u64| -> BTreeMap<VarId, GaussianRational> {
        let mut rng = trial_rng(cfg.seed, t);
        (0..m.nelems())
            .map(|e| {
                let re = draw_weight(&mut rng, cfg.log2_range);
                let im = match rng.gen_range(0..3) {
                    0 => Rational::zero(),
                    1 => draw_weight(&mut rng, cfg.log2_range),
                    _ => -draw_weight(&mut rng, cfg.log2_range),
                };
                (e, GaussianRational::new(re, im))
            })
            .collect()
    };
    let zero_at = |t: u64| {
        let v = p
            .evaluate_gaussian(&point(t))
            .expect("all variables present");
        v.re.is_zero() && v.im.is_zero()
    };
    first_success(cfg.trials, zero_at).map(point)
}

/// `true` iff `z` is one of the six sixth roots of unity.
pub fn is_sixth_root(z: &EisRational) -> bool {
    z.norm().is_one() && z.a.is_integer() && z.b.is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Graph;
    use crate::rational::int;

    #[test]
    fn hpp_examples() {
        let cfg = SamplerConfig::default().with_trials(300);
        let k4 = Matroid::graphic(&Graph::complete(4)).unwrap();
        assert_eq!(
            hpp_sample_test(&k4, &cfg).verdict,
            HppVerdict::NoCounterexampleFound
        );
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(
            hpp_sample_test(&u24, &cfg).verdict,
            HppVerdict::NoCounterexampleFound
        );
        let ones: BTreeMap<VarId, Rational> = (0..4).map(|e| (e, int(1))).collect();
        let spec = basis_poly(&u24).substitute_affine(&ones, &ones).unwrap();
        assert_eq!(spec, UniPoly::new(vec![int(6), int(12), int(6)]));
    }

    #[test]
    fn smoke_test_finds_no_zero_for_rank_one() {
        let cfg = SamplerConfig::default().with_trials(200);
        assert_eq!(
            complex_smoke_test(&Matroid::uniform(1, 2).unwrap(), &cfg),
            None
        );
    }

    #[test]
    fn sixth_roots() {
        let w = EisRational::omega();
        assert!((0..6).all(|k| is_sixth_root(&w.pow(k))));
        assert!(!is_sixth_root(&EisRational::new(int(2), int(0))));
    }
}
