//! Seeded search for points of the open positive orthant where a polynomial
//! is negative.
//!
//! Trial `t` draws its point from ChaCha stream `t` of the configured seed,
//! so trials can run in parallel and still merge deterministically: the
//! lowest failing trial index wins.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{SamplerConfig, Witness};
use crate::genpoly::WeightAssignment;
use crate::mpoly::{IntegerForm, MPoly, VarId};
use crate::rational::Rational;

const ODD_NUMERATORS: [i64; 4] = [1, 3, 5, 7];
const CHUNK: usize = 1 << 12;

/// Deterministic per-trial generator.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn pow2(e: i64) -> Rational {
    let two = BigInt::from(2);
    if e >= 0 {
        Rational::from_integer(num_traits::pow(two, e as usize))
    } else {
        Rational::new(BigInt::one(), num_traits::pow(two, (-e) as usize))
    }
}

/// A log-uniform positive weight: odd numerator in `{1,3,5,7}` times `2^e`,
/// `e` uniform in `[-range, range]`.
pub fn draw_weight<R: Rng>(rng: &mut R, log2_range: u32) -> Rational {
    let b = log2_range as i64;
    let e = rng.gen_range(-b..=b);
    let odd = ODD_NUMERATORS[rng.gen_range(0..ODD_NUMERATORS.len())];
    pow2(e) * Rational::from_integer(odd.into())
}

pub fn draw_point(seed: u64, trial: u64, nvars: usize, log2_range: u32) -> Vec<Rational> {
    let mut rng = trial_rng(seed, trial);
    (0..nvars)
        .map(|_| draw_weight(&mut rng, log2_range))
        .collect()
}

/// Runs `test(trial)` for `0..trials` in parallel chunks and returns the
/// smallest trial index for which it succeeded.
pub fn first_success<F>(trials: u64, test: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync,
{
    let mut start = 0u64;
    while start < trials {
        let end = (start + CHUNK as u64).min(trials);
        let hit = (start..end).into_par_iter().filter(|&t| test(t)).min();
        if hit.is_some() {
            return hit;
        }
        start = end;
    }
    None
}

struct Objective<'a> {
    poly: &'a MPoly,
    vars: &'a [VarId],
    degree: Option<u32>,
}

impl Objective<'_> {
    fn point_map(&self, point: &[Rational]) -> BTreeMap<VarId, Rational> {
        self.vars
            .iter()
            .copied()
            .zip(point.iter().cloned())
            .collect()
    }

    fn value(&self, point: &[Rational]) -> Rational {
        self.poly
            .evaluate(&self.point_map(point))
            .expect("point covers every variable")
    }

    /// Scale-free for homogeneous polynomials: `p(w) / (sum w)^d`.
    fn score(&self, point: &[Rational]) -> Rational {
        let v = self.value(point);
        match self.degree {
            Some(d) if d > 0 => {
                let s: Rational = point.iter().sum();
                v / num_traits::pow(s, d as usize)
            }
            _ => v,
        }
    }
}

/// Ternary coordinate descent: each coordinate tries `w * (1 + 2^-d)` and
/// `w * (1 - 2^-(d+1))` for depths `d = 0..depth`, keeping strict
/// improvements inside `[2^-range, 7 * 2^range]`.
fn refine(
    obj: &Objective<'_>,
    mut point: Vec<Rational>,
    depth: u32,
    log2_range: u32,
) -> Vec<Rational> {
    let lo = pow2(-(log2_range as i64));
    let hi = pow2(log2_range as i64) * Rational::from_integer(7.into());
    let mut best = obj.score(&point);
    for d in 0..depth {
        let up = Rational::one() + pow2(-(d as i64));
        let down = Rational::one() - pow2(-(d as i64) - 1);
        let mut improved = true;
        let mut sweeps = 0;
        while improved && sweeps < 8 {
            improved = false;
            sweeps += 1;
            for i in 0..point.len() {
                for f in [&up, &down] {
                    let cand = &point[i] * f;
                    if cand < lo || cand > hi {
                        continue;
                    }
                    let mut trial = point.clone();
                    trial[i] = cand;
                    let s = obj.score(&trial);
                    if s < best {
                        best = s;
                        point = trial;
                        improved = true;
                    }
                }
            }
        }
    }
    point
}

/// Searches for a positive rational point with `p < 0`.
pub fn sample_falsify(p: &MPoly, cfg: &SamplerConfig) -> Option<Witness> {
    if p.is_zero() {
        return None;
    }
    let vars: Vec<VarId> = p.vars().into_iter().collect();
    if vars.is_empty() {
        let c = p.coefficient(&crate::mpoly::Monomial::one());
        return c.is_negative().then(|| Witness {
            point: WeightAssignment::default(),
            value: c,
        });
    }
    let form = IntegerForm::new(p);
    debug_assert_eq!(form.vars(), vars.as_slice());
    let trial = first_success(cfg.trials, |t| {
        let pt = draw_point(cfg.seed, t, vars.len(), cfg.log2_range);
        form.sign_at(&pt) == Ordering::Less
    })?;
    let start = draw_point(cfg.seed, trial, vars.len(), cfg.log2_range);
    let obj = Objective {
        poly: p,
        vars: &vars,
        degree: p.is_homogeneous().degree(),
    };
    let point = refine(&obj, start, cfg.grid_refine, cfg.log2_range);
    let value = obj.value(&point);
    assert!(value.is_negative(), "refinement keeps the violation");
    Some(Witness {
        point: WeightAssignment::new(obj.point_map(&point)).expect("sampled weights are positive"),
        value,
    })
}
