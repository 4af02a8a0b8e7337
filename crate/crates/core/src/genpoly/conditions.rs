//! Whole-matroid checks of the RZ / BLC / √BLC / SLC hierarchies and of
//! λ-Ray[k], aggregated over every required subset `S`.
//!
//! Sets are visited in a fixed order (by size, then lexicographically) and
//! each set gets its own seed, so reports are reproducible and the first
//! failing set is well defined even though sets are checked in parallel.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{
    blc_constant, blc_margin, blc_margin_poly, lray_diff, lray_value, minor_poly, mj_slices,
    mj_values, prop46_diff, rayleigh_diff, GenPolyError, WeightAssignment, SYMBOLIC_VAR_LIMIT,
};
use crate::matroid::{ElementSet, Matroid};
use crate::mpoly::{MPoly, UniPoly, VarId};
use crate::positivity::{
    coeffwise_nonneg, draw_point, first_success, orthant_nonneg, Certificate, SamplerConfig,
    Verdict,
};
use crate::rational::{parse_rational, Rational};
use crate::realroot::is_real_rooted;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlcVariant {
    Blc,
    SqrtBlc,
    Slc,
}

impl BlcVariant {
    /// √BLC and SLC demand a strict inequality.
    pub fn is_strict(self) -> bool {
        !matches!(self, BlcVariant::Blc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConditionId {
    Rz(usize),
    Blc(usize),
    SqrtBlc(usize),
    Slc(usize),
    LRay { k: usize, lambda: Rational },
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionId::Rz(m) => write!(f, "RZ[{m}]"),
            ConditionId::Blc(m) => write!(f, "BLC[{m}]"),
            ConditionId::SqrtBlc(m) => write!(f, "sqrtBLC[{m}]"),
            ConditionId::Slc(m) => write!(f, "SLC[{m}]"),
            ConditionId::LRay { k, lambda } => write!(f, "{lambda}-Ray[{k}]"),
        }
    }
}

impl FromStr for ConditionId {
    type Err = String;

    /// Inverse of `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("unrecognized condition `{s}`");
        let (head, rest) = s.trim().split_once('[').ok_or_else(bad)?;
        let m: usize = rest
            .strip_suffix(']')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        Ok(match head {
            "RZ" => ConditionId::Rz(m),
            "BLC" => ConditionId::Blc(m),
            "sqrtBLC" => ConditionId::SqrtBlc(m),
            "SLC" => ConditionId::Slc(m),
            _ => {
                let lambda = head.strip_suffix("-Ray").ok_or_else(bad)?;
                let lambda = parse_rational(lambda).map_err(|_| bad())?;
                if !lambda.is_positive() {
                    return Err(bad());
                }
                ConditionId::LRay { k: m, lambda }
            }
        })
    }
}

/// A point where the condition fails on `set` (and slice index `index`
/// for the BLC family, level `k` for λ-Ray).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionWitness {
    pub set: ElementSet,
    pub index: Option<usize>,
    pub point: WeightAssignment,
    /// The violated margin, exactly; absent for RZ, where `detail` holds the
    /// specialized polynomial that is not real-rooted.
    pub value: Option<Rational>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetStatus {
    /// Holds on the whole orthant; `None` when it is trivially true.
    Holds(Option<Certificate>),
    Fails(ConditionWitness),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetRecord {
    pub set: ElementSet,
    pub index: Option<usize>,
    /// The polynomial that was decided, when one was built.
    pub poly: Option<MPoly>,
    pub status: SetStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionOutcome {
    Certified,
    Falsified(ConditionWitness),
    Unknown,
}

impl ConditionOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            ConditionOutcome::Certified => "certified",
            ConditionOutcome::Falsified(_) => "falsified",
            ConditionOutcome::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub condition: ConditionId,
    pub outcome: ConditionOutcome,
    pub records: Vec<SetRecord>,
    /// Sampling budget spent per decided polynomial.
    pub trials_per_item: u64,
}

impl ConditionReport {
    pub fn count(&self, pred: impl Fn(&SetStatus) -> bool) -> usize {
        self.records.iter().filter(|r| pred(&r.status)).count()
    }
}

fn sets_by_size(ground: ElementSet, sizes: impl Iterator<Item = usize>) -> Vec<ElementSet> {
    sizes
        .flat_map(|n| ground.subsets_of_size(n).collect::<Vec<_>>())
        .collect()
}

/// Per-item seed; distinct items draw from unrelated streams.
fn item_seed(seed: u64, item: usize) -> u64 {
    seed.wrapping_add((item as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn weights_of(vars: &[VarId], point: &[Rational]) -> WeightAssignment {
    WeightAssignment::new(vars.iter().copied().zip(point.iter().cloned()).collect())
        .expect("positive sample")
}

/// Decides `p >= 0` (or `> 0` when `strict`) on the orthant.
fn decide_poly(
    p: &MPoly,
    strict: bool,
    cfg: &SamplerConfig,
    set: ElementSet,
    index: Option<usize>,
) -> SetStatus {
    if strict {
        // strict positivity: a nonzero polynomial with nonnegative
        // coefficients is positive on the open orthant
        if !p.is_zero() && coeffwise_nonneg(p) {
            return SetStatus::Holds(Some(Certificate::Coefficientwise));
        }
        if p.is_zero() {
            return SetStatus::Fails(ConditionWitness {
                set,
                index,
                point: WeightAssignment::default(),
                value: Some(Rational::zero()),
                detail: Some("margin vanishes identically".into()),
            });
        }
        return match crate::positivity::sample_falsify(p, cfg) {
            Some(w) => SetStatus::Fails(ConditionWitness {
                set,
                index,
                point: w.point,
                value: Some(w.value),
                detail: None,
            }),
            None => SetStatus::Unknown,
        };
    }
    match orthant_nonneg(p, cfg) {
        Verdict::NonnegCertified(c) => SetStatus::Holds(Some(c)),
        Verdict::Falsified(w) => SetStatus::Fails(ConditionWitness {
            set,
            index,
            point: w.point,
            value: Some(w.value),
            detail: None,
        }),
        Verdict::Unknown => SetStatus::Unknown,
    }
}

/// Sampling-only λ-Ray check for sets with too many free variables.
fn lray_numeric(
    m: &Matroid,
    s: ElementSet,
    k: usize,
    lambda: &Rational,
    cfg: &SamplerConfig,
) -> SetStatus {
    let vars: Vec<VarId> = (0..m.nelems()).collect();
    let value_at = |t: u64| {
        let w = weights_of(&vars, &draw_point(cfg.seed, t, vars.len(), cfg.log2_range));
        (lray_value(m, s, k, lambda, &w).expect("valid set"), w)
    };
    match first_success(cfg.trials, |t| value_at(t).0.is_negative()) {
        Some(t) => {
            let (value, point) = value_at(t);
            SetStatus::Fails(ConditionWitness {
                set: s,
                index: Some(k),
                point,
                value: Some(value),
                detail: None,
            })
        }
        None => SetStatus::Unknown,
    }
}

/// First index and span of the nonzero slices.
fn slice_span(slices: &[MPoly]) -> Option<(usize, usize)> {
    let lo = slices.iter().position(|p| !p.is_zero())?;
    let hi = slices.iter().rposition(|p| !p.is_zero())?;
    Some((lo, hi - lo))
}

fn rz_for_set(m: &Matroid, s: ElementSet, cfg: &SamplerConfig) -> SetRecord {
    let slices = mj_slices(m, s).expect("set inside ground");
    let record = |poly, status| SetRecord {
        set: s,
        index: None,
        poly,
        status,
    };
    let (lo, span) = slice_span(&slices).expect("a matroid has a basis");
    if span <= 1 {
        return record(None, SetStatus::Holds(None));
    }
    if span == 2 && s.len() == 2 {
        let (r, status) = blc2_via_rayleigh(m, s, cfg);
        let status = match status {
            SetStatus::Fails(mut w) => {
                w.detail = Some(
                    UniPoly::new(mj_values(m, s, &w.point).expect("complete point")).to_string(),
                );
                w.value = None;
                w.index = None;
                SetStatus::Fails(w)
            }
            other => other,
        };
        return record(Some(r), status);
    }
    if span == 2 {
        // a quadratic is real-rooted iff its discriminant is nonnegative
        let disc = &(&slices[lo + 1] * &slices[lo + 1])
            - &(&slices[lo] * &slices[lo + 2]).scale(&Rational::from_integer(4.into()));
        let status = match decide_poly(&disc, false, cfg, s, None) {
            SetStatus::Fails(mut w) => {
                let vals =
                    mj_values(m, s, &complete_point(m, &w.point)).expect("weights cover ground");
                w.detail = Some(UniPoly::new(vals).to_string());
                w.value = None;
                SetStatus::Fails(w)
            }
            other => other,
        };
        return record(Some(disc), status);
    }
    let vars: Vec<VarId> = (0..m.nelems()).collect();
    let spec = |t: u64| {
        let w = weights_of(&vars, &draw_point(cfg.seed, t, vars.len(), cfg.log2_range));
        let p = UniPoly::new(mj_values(m, s, &w).expect("weights cover ground"));
        (p, w)
    };
    let status = match first_success(cfg.trials, |t| !is_real_rooted(&spec(t).0).real_rooted) {
        Some(t) => {
            let (p, point) = spec(t);
            SetStatus::Fails(ConditionWitness {
                set: s,
                index: None,
                point,
                value: None,
                detail: Some(p.to_string()),
            })
        }
        None => SetStatus::Unknown,
    };
    record(None, status)
}

/// Extends a witness on some variables by weight 1 on the rest.
fn complete_point(m: &Matroid, w: &WeightAssignment) -> WeightAssignment {
    let mut map = w.as_map().clone();
    for e in 0..m.nelems() {
        map.entry(e)
            .or_insert_with(|| Rational::from_integer(1.into()));
    }
    WeightAssignment::new(map).expect("positive")
}

/// For `S = {a, b}`,
/// `M_1^2 − 4 M_0 M_2 = (y_a M_a^b − y_b M_b^a)^2 + 4 y_a y_b (M_a^b M_b^a − M_ab M^ab)`,
/// so the margin is decided through the Rayleigh difference. A Rayleigh
/// violation at `y` becomes a margin violation by choosing `y_a / y_b` to
/// cancel the square.
fn blc2_via_rayleigh(m: &Matroid, s: ElementSet, cfg: &SamplerConfig) -> (MPoly, SetStatus) {
    let mut it = s.iter();
    let (a, b) = (it.next().unwrap(), it.next().unwrap());
    let r = rayleigh_diff(m, a, b).expect("distinct elements");
    let status = match decide_poly(&r, false, cfg, s, Some(1)) {
        // the lift needs both single-element minors positive; otherwise
        // fall back to the margin itself
        SetStatus::Fails(w) => lift_rayleigh_witness(m, s, a, b, &w).unwrap_or_else(|| {
            let margin = blc_margin_poly(m, s, 1, BlcVariant::Blc).expect("valid index");
            decide_poly(&margin, false, cfg, s, Some(1))
        }),
        other => other,
    };
    (r, status)
}

fn lift_rayleigh_witness(
    m: &Matroid,
    s: ElementSet,
    a: usize,
    b: usize,
    w: &ConditionWitness,
) -> Option<SetStatus> {
    let (sa, sb) = (ElementSet::singleton(a), ElementSet::singleton(b));
    let rest = complete_point(m, &w.point);
    let at = |p: MPoly| p.evaluate(rest.as_map()).ok();
    let ma = at(minor_poly(m, sa, sb).ok()?)?;
    let mb = at(minor_poly(m, sb, sa).ok()?)?;
    if !ma.is_positive() || !mb.is_positive() {
        return None;
    }
    let mut map = rest.as_map().clone();
    map.insert(a, mb);
    map.insert(b, ma);
    let point = WeightAssignment::new(map).ok()?;
    let value = blc_margin(m, s, &point, 1, BlcVariant::Blc).ok()?;
    value.is_negative().then(|| {
        SetStatus::Fails(ConditionWitness {
            set: s,
            index: Some(1),
            point,
            value: Some(value),
            detail: None,
        })
    })
}

fn blc_items(m: &Matroid, max: usize) -> Vec<(ElementSet, usize)> {
    sets_by_size(m.ground(), 2..=max.min(m.nelems()))
        .into_iter()
        .flat_map(|s| (1..s.len()).map(move |j| (s, j)))
        .collect()
}

fn blc_for_item(
    m: &Matroid,
    s: ElementSet,
    j: usize,
    variant: BlcVariant,
    cfg: &SamplerConfig,
) -> SetRecord {
    if variant == BlcVariant::Blc && s.len() == 2 {
        let (r, status) = blc2_via_rayleigh(m, s, cfg);
        return SetRecord {
            set: s,
            index: Some(j),
            poly: Some(r),
            status,
        };
    }
    let slices = mj_slices(m, s).expect("set inside ground");
    let p = blc_margin_poly(m, s, j, variant).expect("valid index");
    // the strict variants only constrain points where M_j(S, y) != 0, and a
    // nonzero M_j is positive everywhere on the orthant
    let status = if variant.is_strict() && slices[j].is_zero() {
        SetStatus::Holds(None)
    } else {
        let mut status = decide_poly(&p, variant.is_strict(), cfg, s, Some(j));
        if let SetStatus::Fails(w) = &mut status {
            if w.point.len() < m.nelems() && !p.vars().is_empty() {
                w.point = complete_point(m, &w.point);
            }
        }
        status
    };
    debug_assert!(blc_constant(variant, s.len(), j).is_ok());
    SetRecord {
        set: s,
        index: Some(j),
        poly: Some(p),
        status,
    }
}

fn lray_for_set(
    m: &Matroid,
    s: ElementSet,
    k: usize,
    lambda: &Rational,
    cfg: &SamplerConfig,
) -> SetRecord {
    let free = m.nelems() - s.len();
    if free > SYMBOLIC_VAR_LIMIT {
        return SetRecord {
            set: s,
            index: Some(k),
            poly: None,
            status: lray_numeric(m, s, k, lambda, cfg),
        };
    }
    let p = lray_diff(m, s, k, lambda).expect("set of size 2k");
    let status = decide_poly(&p, false, cfg, s, Some(k));
    SetRecord {
        set: s,
        index: Some(k),
        poly: Some(p),
        status,
    }
}

fn aggregate(
    condition: ConditionId,
    records: Vec<SetRecord>,
    trials_per_item: u64,
) -> ConditionReport {
    let first_fail = records.iter().find_map(|r| match &r.status {
        SetStatus::Fails(w) => Some(w.clone()),
        _ => None,
    });
    let outcome = match first_fail {
        Some(w) => ConditionOutcome::Falsified(w),
        None if records
            .iter()
            .all(|r| matches!(r.status, SetStatus::Holds(_))) =>
        {
            ConditionOutcome::Certified
        }
        None => ConditionOutcome::Unknown,
    };
    ConditionReport {
        condition,
        outcome,
        records,
        trials_per_item,
    }
}

/// Checks `cond` over every required subset. `cfg.trials` is the total
/// sampling budget, split evenly over the polynomials that need sampling.
pub fn check_condition(m: &Matroid, cond: &ConditionId, cfg: &SamplerConfig) -> ConditionReport {
    let budget = |items: usize| cfg.trials.div_ceil(items.max(1) as u64).max(1);
    let item_cfg = |i: usize, per: u64| SamplerConfig {
        seed: item_seed(cfg.seed, i),
        trials: per,
        ..cfg.clone()
    };
    match cond {
        ConditionId::LRay { k, lambda } => {
            let sets: Vec<ElementSet> = if 2 * k <= m.nelems() {
                m.ground().subsets_of_size(2 * k).collect()
            } else {
                Vec::new()
            };
            let per = budget(sets.len());
            let records = sets
                .par_iter()
                .enumerate()
                .map(|(i, &s)| lray_for_set(m, s, *k, lambda, &item_cfg(i, per)))
                .collect();
            aggregate(cond.clone(), records, per)
        }
        ConditionId::Rz(max) => {
            let sets = sets_by_size(m.ground(), 0..=(*max).min(m.nelems()));
            let per = budget(sets.len());
            let records = sets
                .par_iter()
                .enumerate()
                .map(|(i, &s)| rz_for_set(m, s, &item_cfg(i, per)))
                .collect();
            aggregate(cond.clone(), records, per)
        }
        ConditionId::Blc(max) | ConditionId::SqrtBlc(max) | ConditionId::Slc(max) => {
            let variant = match cond {
                ConditionId::Blc(_) => BlcVariant::Blc,
                ConditionId::SqrtBlc(_) => BlcVariant::SqrtBlc,
                _ => BlcVariant::Slc,
            };
            let items = blc_items(m, *max);
            let per = budget(items.len());
            let records = items
                .par_iter()
                .enumerate()
                .map(|(i, &(s, j))| blc_for_item(m, s, j, variant, &item_cfg(i, per)))
                .collect();
            aggregate(cond.clone(), records, per)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop46Report {
    /// The difference polynomial before specialization.
    pub full: MPoly,
    /// After substituting the requested weights.
    pub specialized: MPoly,
    pub verdict: Verdict,
}

/// Decides `M_A^B M_B^A >= M_(A+b)^(B-b) M_(B-b)^(A+b)` on the orthant,
/// optionally after substituting some variables (constants or other
/// variables) to restrict to a family of weightings.
pub fn check_prop46(
    m: &Matroid,
    a: ElementSet,
    b_set: ElementSet,
    b: usize,
    subs: &BTreeMap<VarId, MPoly>,
    cfg: &SamplerConfig,
) -> Result<Prop46Report, GenPolyError> {
    let full = prop46_diff(m, a, b_set, b)?;
    let specialized = full.substitute(subs);
    let verdict = orthant_nonneg(&specialized, cfg);
    Ok(Prop46Report {
        full,
        specialized,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Graph;
    use crate::rational::{int, ratio};

    #[test]
    fn condition_names_roundtrip() {
        for c in [
            ConditionId::Rz(3),
            ConditionId::Blc(2),
            ConditionId::SqrtBlc(4),
            ConditionId::Slc(5),
            ConditionId::LRay {
                k: 2,
                lambda: ratio(3, 2),
            },
        ] {
            assert_eq!(c.to_string().parse::<ConditionId>().unwrap(), c);
        }
        assert!("Ray[2]".parse::<ConditionId>().is_err());
        assert!("0-Ray[2]".parse::<ConditionId>().is_err());
    }

    #[test]
    fn uniform_is_rayleigh() {
        let m = Matroid::uniform(2, 4).unwrap();
        let r = check_condition(
            &m,
            &ConditionId::LRay {
                k: 1,
                lambda: int(2),
            },
            &SamplerConfig::default(),
        );
        assert_eq!(r.outcome, ConditionOutcome::Certified);
        assert_eq!(r.records.len(), 6);
    }

    #[test]
    fn rank_one_is_trivial() {
        let m = Matroid::uniform(1, 4).unwrap();
        let cfg = SamplerConfig::default();
        for c in [
            ConditionId::LRay {
                k: 1,
                lambda: int(5),
            },
            ConditionId::Rz(4),
            ConditionId::Blc(4),
            ConditionId::Slc(4),
        ] {
            assert_eq!(
                check_condition(&m, &c, &cfg).outcome,
                ConditionOutcome::Certified,
                "{c}"
            );
        }
    }

    #[test]
    fn blc2_reduction_lifts_witnesses() {
        // not a matroid: {0,1} and {2,3} with nothing in between
        let bad = Matroid::from_bases(4, [ElementSet(0b0011), ElementSet(0b1100)]).unwrap();
        let r = check_condition(&bad, &ConditionId::Blc(2), &SamplerConfig::default());
        match &r.outcome {
            ConditionOutcome::Falsified(w) => {
                let v =
                    super::super::blc_margin(&bad, w.set, &w.point, 1, BlcVariant::Blc).unwrap();
                assert_eq!(Some(v.clone()), w.value);
                assert!(v.is_negative());
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn graphic_k4_low_levels() {
        let m = Matroid::graphic(&Graph::complete(4)).unwrap();
        let cfg = SamplerConfig::default();
        assert_eq!(
            check_condition(&m, &ConditionId::Blc(2), &cfg).outcome,
            ConditionOutcome::Certified
        );
        assert_eq!(
            check_condition(&m, &ConditionId::Rz(2), &cfg).outcome,
            ConditionOutcome::Certified
        );
        let rz3 = check_condition(&m, &ConditionId::Rz(3), &cfg);
        assert!(!matches!(rz3.outcome, ConditionOutcome::Falsified(_)));
    }
}
