use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{MPoly, VarId};
use crate::rational::Rational;

struct IntTerm {
    coeff: BigInt,
    small: Option<i128>,
    powers: Vec<(usize, u32)>,
}

/// A polynomial with denominators cleared (by a positive factor) and
/// variables renumbered densely, for repeated sign evaluation at integer
/// points. Tries `i128` arithmetic first and falls back to `BigInt` on
/// overflow.
pub struct IntegerForm {
    vars: Vec<VarId>,
    terms: Vec<IntTerm>,
    homogeneous: bool,
}

impl IntegerForm {
    pub fn new(p: &MPoly) -> Self {
        let vars: Vec<VarId> = p.vars().into_iter().collect();
        let denom = p
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = p
            .terms()
            .map(|(m, c)| {
                let coeff = c.numer() * (&denom / c.denom());
                IntTerm {
                    small: coeff.to_i128(),
                    coeff,
                    powers: m
                        .iter()
                        .map(|(v, e)| (vars.binary_search(&v).unwrap(), e))
                        .collect(),
                }
            })
            .collect();
        IntegerForm {
            vars,
            terms,
            homogeneous: p.is_homogeneous().degree().is_some() || p.is_zero(),
        }
    }

    /// Variables in the order expected by the evaluation methods.
    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    fn eval_small(&self, point: &[i128]) -> Option<i128> {
        let mut total: i128 = 0;
        for t in &self.terms {
            let mut acc = t.small?;
            for &(i, e) in &t.powers {
                for _ in 0..e {
                    acc = acc.checked_mul(point[i])?;
                }
            }
            total = total.checked_add(acc)?;
        }
        Some(total)
    }

    /// Scaled value `D * p(point)` for an integer point, `D > 0` fixed.
    pub fn eval_int(&self, point: &[BigInt]) -> BigInt {
        let small: Option<Vec<i128>> = point.iter().map(ToPrimitive::to_i128).collect();
        if let Some(v) = small.and_then(|s| self.eval_small(&s)) {
            return BigInt::from(v);
        }
        let mut total = BigInt::zero();
        for t in &self.terms {
            let mut acc = t.coeff.clone();
            for &(i, e) in &t.powers {
                acc *= num_traits::pow(point[i].clone(), e as usize);
            }
            total += acc;
        }
        total
    }

    /// Sign of `p` at a positive rational point (indexed like [`Self::vars`]).
    /// Homogeneous forms are evaluated on the integer multiple of the point.
    pub fn sign_at(&self, point: &[Rational]) -> Ordering {
        if !self.homogeneous {
            let mut total = Rational::zero();
            for t in &self.terms {
                let mut acc = Rational::from_integer(t.coeff.clone());
                for &(i, e) in &t.powers {
                    acc *= num_traits::pow(point[i].clone(), e as usize);
                }
                total += acc;
            }
            return total.numer().sign_ordering();
        }
        let l = point
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = point.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        self.eval_int(&ints).sign_ordering()
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}
