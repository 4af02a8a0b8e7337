//! Real-rootedness of univariate rational polynomials by Sturm sequences,
//! and the binomial-normalized Newton inequalities for coefficient lists.
//!
//! Multiple roots are handled by working with the square-free part
//! `p / gcd(p, p')`. Sign variations at `±∞` are read off the leading
//! coefficients of the chain, so no numerical evaluation happens anywhere.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::mpoly::UniPoly;
use crate::rational::{binomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealRootError {
    #[error("the zero polynomial has no square-free part")]
    ZeroPolynomial,
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// `p / gcd(p, p')`, made monic.
pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly, RealRootError> {
    if p.is_zero() {
        return Err(RealRootError::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    Ok(p.div_rem(&g).0.monic())
}

/// Signed remainder sequence `q, q', -rem(q, q'), ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    polys: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(q: &UniPoly) -> Self {
        let mut polys = Vec::new();
        if q.is_zero() {
            return SturmChain { polys };
        }
        polys.push(q.clone());
        let d = q.derivative();
        if d.is_zero() {
            return SturmChain { polys };
        }
        polys.push(d);
        loop {
            let n = polys.len();
            let r = polys[n - 2].rem(&polys[n - 1]);
            if r.is_zero() {
                break;
            }
            polys.push(-&r);
        }
        SturmChain { polys }
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.polys
    }

    fn variations(signs: impl Iterator<Item = bool>) -> usize {
        let s: Vec<bool> = signs.collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// `V(-∞) - V(+∞)`: distinct real roots of a square-free chain head.
    pub fn distinct_real_roots(&self) -> usize {
        let at_pos = Self::variations(
            self.polys
                .iter()
                .map(|p| p.leading().unwrap().is_positive()),
        );
        let at_neg = Self::variations(self.polys.iter().map(|p| {
            let odd = p.degree().unwrap() % 2 == 1;
            p.leading().unwrap().is_positive() != odd
        }));
        at_neg - at_pos
    }
}

/// Number of distinct real roots of a square-free nonzero polynomial.
pub fn count_real_roots(p: &UniPoly) -> Result<usize, RealRootError> {
    if p.is_zero() {
        return Err(RealRootError::ZeroPolynomial);
    }
    if p.gcd(&p.derivative()).degree().unwrap_or(0) > 0 {
        return Err(RealRootError::NotSquareFree);
    }
    Ok(SturmChain::new(p).distinct_real_roots())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealRootedness {
    /// Every complex root is real (vacuous for constants and zero).
    pub real_rooted: bool,
    /// Real-rooted and every root is `<= 0`.
    pub all_nonpositive: bool,
}

pub fn is_real_rooted(p: &UniPoly) -> RealRootedness {
    if p.degree().unwrap_or(0) == 0 {
        return RealRootedness {
            real_rooted: true,
            all_nonpositive: true,
        };
    }
    let sf = squarefree_part(p).expect("nonzero");
    let real_rooted = SturmChain::new(&sf).distinct_real_roots() == sf.degree().unwrap();
    // with only real roots, all of them are <= 0 iff no coefficient has the
    // opposite sign to the leading one
    let lead_pos = p.leading().unwrap().is_positive();
    let same_signs = p
        .coeffs()
        .iter()
        .all(|c| c.is_zero() || c.is_positive() == lead_pos);
    RealRootedness {
        real_rooted,
        all_nonpositive: real_rooted && same_signs,
    }
}

/// Checks `(c_j / C(n,j))^2 >= c_{j-1}/C(n,j-1) * c_{j+1}/C(n,j+1)` for
/// `1 <= j <= n-1`, on exactly `n + 1` coefficients.
pub fn newton_blc_check(coeffs: &[Rational], n: usize) -> Result<bool, RealRootError> {
    if coeffs.len() != n + 1 {
        return Err(RealRootError::LengthMismatch {
            expected: n + 1,
            got: coeffs.len(),
        });
    }
    let normalized: Vec<Rational> = coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| c / Rational::from_integer(binomial(n, j)))
        .collect();
    Ok((1..n).all(|j| &normalized[j] * &normalized[j] >= &normalized[j - 1] * &normalized[j + 1]))
}

/// Convenience: coefficient list of a polynomial padded to length `n + 1`.
pub fn padded_coeffs(p: &UniPoly, n: usize) -> Vec<Rational> {
    (0..=n).map(|i| p.coeff(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    fn from_roots(roots: &[Rational]) -> UniPoly {
        roots.iter().fold(UniPoly::one(), |acc, r| {
            &acc * &UniPoly::linear_root(r.clone())
        })
    }

    #[test]
    fn squarefree_examples() {
        let q = &(&p(&[1, 1]) * &p(&[1, 1])) * &p(&[2, 1]);
        assert_eq!(squarefree_part(&q).unwrap(), &p(&[1, 1]) * &p(&[2, 1]));
        assert_eq!(squarefree_part(&p(&[1, 0, 1])).unwrap(), p(&[1, 0, 1]));
        assert_eq!(squarefree_part(&p(&[5])).unwrap(), p(&[1]));
        assert_eq!(
            squarefree_part(&UniPoly::zero()),
            Err(RealRootError::ZeroPolynomial)
        );
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_real_roots(&p(&[-1, -1, 1])).unwrap(), 2);
        assert_eq!(count_real_roots(&p(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(count_real_roots(&p(&[0, -1, 0, 1])).unwrap(), 3);
        assert_eq!(
            count_real_roots(&p(&[1, 2, 1])),
            Err(RealRootError::NotSquareFree)
        );
        assert_eq!(count_real_roots(&p(&[3])).unwrap(), 0);
    }

    #[test]
    fn chain_shape() {
        let q = p(&[0, -1, 0, 1]);
        let chain = SturmChain::new(&q);
        assert_eq!(chain.polys()[0], q);
        assert_eq!(chain.polys()[1], q.derivative());
        assert_eq!(chain.polys().last().unwrap().degree(), Some(0));
    }

    #[test]
    fn real_rootedness_examples() {
        let r = is_real_rooted(&p(&[6, 12, 6]));
        assert!(r.real_rooted && r.all_nonpositive);
        assert!(!is_real_rooted(&p(&[1, 1, 1])).real_rooted);
        let pos = is_real_rooted(&from_roots(&[int(1), int(-2)]));
        assert!(pos.real_rooted && !pos.all_nonpositive);
        assert!(is_real_rooted(&UniPoly::zero()).real_rooted);
        assert!(is_real_rooted(&p(&[0, 0, 3])).all_nonpositive);
        let mixed = from_roots(&[ratio(-1, 3), ratio(-1, 3), int(0), int(-7)]);
        assert!(is_real_rooted(&mixed).all_nonpositive);
    }

    #[test]
    fn newton_examples() {
        assert!(newton_blc_check(&[int(1), int(3), int(3), int(1)], 3).unwrap());
        assert!(!newton_blc_check(&[int(1), int(1), int(1)], 2).unwrap());
        assert!(newton_blc_check(&[int(0), int(5), int(0)], 2).unwrap());
        assert_eq!(
            newton_blc_check(&[int(1)], 2),
            Err(RealRootError::LengthMismatch {
                expected: 3,
                got: 1
            })
        );
    }
}
