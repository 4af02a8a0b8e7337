use num_traits::{Signed, Zero};

use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Exact `P[perm][perm] = L D L^T` with `L` unit lower triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ldl {
    /// Row/column `i` of the factored matrix is row/column `perm[i]` of `P`.
    pub perm: Vec<usize>,
    pub pivots: Vec<Rational>,
    /// Strictly-lower multipliers; `lower[i][k]` for `k < i`, the diagonal
    /// (implicitly 1) and above are stored as zero.
    pub lower: Matrix,
}

impl Ldl {
    /// Rebuilds `P` in the original order from the factors.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.perm.len();
        let l = |i: usize, k: usize| -> Rational {
            if i == k {
                Rational::from_integer(1.into())
            } else {
                self.lower[i][k].clone()
            }
        };
        let mut out = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for k in 0..=i.min(j) {
                    s += l(i, k) * &self.pivots[k] * l(j, k);
                }
                out[self.perm[i]][self.perm[j]] = s;
            }
        }
        out
    }

    pub fn is_valid_shape(&self) -> bool {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        for &p in &self.perm {
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        self.pivots.len() == n
            && self.lower.len() == n
            && self
                .lower
                .iter()
                .enumerate()
                .all(|(i, row)| row.len() == n && row[i..].iter().all(Zero::is_zero))
    }
}

pub fn is_symmetric(q: &Matrix) -> bool {
    let n = q.len();
    q.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| q[i][j] == q[j][i]))
}

/// Symmetric-pivoted exact `LDL^T`. Returns the factorization iff `q` is
/// positive semidefinite.
pub fn rational_psd(q: &Matrix) -> Option<Ldl> {
    if !is_symmetric(q) {
        return None;
    }
    let n = q.len();
    let mut a = q.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut lower = vec![vec![Rational::zero(); n]; n];
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let best = (k..n).max_by(|&i, &j| a[i][i].cmp(&a[j][j]).then(j.cmp(&i)))?;
        if (k..n).any(|i| a[i][i].is_negative()) {
            return None;
        }
        if best != k {
            a.swap(k, best);
            for row in a.iter_mut() {
                row.swap(k, best);
            }
            perm.swap(k, best);
            lower.swap(k, best);
            for row in lower.iter_mut() {
                row.swap(k, best);
            }
        }
        let d = a[k][k].clone();
        if d.is_zero() {
            // every remaining diagonal is zero; PSD forces the block to vanish
            if (k..n).any(|i| (k..n).any(|j| !a[i][j].is_zero())) {
                return None;
            }
            pivots.extend(std::iter::repeat_n(Rational::zero(), n - k));
            break;
        }
        for i in (k + 1)..n {
            let m = &a[i][k] / &d;
            if m.is_zero() {
                continue;
            }
            for j in (k + 1)..=i {
                let delta = &m * &a[k][j];
                a[i][j] -= &delta;
                if i != j {
                    a[j][i] = a[i][j].clone();
                }
            }
            lower[i][k] = m;
        }
        for i in (k + 1)..n {
            a[i][k] = Rational::zero();
            a[k][i] = Rational::zero();
        }
        pivots.push(d);
    }
    // lower was permuted alongside `a`; entries at or above the diagonal stay zero
    Some(Ldl {
        perm,
        pivots,
        lower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn identity() {
        let ldl = rational_psd(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(ldl.pivots, vec![int(1), int(1), int(1)]);
    }

    #[test]
    fn indefinite() {
        assert!(rational_psd(&m(&[&[1, 2], &[2, 1]])).is_none());
        assert!(rational_psd(&m(&[&[0, 1], &[1, 0]])).is_none());
        assert!(rational_psd(&m(&[&[1, 0], &[0, -1]])).is_none());
    }

    #[test]
    fn schur_complement_pivots() {
        let q = m(&[&[2, -1], &[-1, 2]]);
        let ldl = rational_psd(&q).unwrap();
        assert_eq!(ldl.pivots, vec![int(2), ratio(3, 2)]);
        assert_eq!(ldl.reconstruct(), q);
        assert!(ldl.is_valid_shape());
    }

    #[test]
    fn pivoting_and_singular() {
        let q = m(&[&[1, 2, 0], &[2, 5, 1], &[0, 1, 1]]);
        let ldl = rational_psd(&q).unwrap();
        assert_eq!(ldl.perm[0], 1);
        assert_eq!(ldl.reconstruct(), q);
        assert!(ldl.pivots.iter().any(|p| p.is_zero()));
        let z = m(&[&[0, 0], &[0, 3]]);
        assert_eq!(rational_psd(&z).unwrap().reconstruct(), z);
    }
}
