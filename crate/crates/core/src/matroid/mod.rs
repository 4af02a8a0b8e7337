//! Matroids given explicitly by their basis families.
//!
//! The ground set is `{0, .., nelems-1}` with at most 64 elements, and each
//! basis is an [`ElementSet`] bitmask. Bases are kept sorted and deduplicated
//! so two matroids with the same basis family compare equal.

mod graph;
pub mod io;
mod set;

use std::collections::HashSet;

use thiserror::Error;

pub use graph::Graph;
pub use set::{ElementSet, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("matroid has no bases")]
    NoBases,
    #[error("bases have different cardinalities")]
    UnequalBases,
    #[error("element {0} outside the ground set")]
    ElementOutOfRange(usize),
    #[error("ground set of {0} elements exceeds the supported 64")]
    TooManyElements(usize),
    #[error("rank {rank} out of range (max {max})")]
    RankOutOfRange { rank: usize, max: usize },
    #[error("contracted and deleted sets overlap")]
    OverlappingSets,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    nelems: usize,
    rank: usize,
    bases: Vec<ElementSet>,
    name: Option<String>,
}

/// A minor together with the original label of each of its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub matroid: Matroid,
    /// `original[i]` is the element of the parent that became element `i`.
    pub original: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MasonCheck {
    pub holds: bool,
    pub first_violation: Option<usize>,
}

impl Matroid {
    /// Builds a matroid from an explicit basis family. Duplicates are
    /// removed; the exchange axiom is not checked here (see
    /// [`Matroid::validate_exchange`]).
    pub fn from_bases<I>(nelems: usize, bases: I) -> Result<Self, MatroidError>
    where
        I: IntoIterator<Item = ElementSet>,
    {
        if nelems > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements(nelems));
        }
        let ground = ElementSet::full(nelems);
        let mut bases: Vec<ElementSet> = bases.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        let first = *bases.first().ok_or(MatroidError::NoBases)?;
        let rank = first.len();
        for b in &bases {
            if !b.is_subset(ground) {
                return Err(MatroidError::ElementOutOfRange(
                    b.difference(ground).max_element().unwrap(),
                ));
            }
            if b.len() != rank {
                return Err(MatroidError::UnequalBases);
            }
        }
        Ok(Matroid {
            nelems,
            rank,
            bases,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn uniform(rank: usize, nelems: usize) -> Result<Self, MatroidError> {
        if rank > nelems {
            return Err(MatroidError::RankOutOfRange { rank, max: nelems });
        }
        if nelems > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements(nelems));
        }
        let bases = ElementSet::full(nelems).subsets_of_size(rank);
        Ok(Matroid::from_bases(nelems, bases)?.with_name(format!("U{rank},{nelems}")))
    }

    /// Cycle matroid of a graph: bases are the maximal spanning forests, edge
    /// `i` is element `i`, loops are matroid loops.
    pub fn graphic(g: &Graph) -> Result<Self, MatroidError> {
        let m = g.edges().len();
        if m > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements(m));
        }
        let rank = g.nverts() - g.component_count();
        let bases = ElementSet::full(m)
            .subsets_of_size(rank)
            .filter(|s| g.is_forest(*s));
        let mut out = Matroid::from_bases(m, bases)?;
        out.name = g.name().map(str::to_string);
        Ok(out)
    }

    pub fn nelems(&self) -> usize {
        self.nelems
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.nelems)
    }

    pub fn bases(&self) -> &[ElementSet] {
        &self.bases
    }

    pub fn is_basis(&self, s: ElementSet) -> bool {
        self.bases.binary_search(&s).is_ok()
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.bases.iter().any(|b| s.is_subset(*b))
    }

    /// Rank of an arbitrary subset: the largest intersection with a basis.
    pub fn rank_of(&self, s: ElementSet) -> usize {
        self.bases
            .iter()
            .map(|b| b.intersection(s).len())
            .max()
            .unwrap_or(0)
    }

    pub fn loops(&self) -> ElementSet {
        let covered = self
            .bases
            .iter()
            .fold(ElementSet::EMPTY, |a, b| a.union(*b));
        self.ground().difference(covered)
    }

    pub fn coloops(&self) -> ElementSet {
        self.bases
            .iter()
            .fold(self.ground(), |a, b| a.intersection(*b))
    }

    /// Basis exchange: for bases `B1, B2` and `e` in `B1 - B2` there is `f` in
    /// `B2 - B1` with `B1 - e + f` a basis.
    pub fn validate_exchange(&self) -> bool {
        self.bases.iter().all(|&b1| {
            self.bases.iter().all(|&b2| {
                b1.difference(b2).iter().all(|e| {
                    b2.difference(b1)
                        .iter()
                        .any(|f| self.is_basis(b1.without(e).with(f)))
                })
            })
        })
    }

    /// The minor `M_I^J`: contract `I`, delete `J`. Elements of the result
    /// are renumbered in increasing order of their original labels.
    pub fn contract_delete(
        &self,
        contract: ElementSet,
        delete: ElementSet,
    ) -> Result<Minor, MatroidError> {
        if !contract.is_disjoint(delete) {
            return Err(MatroidError::OverlappingSets);
        }
        for s in [contract, delete] {
            if let Some(e) = s.difference(self.ground()).max_element() {
                return Err(MatroidError::ElementOutOfRange(e));
            }
        }
        let original: Vec<usize> = self
            .ground()
            .difference(contract.union(delete))
            .iter()
            .collect();
        let relabel = |b: ElementSet| -> ElementSet {
            b.difference(contract)
                .iter()
                .map(|e| original.binary_search(&e).unwrap())
                .collect()
        };
        let avoid = self.ground().difference(delete);
        let bases: Vec<ElementSet> = self
            .bases
            .iter()
            .filter(|b| contract.is_subset(**b) && b.is_subset(avoid))
            .map(|b| relabel(*b))
            .collect();
        let matroid = Matroid::from_bases(original.len(), bases)?;
        Ok(Minor { matroid, original })
    }

    pub fn dual(&self) -> Matroid {
        let ground = self.ground();
        let mut out = Matroid::from_bases(
            self.nelems,
            self.bases.iter().map(|b| ground.difference(*b)),
        )
        .expect("complements of a basis family form a basis family");
        out.name = self.name.as_ref().map(|n| format!("{n}*"));
        out
    }

    /// Direct sum; the elements of `other` are shifted past those of `self`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        let n = self.nelems + other.nelems;
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements(n));
        }
        let shift = self.nelems;
        let bases = self.bases.iter().flat_map(|b| {
            other
                .bases
                .iter()
                .map(move |c| ElementSet(b.0 | (c.0 << shift)))
        });
        Matroid::from_bases(n, bases)
    }

    /// Truncation to rank `r`: bases are the independent `r`-sets.
    pub fn truncate(&self, r: usize) -> Result<Matroid, MatroidError> {
        if r == 0 || r > self.rank {
            return Err(MatroidError::RankOutOfRange {
                rank: r,
                max: self.rank,
            });
        }
        let bases = self.independent_sets_of_size(r);
        Matroid::from_bases(self.nelems, bases)
    }

    fn independent_sets_of_size(&self, k: usize) -> HashSet<ElementSet> {
        let mut out = HashSet::new();
        for b in &self.bases {
            out.extend(b.subsets_of_size(k));
        }
        out
    }

    /// `[I_0, .., I_rank]` where `I_j` counts the independent `j`-sets.
    pub fn independence_profile(&self) -> Vec<u64> {
        let mut seen: HashSet<ElementSet> = HashSet::new();
        for b in &self.bases {
            seen.extend(b.subsets());
        }
        let mut counts = vec![0u64; self.rank + 1];
        for s in seen {
            counts[s.len()] += 1;
        }
        counts
    }

    /// Checks `I_j^2 >= I_{j-1} I_{j+1}` for `1 <= j <= rank - 1`.
    pub fn mason_check(&self) -> MasonCheck {
        let prof = self.independence_profile();
        let first_violation = (1..self.rank).find(|&j| {
            let (a, b, c) = (prof[j - 1] as u128, prof[j] as u128, prof[j + 1] as u128);
            b * b < a * c
        });
        MasonCheck {
            holds: first_violation.is_none(),
            first_violation,
        }
    }

    /// Applies a permutation of the ground set: element `e` becomes `perm[e]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Matroid, MatroidError> {
        assert_eq!(perm.len(), self.nelems);
        let bases = self
            .bases
            .iter()
            .map(|b| b.iter().map(|e| perm[e]).collect());
        let mut out = Matroid::from_bases(self.nelems, bases)?;
        out.name = self.name.clone();
        Ok(out)
    }

    /// Same basis family, ignoring names.
    pub fn same_bases(&self, other: &Matroid) -> bool {
        self.nelems == other.nelems && self.bases == other.bases
    }
}
