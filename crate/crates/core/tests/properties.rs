use std::collections::BTreeMap;

use matroid_ineq::catalog::builtin;
use matroid_ineq::genpoly::{
    basis_poly, blc_constant, kirchhoff_conductance, minor_poly, mj_slices, psi, BlcVariant,
    WeightAssignment,
};
use matroid_ineq::hpp::{EisRational, Eisenstein};
use matroid_ineq::mpoly::Monomial;
use matroid_ineq::positivity::{orthant_nonneg, rational_psd, Matrix, SamplerConfig, Verdict};
use matroid_ineq::realroot::{is_real_rooted, newton_blc_check, padded_coeffs};
use matroid_ineq::{ElementSet, Graph, MPoly, Matroid, Rational, UniPoly};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const NAMES: &[&str] = &[
    "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "Fano", "Pappus", "W3", "W4", "K4",
    "K33", "U2,4", "U3,6",
];

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn matroid_and_set(max_size: usize) -> impl Strategy<Value = (Matroid, ElementSet)> {
    (prop::sample::select(NAMES), any::<u64>()).prop_map(move |(name, bits)| {
        let m = builtin(name).unwrap().matroid;
        let mut s = ElementSet(bits).intersection(m.ground());
        while s.len() > max_size {
            s = s.without(s.max_element().unwrap());
        }
        (m, s)
    })
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..200, 1i64..20).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn weights(n: usize) -> impl Strategy<Value = WeightAssignment> {
    prop::collection::vec(positive_rational(), n)
        .prop_map(|v| WeightAssignment::new(v.into_iter().enumerate().collect()).unwrap())
}

/// Determinant by fraction-based elimination, kept separate from the
/// library's LDL code.
fn det(mut a: Matrix) -> Rational {
    let n = a.len();
    let mut d = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        d *= &a[k][k];
        for i in (k + 1)..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

/// PSD iff every principal minor is nonnegative.
fn psd_by_minors(q: &Matrix) -> bool {
    let n = q.len();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let sub = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| q[i][j].clone()).collect())
            .collect();
        !det(sub).is_negative()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_is_symmetric_and_dualizes((m, s) in matroid_and_set(4)) {
        let dual = m.dual();
        let outside: Vec<usize> = m.ground().difference(s).iter().collect();
        for k in 0..=s.len() {
            let p = psi(&m, s, k).unwrap();
            prop_assert_eq!(&p, &psi(&m, s, s.len() - k).unwrap());
            let reflected = outside.iter().fold(p, |acc, &v| acc.reflect_to(v, 2));
            prop_assert_eq!(psi(&dual, s, k).unwrap(), reflected);
        }
    }

    #[test]
    fn deletion_contraction((m, s) in matroid_and_set(1)) {
        if let Some(e) = s.max_element() {
            let single = ElementSet::singleton(e);
            let avoid = minor_poly(&m, ElementSet::EMPTY, single).unwrap();
            let contain = minor_poly(&m, single, ElementSet::EMPTY).unwrap();
            prop_assert_eq!(basis_poly(&m), &avoid + &contain.mul_monomial(&Monomial::var(e)));
        }
    }

    #[test]
    fn slices_sum_to_basis_poly((m, s) in matroid_and_set(6)) {
        let total = mj_slices(&m, s).unwrap().iter().fold(MPoly::zero(), |acc, p| &acc + p);
        prop_assert_eq!(total, basis_poly(&m));
    }

    #[test]
    fn sum_of_squares_inequality(r in prop::collection::vec(positive_rational(), 2..=8)) {
        let n = r.len() as i64;
        let sum: Rational = r.iter().cloned().sum();
        let mut cross = Rational::zero();
        for i in 0..r.len() {
            for j in (i + 1)..r.len() {
                cross += &r[i] * &r[j];
            }
        }
        let rhs = Rational::new((2 * n).into(), (n - 1).into()) * cross;
        let lhs = &sum * &sum;
        prop_assert!(lhs >= rhs);
        prop_assert_eq!(lhs == rhs, r.iter().all(|x| *x == r[0]));
    }

    #[test]
    fn conductance_is_monotone(
        name in prop::sample::select(&["K4", "W4", "W5", "K33"][..]),
        w in weights(10),
        bump in positive_rational(),
        edge in 0usize..10,
        ends in (0usize..6, 0usize..6),
    ) {
        let g: Graph = match builtin(name).unwrap().provenance {
            matroid_ineq::catalog::Provenance::Graphic(g) => g,
            _ => unreachable!(),
        };
        let (v, x) = (ends.0 % g.nverts(), ends.1 % g.nverts());
        prop_assume!(v != x);
        let ne = g.edges().len();
        let base: BTreeMap<usize, Rational> = w.iter().filter(|(e, _)| *e < ne).map(|(e, r)| (e, r.clone())).collect();
        let mut raised = base.clone();
        let e = edge % ne;
        raised.insert(e, &base[&e] + &bump);
        let before = kirchhoff_conductance(&g, v, x, &WeightAssignment::new(base).unwrap()).unwrap();
        let after = kirchhoff_conductance(&g, v, x, &WeightAssignment::new(raised).unwrap()).unwrap();
        prop_assert!(after >= before);
    }

    #[test]
    fn real_rooted_polys_are_binomially_log_concave(roots in prop::collection::vec(positive_rational(), 1..=6)) {
        // nonpositive roots -r_i
        let p = roots.iter().fold(UniPoly::one(), |acc, r| &acc * &UniPoly::new(vec![r.clone(), q(1)]));
        let rr = is_real_rooted(&p);
        prop_assert!(rr.real_rooted && rr.all_nonpositive);
        let n = roots.len();
        prop_assert!(newton_blc_check(&padded_coeffs(&p, n), n).unwrap());
        // an irreducible quadratic factor breaks real-rootedness
        let bad = &p * &UniPoly::new(vec![q(1), q(1), q(1)]);
        prop_assert!(!is_real_rooted(&bad).real_rooted);
    }

    #[test]
    fn ldl_agrees_with_principal_minors(
        n in 1usize..=6,
        entries in prop::collection::vec(-3i64..=3, 36),
        gram in any::<bool>(),
    ) {
        let a: Matrix = (0..n).map(|i| (0..n).map(|j| q(entries[i * 6 + j])).collect()).collect();
        let sym: Matrix = if gram {
            // A^T A is always PSD
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[k][i] * &a[k][j]).sum()).collect()).collect()
        } else {
            (0..n).map(|i| (0..n).map(|j| q(entries[i.min(j) * 6 + i.max(j)])).collect()).collect()
        };
        let ldl = rational_psd(&sym);
        prop_assert_eq!(ldl.is_some(), psd_by_minors(&sym));
        if let Some(l) = ldl {
            let p: Vec<Vec<Rational>> = l.reconstruct();
            let permuted: Matrix = (0..n).map(|i| (0..n).map(|j| sym[l.perm[i]][l.perm[j]].clone()).collect()).collect();
            prop_assert!(p == sym || p == permuted);
        }
    }

    #[test]
    fn certified_forms_are_nonnegative(
        coeffs in prop::collection::vec(-6i64..=12, 6),
        points in prop::collection::vec(prop::collection::vec(positive_rational(), 3), 100),
    ) {
        // a ternary quadratic form
        let names = ["y0^2", "y1^2", "y2^2", "y0 y1", "y0 y2", "y1 y2"];
        let text: Vec<String> = coeffs.iter().zip(names).map(|(c, m)| format!("{c} {m}")).collect();
        let p: MPoly = text.join(" + ").parse().unwrap();
        if let Verdict::NonnegCertified(c) = orthant_nonneg(&p, &SamplerConfig::default().with_trials(50)) {
            prop_assert!(c.verify(&p));
            for pt in &points {
                let at: BTreeMap<usize, Rational> = pt.iter().cloned().enumerate().collect();
                prop_assert!(!p.evaluate(&at).unwrap().is_negative());
            }
        }
    }

    #[test]
    fn falsified_witnesses_replay(coeffs in prop::collection::vec(-6i64..=6, 6)) {
        let names = ["y0^2", "y1^2", "y2^2", "y0 y1", "y0 y2", "y1 y2"];
        let text: Vec<String> = coeffs.iter().zip(names).map(|(c, m)| format!("{c} {m}")).collect();
        let p: MPoly = text.join(" + ").parse().unwrap();
        let cfg = SamplerConfig::default().with_trials(200);
        let v = orthant_nonneg(&p, &cfg);
        prop_assert_eq!(&v, &orthant_nonneg(&p, &cfg));
        if let Some(w) = v.witness() {
            prop_assert!(w.verify(&p));
        }
    }

    #[test]
    fn eisenstein_norm_is_multiplicative(x in prop::collection::vec(-20i64..=20, 4)) {
        let z: EisRational = Eisenstein::new(q(x[0]), q(x[1]));
        let w: EisRational = Eisenstein::new(q(x[2]), q(x[3]));
        let zw = &z * &w;
        prop_assert_eq!(zw.norm(), z.norm() * w.norm());
        prop_assert_eq!(zw.conj(), &z.conj() * &w.conj());
        if !z.is_zero() {
            prop_assert_eq!(zw.div(&z).unwrap(), w);
        }
    }
}

#[test]
fn constant_chain_is_exhaustive_up_to_twelve() {
    for n in 2..=12 {
        for j in 1..n {
            let sqrt = blc_constant(BlcVariant::SqrtBlc, n, j).unwrap();
            let blc = blc_constant(BlcVariant::Blc, n, j).unwrap();
            assert!(sqrt < blc, "n={n} j={j}");
            assert!(blc <= &sqrt * &sqrt, "n={n} j={j}");
        }
    }
}

#[test]
fn hpp_search_respects_closure() {
    use matroid_ineq::hpp::{hpp_sample_test, HppVerdict};
    let cfg = SamplerConfig::default().with_trials(150);
    let u24 = Matroid::uniform(2, 4).unwrap();
    let k4 = builtin("K4").unwrap().matroid;
    for m in [
        u24.clone(),
        k4.clone(),
        u24.dual(),
        u24.direct_sum(&k4).unwrap(),
        k4.truncate(2).unwrap(),
    ] {
        assert_eq!(
            hpp_sample_test(&m, &cfg).verdict,
            HppVerdict::NoCounterexampleFound
        );
    }
}
