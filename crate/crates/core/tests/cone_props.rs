mod common;

use common::{int_vec, normal_set, small_subsets};
use monotypy::cone::{
    cone_member, in_conical_position, independent_cones_intersect, is_conical, lift_conical,
    minimal_ray_pair, separated_from_origin, ConicalCertificate,
};
use monotypy::exact::{solve_nonneg, RMat, RVec, Rat};
use proptest::prelude::*;

fn vectors(dim: usize, max: usize) -> impl Strategy<Value = Vec<RVec>> {
    prop::collection::vec(int_vec(dim, 3), 1..=max)
        .prop_map(|v| v.into_iter().filter(|x| !x.is_zero()).collect::<Vec<_>>())
        .prop_filter("empty", |v| !v.is_empty())
}

/// Non-negative coordinates over some independent subset of size ≤ n.
fn brute_member(v: &[RVec], x: &RVec) -> bool {
    small_subsets(v.len(), x.dim()).into_iter().any(|s| {
        if s.is_empty() {
            return x.is_zero();
        }
        let cols: Vec<RVec> = s.iter().map(|&i| v[i].clone()).collect();
        let m = RMat::from_cols(&cols, x.dim());
        m.rank() == cols.len()
            && matches!(m.solve(x), Ok(Some(l)) if l.iter().all(|c| !c.is_negative()))
    })
}

/// Unimodular matrices from products of elementary shears.
fn unimodular(dim: usize) -> impl Strategy<Value = RMat> {
    prop::collection::vec((0..dim, 0..dim, -2i64..=2), 0..6).prop_map(move |ops| {
        let mut m = RMat::identity(dim);
        for (i, j, k) in ops {
            if i == j {
                continue;
            }
            let row = m.row(i).add_scaled(&Rat::from_int(k), m.row(j));
            for c in 0..dim {
                m.set(i, c, row[c].clone());
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn cone_member_matches_brute_force(
        (v, x) in (2usize..=3).prop_flat_map(|n| (vectors(n, 5), int_vec(n, 3)))
    ) {
        let got = cone_member(&v, &x).unwrap();
        if let Some(l) = &got {
            let sum = v.iter().zip(l.iter()).fold(RVec::zeros(x.dim()), |acc, (g, c)| acc.add_scaled(c, g));
            prop_assert_eq!(&sum, &x);
            prop_assert!(l.iter().all(|c| !c.is_negative()));
        }
        prop_assert_eq!(got.is_some(), brute_member(&v, &x));
    }

    #[test]
    fn separation_is_dual_to_convex_zero(v in (2usize..=4).prop_flat_map(|n| vectors(n, 6))) {
        let n = v[0].dim();
        let mut rows: Vec<RVec> = (0..n).map(|k| v.iter().map(|x| x[k].clone()).collect()).collect();
        rows.push(RVec::new(vec![Rat::one(); v.len()]));
        let mut b = RVec::zeros(n + 1).into_coords();
        b[n] = Rat::one();
        let zero_in_hull = solve_nonneg(&RMat::from_rows(rows), &RVec::new(b)).unwrap().is_some();
        let sep = separated_from_origin(&v);
        if let Some(c) = &sep {
            prop_assert!(v.iter().all(|x| c.dot(x).is_positive()));
        }
        prop_assert_eq!(sep.is_none(), zero_in_hull);
    }

    #[test]
    fn conical_position_survives_rescaling_and_unimodular_maps(
        (v, m, scales) in (2usize..=4).prop_flat_map(|n| (vectors(n, 5), unimodular(n), prop::collection::vec(1i64..=4, 5)))
    ) {
        let mapped: Vec<RVec> = v
            .iter()
            .zip(&scales)
            .map(|(x, &s)| m.mul_vec(x).scale(&Rat::from_int(s)))
            .collect();
        let before = in_conical_position(&v);
        let after = in_conical_position(&mapped);
        prop_assert_eq!(before.is_some(), after.is_some());
        if let (Some(b), Some(a)) = (before, after) {
            prop_assert!(b.validate(&v));
            prop_assert!(a.validate(&mapped));
            // the separator moves by the inverse transpose
            let moved = m.inverse().unwrap().transpose().mul_vec(&b.separator);
            let cert = ConicalCertificate { separator: moved, ..b };
            prop_assert!(mapped.iter().all(|x| cert.separator.dot(x).is_positive()));
        }
    }

    #[test]
    fn minimal_ray_pairs_are_minimal(
        (v1, v2) in (2usize..=3).prop_flat_map(|n| (vectors(n, 4), vectors(n, 4)))
    ) {
        if let Ok(rp) = minimal_ray_pair(&v1, &v2) {
            let pick = |v: &[RVec], s: &[usize]| s.iter().map(|&i| v[i].clone()).collect::<Vec<_>>();
            let (a, b) = (pick(&v1, &rp.first), pick(&v2, &rp.second));
            prop_assert!(independent_cones_intersect(&a, &b));
            for k in 0..a.len() {
                let mut less = a.clone();
                less.remove(k);
                prop_assert!(less.is_empty() || !independent_cones_intersect(&less, &b));
            }
            for k in 0..b.len() {
                let mut less = b.clone();
                less.remove(k);
                prop_assert!(less.is_empty() || !independent_cones_intersect(&a, &less));
            }
        }
    }

    #[test]
    fn lifted_sets_are_conical_and_spanning(
        (n, i, j, empty) in (2usize..=3).prop_flat_map(|d| (normal_set(d, d + 2, 8, 3), 0usize..8, 0usize..8, any::<bool>()))
    ) {
        let (i, j) = (i % n.len(), j % n.len());
        let seed: Vec<usize> = if i == j { vec![i] } else { vec![i.min(j), i.max(j)] };
        prop_assume!(is_conical(&n.pick(&seed)));
        if let Ok(x) = lift_conical(&n, &seed, empty) {
            prop_assert_eq!(x.len(), n.dim() + 1);
            prop_assert!(in_conical_position(&n.pick(&x)).is_some());
            prop_assert_eq!(monotypy::exact::rank_of(&n.pick(&x)), n.dim());
        }
    }
}
