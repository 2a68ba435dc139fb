#![allow(dead_code)]

use monotypy::cone::NormalSet;
use monotypy::exact::{RMat, RVec, Rat};
use monotypy::polytope::Polytope;
use proptest::prelude::*;

pub fn rat() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rat::new(n, d))
}

pub fn int_vec(dim: usize, bound: i64) -> impl Strategy<Value = RVec> {
    prop::collection::vec(-bound..=bound, dim).prop_map(|v| RVec::from_ints(&v))
}

pub fn rat_vec(dim: usize) -> impl Strategy<Value = RVec> {
    prop::collection::vec(rat(), dim).prop_map(RVec::new)
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RMat> {
    prop::collection::vec(rat_vec(cols), rows).prop_map(move |r| RMat::with_cols(r, cols))
}

/// Distinct primitive directions of a positively spanning set.
pub fn normal_set(
    dim: usize,
    min: usize,
    max: usize,
    bound: i64,
) -> impl Strategy<Value = NormalSet> {
    prop::collection::vec(int_vec(dim, bound), min..=max).prop_filter_map(
        "not positively spanning",
        move |raw| {
            let mut dirs: Vec<RVec> = Vec::new();
            for v in raw {
                if let Some(p) = v.primitive() {
                    if !dirs.contains(&p) {
                        dirs.push(p);
                    }
                }
            }
            let n = NormalSet::new(dim, dirs).ok()?;
            n.positively_spans().then_some(n)
        },
    )
}

/// The convex hull of a few small integer points, full-dimensional.
pub fn full_polytope(dim: usize, max_points: usize) -> impl Strategy<Value = Polytope> {
    prop::collection::vec(int_vec(dim, 3), dim + 1..=max_points).prop_filter_map(
        "flat",
        move |pts| {
            Polytope::from_points(dim, &pts)
                .ok()
                .filter(Polytope::is_full_dimensional)
        },
    )
}

/// All subsets of `0..n` of size at most `k`.
pub fn small_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize <= k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}
