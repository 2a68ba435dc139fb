//! Convex hulls of point sets and Minkowski sums.

use std::collections::BTreeSet;

use super::{HPoly, Polytope, PolytopeError};
use crate::exact::{affine_dim, complement_basis, nonneg_combination, rank_of, RMat, RVec, Rat};
use crate::subsets::combinations;

/// Points that are not convex combinations of the others.
fn extreme_points(points: &[RVec]) -> Vec<RVec> {
    let lifted: Vec<RVec> = points
        .iter()
        .map(|p| {
            p.iter()
                .cloned()
                .chain(std::iter::once(Rat::one()))
                .collect()
        })
        .collect();
    (0..points.len())
        .filter(|&i| {
            let others: Vec<RVec> = lifted
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, x)| x.clone())
                .collect();
            !matches!(nonneg_combination(&others, &lifted[i]), Ok(Some(_)))
        })
        .map(|i| points[i].clone())
        .collect()
}

/// Row basis of the direction space of an affine point set.
fn direction_basis(points: &[RVec], dim: usize) -> Vec<RVec> {
    let diffs: Vec<RVec> = points[1..].iter().map(|p| p.sub(&points[0])).collect();
    if diffs.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = RMat::with_cols(diffs, dim).rref();
    r.into_rows().into_iter().take(pivots.len()).collect()
}

/// Facets of the hull found by brute force over affinely independent
/// `d`-subsets of the extreme points; for a flat set the affine hull is
/// added as opposite constraint pairs.
pub(super) fn convex_hull(dim: usize, points: &[RVec]) -> Result<Polytope, PolytopeError> {
    if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
        return Err(PolytopeError::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let distinct: Vec<RVec> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if distinct.is_empty() {
        return Err(PolytopeError::Empty);
    }
    let ext = extreme_points(&distinct);
    let d = affine_dim(&ext) as usize;
    let span = direction_basis(&ext, dim);
    let complement = complement_basis(&span, dim);

    let mut rows: Vec<(RVec, Rat)> = Vec::new();
    let mut seen = BTreeSet::new();
    if d > 0 {
        for subset in combinations(ext.len(), d) {
            let base = &ext[subset[0]];
            let diffs: Vec<RVec> = subset[1..].iter().map(|&i| ext[i].sub(base)).collect();
            if rank_of(&diffs) != d - 1 {
                continue;
            }
            let mut constraints = complement.clone();
            constraints.extend(diffs);
            let kernel = RMat::with_cols(constraints, dim).nullspace();
            let [u] = kernel.as_slice() else {
                return Err(PolytopeError::Invariant(
                    "facet normal is not unique".into(),
                ));
            };
            let h = u.dot(base);
            let mut above = false;
            let mut below = false;
            for x in &ext {
                let v = u.dot(x);
                above |= v > h;
                below |= v < h;
            }
            let (u, h) = match (above, below) {
                (false, _) => (u.clone(), h),
                (true, false) => (u.neg(), -h),
                (true, true) => continue,
            };
            let key = u.primitive().expect("non-zero normal");
            if seen.insert(key) {
                rows.push((u, h));
            }
        }
    }
    for c in &complement {
        let h = c.dot(&ext[0]);
        rows.push((c.neg(), -h.clone()));
        rows.push((c.clone(), h));
    }
    let hrep = HPoly::from_constraints(dim, rows)?;
    Ok(Polytope::assemble(hrep, ext))
}

/// `P ⊕ Q`, the hull of all pairwise vertex sums.
pub fn minkowski_sum(p: &Polytope, q: &Polytope) -> Result<Polytope, PolytopeError> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(PolytopeError::DimensionMismatch {
            expected: p.ambient_dim(),
            found: q.ambient_dim(),
        });
    }
    let sums: Vec<RVec> = p
        .vertices()
        .iter()
        .flat_map(|v| q.vertices().iter().map(move |w| v.add(w)))
        .collect();
    convex_hull(p.ambient_dim(), &sums)
}

#[cfg(test)]
mod tests {
    use super::super::shapes::cube;
    use super::super::{poly_equal, vertex_enumerate};
    use super::*;

    fn pts(rows: &[&[i64]]) -> Vec<RVec> {
        rows.iter().map(|r| RVec::from_ints(r)).collect()
    }

    #[test]
    fn hull_matches_enumeration() {
        let c = cube(3, 1);
        let mut cloud = c.vertices().to_vec();
        cloud.push(RVec::zeros(3));
        cloud.push(RVec::from_ints(&[1, 0, 0]));
        let h = Polytope::from_points(3, &cloud).unwrap();
        assert!(poly_equal(&h, &c));
        assert!(h.is_irredundant());
        assert!(poly_equal(&vertex_enumerate(h.hrep()).unwrap(), &c));
    }

    #[test]
    fn flat_hulls() {
        let seg = Polytope::from_points(2, &pts(&[&[0, 0], &[1, 0]])).unwrap();
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.vertices().len(), 2);
        let point = Polytope::from_points(3, &pts(&[&[1, 2, 3]])).unwrap();
        assert_eq!(point.dim(), 0);
        let tri = Polytope::from_points(3, &pts(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1]])).unwrap();
        assert_eq!(tri.dim(), 2);
        assert!(poly_equal(&vertex_enumerate(tri.hrep()).unwrap(), &tri));
    }

    #[test]
    fn sum_examples() {
        let unit = Polytope::from_points(2, &pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let two = Polytope::from_points(2, &pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]])).unwrap();
        assert!(poly_equal(&minkowski_sum(&unit, &unit).unwrap(), &two));

        let dot = Polytope::from_points(2, &pts(&[&[3, -1]])).unwrap();
        let shifted = unit.translate(&RVec::from_ints(&[3, -1]));
        assert!(poly_equal(&minkowski_sum(&unit, &dot).unwrap(), &shifted));

        let t1 = Polytope::from_points(2, &pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        let t2 = Polytope::from_points(2, &pts(&[&[0, 0], &[-1, 0], &[0, -1]])).unwrap();
        let hex = minkowski_sum(&t1, &t2).unwrap();
        assert_eq!(hex.vertices().len(), 6);
        assert_eq!(hex.normals().len(), 6);
    }
}
