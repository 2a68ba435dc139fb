//! Minkowski summand and homothet-of-summand tests.

use serde::{Deserialize, Serialize};

use super::{face_in_direction, support, HPoly, Polytope, PolytopeError};
use crate::exact::{RVec, Rat};

/// One edge `[v, w]` of the container and its image in the candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeMatch {
    pub edge: (usize, usize),
    /// Candidate vertices `(s_v, s_w)`; equal when the edge collapses.
    pub image: (usize, usize),
    /// `ρ` with `s_w − s_v = ρ (w − v)`.
    #[serde(with = "crate::format::rat")]
    pub ratio: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SummandFailure {
    /// The candidate face for the normal cone of this vertex is not a vertex.
    NotAVertex { vertex: usize },
    /// The candidate vertex is not maximal for all normals at this vertex.
    WrongFace { vertex: usize },
    /// The image of this edge is not a non-negative multiple of it.
    NotParallel { edge: (usize, usize) },
    /// The image is longer than the edge.
    RatioTooLarge { edge: (usize, usize) },
    /// A candidate vertex is the image of no container vertex.
    UnmatchedVertex { vertex: usize },
    /// The support difference is not the support function of a polytope.
    NoComplement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandReport {
    pub is_summand: bool,
    pub edge_table: Vec<EdgeMatch>,
    pub failure: Option<SummandFailure>,
}

/// Vertex correspondence and edge ratios, with any ratio `ρ ≥ 0` allowed.
fn structure(s: &Polytope, p: &Polytope) -> Result<Vec<EdgeMatch>, SummandFailure> {
    let n = p.ambient_dim();
    let facets = p.facet_indices();
    let mut image = Vec::with_capacity(p.vertices().len());
    for v in 0..p.vertices().len() {
        let active: Vec<usize> = facets
            .iter()
            .copied()
            .filter(|&i| p.incidence()[i].binary_search(&v).is_ok())
            .collect();
        let u = active
            .iter()
            .fold(RVec::zeros(n), |acc, &i| acc.add(p.normals().get(i)));
        let face = face_in_direction(s, &u);
        let [sv] = face.vertices[..] else {
            return Err(SummandFailure::NotAVertex { vertex: v });
        };
        let x = &s.vertices()[sv];
        if active.iter().any(|&i| {
            let nj = p.normals().get(i);
            nj.dot(x) != support(s, nj)
        }) {
            return Err(SummandFailure::WrongFace { vertex: v });
        }
        image.push(sv);
    }
    let mut table = Vec::new();
    for (v, w) in p.edges() {
        let d = p.vertices()[w].sub(&p.vertices()[v]);
        let e = s.vertices()[image[w]].sub(&s.vertices()[image[v]]);
        let k = (0..n)
            .find(|&k| !d[k].is_zero())
            .expect("edges have distinct ends");
        let ratio = &e[k] / &d[k];
        if ratio.is_negative() || d.scale(&ratio) != e {
            return Err(SummandFailure::NotParallel { edge: (v, w) });
        }
        table.push(EdgeMatch {
            edge: (v, w),
            image: (image[v], image[w]),
            ratio,
        });
    }
    if let Some(missing) = (0..s.vertices().len()).find(|sv| !image.contains(sv)) {
        return Err(SummandFailure::UnmatchedVertex { vertex: missing });
    }
    Ok(table)
}

/// The edge criterion on a full-dimensional container.
fn edge_criterion(s: &Polytope, p: &Polytope) -> SummandReport {
    match structure(s, p) {
        Err(f) => SummandReport {
            is_summand: false,
            edge_table: Vec::new(),
            failure: Some(f),
        },
        Ok(table) => {
            let failure = table
                .iter()
                .find(|m| m.ratio > Rat::one())
                .map(|m| SummandFailure::RatioTooLarge { edge: m.edge });
            SummandReport {
                is_summand: failure.is_none(),
                edge_table: table,
                failure,
            }
        }
    }
}

/// Builds `L = {⟨u, x⟩ ≤ h_P(u) − h_S(u)}` over the normals of `P` and checks
/// `S ⊕ L = P`: every sum lies in `P` and every vertex of `P` is a sum.
fn constructive(s: &Polytope, p: &Polytope) -> Result<bool, PolytopeError> {
    let keep: Vec<usize> = if p.is_full_dimensional() {
        p.facet_indices()
    } else {
        (0..p.normals().len()).collect()
    };
    let rows = keep
        .iter()
        .map(|&i| {
            let u = p.normals().get(i);
            (u.clone(), &p.supports()[i] - &support(s, u))
        })
        .collect();
    let l = match HPoly::from_constraints(p.ambient_dim(), rows) {
        Ok(h) => super::vertex_enumerate(&h)?,
        Err(PolytopeError::Empty) => return Ok(false),
        Err(e) => return Err(e),
    };
    let mut sums = Vec::with_capacity(s.vertices().len() * l.vertices().len());
    for a in s.vertices() {
        for b in l.vertices() {
            let x = a.add(b);
            if !p.contains(&x) {
                return Ok(false);
            }
            sums.push(x);
        }
    }
    sums.sort();
    Ok(p.vertices().iter().all(|v| sums.binary_search(v).is_ok()))
}

/// Whether `S ⊕ L = P` for some polytope `L`.
///
/// For a full-dimensional `P` the edge criterion decides and the constructive
/// complement is computed as a cross-check; disagreement is reported as an
/// internal error.
pub fn is_summand(s: &Polytope, p: &Polytope) -> Result<SummandReport, PolytopeError> {
    if s.ambient_dim() != p.ambient_dim() {
        return Err(PolytopeError::DimensionMismatch {
            expected: p.ambient_dim(),
            found: s.ambient_dim(),
        });
    }
    let built = constructive(s, p)?;
    if !p.is_full_dimensional() {
        return Ok(SummandReport {
            is_summand: built,
            edge_table: Vec::new(),
            failure: (!built).then_some(SummandFailure::NoComplement),
        });
    }
    let report = edge_criterion(s, p);
    if report.is_summand != built {
        return Err(PolytopeError::Invariant(format!(
            "edge criterion says {} but the constructive complement says {}",
            report.is_summand, built
        )));
    }
    Ok(report)
}

/// The smallest `λ` for which `(1/λ) K` is a summand of `P`, if any.
///
/// Once the edge structure matches, `(1/λ) K` is a summand exactly when
/// `λ` is at least the largest edge ratio. A point is reported with `λ = 1`.
pub fn is_homothet_of_summand(k: &Polytope, p: &Polytope) -> Result<Option<Rat>, PolytopeError> {
    if k.ambient_dim() != p.ambient_dim() {
        return Err(PolytopeError::DimensionMismatch {
            expected: p.ambient_dim(),
            found: k.ambient_dim(),
        });
    }
    if !p.is_full_dimensional() {
        return Err(PolytopeError::NotFullDimensional);
    }
    let Ok(table) = structure(k, p) else {
        return Ok(None);
    };
    let lambda = table
        .iter()
        .map(|m| m.ratio.clone())
        .max()
        .filter(Rat::is_positive)
        .unwrap_or_else(Rat::one);
    let scaled = k.scale(&lambda.recip());
    if !is_summand(&scaled, p)?.is_summand {
        return Err(PolytopeError::Invariant(
            "rescaled candidate fails the summand test".into(),
        ));
    }
    Ok(Some(lambda))
}

#[cfg(test)]
mod tests {
    use super::super::shapes::{cross_polytope, cube};
    use super::*;

    fn pts(rows: &[&[i64]]) -> Vec<RVec> {
        rows.iter().map(|r| RVec::from_ints(r)).collect()
    }

    fn unit_square() -> Polytope {
        Polytope::from_points(2, &pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap()
    }

    #[test]
    fn segment_in_square() {
        let seg = Polytope::from_points(2, &pts(&[&[0, 0], &[1, 0]])).unwrap();
        let r = is_summand(&seg, &unit_square()).unwrap();
        assert!(r.is_summand);
        assert_eq!(r.edge_table.len(), 4);
    }

    #[test]
    fn square_in_itself() {
        let r = is_summand(&unit_square(), &unit_square()).unwrap();
        assert!(r.is_summand);
        assert!(r.edge_table.iter().all(|m| m.ratio.is_one()));
    }

    #[test]
    fn diamond_not_in_square() {
        let r = is_summand(&cross_polytope(2), &cube(2, 1)).unwrap();
        assert!(!r.is_summand);
        assert_eq!(
            is_homothet_of_summand(&cross_polytope(2), &cube(2, 1)),
            Ok(None)
        );
    }

    #[test]
    fn longer_edges_fail() {
        let r = is_summand(&cube(2, 1), &unit_square()).unwrap();
        assert!(!r.is_summand);
        assert!(matches!(
            r.failure,
            Some(SummandFailure::RatioTooLarge { .. })
        ));
    }

    #[test]
    fn homothets() {
        let big = Polytope::from_points(2, &pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]])).unwrap();
        assert_eq!(
            is_homothet_of_summand(&big, &unit_square()),
            Ok(Some(Rat::from_int(2)))
        );
        let seg = Polytope::from_points(2, &pts(&[&[0, 0], &[1, 0]])).unwrap();
        assert_eq!(
            is_homothet_of_summand(&seg, &unit_square()),
            Ok(Some(Rat::one()))
        );
        let dot = Polytope::from_points(2, &pts(&[&[5, 5]])).unwrap();
        assert_eq!(
            is_homothet_of_summand(&dot, &unit_square()),
            Ok(Some(Rat::one()))
        );
    }

    #[test]
    fn points_are_summands() {
        let dot = Polytope::from_points(3, &pts(&[&[0, 1, 2]])).unwrap();
        assert!(is_summand(&dot, &cube(3, 1)).unwrap().is_summand);
    }
}
