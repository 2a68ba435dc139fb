//! Exact convex polytopes in H- and V-representation.
//!
//! A [`Polytope`] always carries both representations together with the
//! constraint–vertex incidence. Lower-dimensional polytopes are allowed: their
//! H-representation then contains opposite pairs of constraints cutting out
//! the affine hull.

mod hull;
mod off;
pub mod shapes;
mod summand;

use std::collections::{BTreeMap, BTreeSet};

use crate::cone::{is_primitive, ConeError, NormalSet};
use crate::exact::lp::{LpOutcome, Problem, Relation};
use crate::exact::{affine_dim, complement_basis, RMat, RVec, Rat};
use crate::subsets::combinations;

pub use hull::minkowski_sum;
pub use off::{off_sidecar, to_off, OffSidecar};
pub use summand::{is_homothet_of_summand, is_summand, EdgeMatch, SummandFailure, SummandReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{normals} normals but {supports} support values")]
    LengthMismatch { normals: usize, supports: usize },
    #[error("the normals do not positively span the space, so the region is unbounded")]
    Unbounded,
    #[error("the constraints are infeasible")]
    Empty,
    #[error("the slice is empty")]
    EmptySlice,
    #[error("the facet normal sets differ")]
    NormalSetMismatch,
    #[error("the subset is not primitive in the facet normal set")]
    NotPrimitive,
    #[error("the polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("direction {0} is not a facet normal")]
    NotAFacet(usize),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// An intersection of halfspaces `⟨uᵢ, x⟩ ≤ hᵢ` with canonical normals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPoly {
    normals: NormalSet,
    supports: Vec<Rat>,
}

impl HPoly {
    /// Checks boundedness (the normals positively span) and feasibility.
    pub fn new(normals: NormalSet, supports: Vec<Rat>) -> Result<Self, PolytopeError> {
        if normals.len() != supports.len() {
            return Err(PolytopeError::LengthMismatch {
                normals: normals.len(),
                supports: supports.len(),
            });
        }
        if !normals.positively_spans() {
            return Err(PolytopeError::Unbounded);
        }
        let h = HPoly { normals, supports };
        if !h.is_feasible() {
            return Err(PolytopeError::Empty);
        }
        Ok(h)
    }

    /// Canonicalizes arbitrary constraints `⟨u, x⟩ ≤ h`: normals are scaled
    /// to primitive integer vectors (with their bounds), repeated directions
    /// keep the tightest bound, and trivially true zero rows are dropped.
    pub fn from_constraints(dim: usize, rows: Vec<(RVec, Rat)>) -> Result<Self, PolytopeError> {
        let mut order: Vec<RVec> = Vec::new();
        let mut best: BTreeMap<RVec, Rat> = BTreeMap::new();
        for (u, h) in rows {
            if u.dim() != dim {
                return Err(PolytopeError::DimensionMismatch {
                    expected: dim,
                    found: u.dim(),
                });
            }
            let Some(p) = u.primitive() else {
                if h.is_negative() {
                    return Err(PolytopeError::Empty);
                }
                continue;
            };
            let k = (0..dim).find(|&k| !u[k].is_zero()).expect("non-zero");
            let bound = &h * &(&p[k] / &u[k]);
            match best.get_mut(&p) {
                Some(b) => {
                    if bound < *b {
                        *b = bound;
                    }
                }
                None => {
                    order.push(p.clone());
                    best.insert(p, bound);
                }
            }
        }
        let supports = order.iter().map(|u| best[u].clone()).collect();
        let normals = NormalSet::new(dim, order)?;
        HPoly::new(normals, supports)
    }

    pub fn dim(&self) -> usize {
        self.normals.dim()
    }

    pub fn normals(&self) -> &NormalSet {
        &self.normals
    }

    pub fn supports(&self) -> &[Rat] {
        &self.supports
    }

    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.supports.is_empty()
    }

    pub fn contains(&self, x: &RVec) -> bool {
        self.normals
            .directions()
            .iter()
            .zip(&self.supports)
            .all(|(u, h)| u.dot(x) <= *h)
    }

    fn is_feasible(&self) -> bool {
        let n = self.dim();
        let mut p = Problem::new();
        let x = p.add_vars(n, true);
        for (u, h) in self.normals.directions().iter().zip(&self.supports) {
            let terms = (0..n)
                .filter(|&k| !u[k].is_zero())
                .map(|k| (x + k, u[k].clone()))
                .collect();
            p.constrain(terms, Relation::Le, h.clone());
        }
        matches!(p.solve(), LpOutcome::Optimal { .. })
    }

    /// `self + t`.
    pub fn translate(&self, t: &RVec) -> HPoly {
        HPoly {
            normals: self.normals.clone(),
            supports: self
                .normals
                .directions()
                .iter()
                .zip(&self.supports)
                .map(|(u, h)| h + &u.dot(t))
                .collect(),
        }
    }
}

/// A polytope with both representations and incidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    hrep: HPoly,
    /// Sorted, distinct.
    vertices: Vec<RVec>,
    /// For each constraint, the sorted indices of the vertices on it.
    incidence: Vec<Vec<usize>>,
    /// For each constraint, whether it defines a facet.
    facet: Vec<bool>,
    dim: isize,
}

/// A face given by the constraints active on all of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceRef {
    pub active: Vec<usize>,
    pub dim: isize,
    pub vertices: Vec<usize>,
}

/// Enumerates vertices as feasible solutions of `n` independent tight
/// constraints.
pub fn vertex_enumerate(h: &HPoly) -> Result<Polytope, PolytopeError> {
    let n = h.dim();
    let normals = h.normals().directions();
    let mut found = BTreeSet::new();
    for subset in combinations(h.len(), n) {
        let a = RMat::from_rows(subset.iter().map(|&i| normals[i].clone()).collect());
        let b: RVec = subset.iter().map(|&i| h.supports[i].clone()).collect();
        let (Some(x), rank) = a.solve_with_rank(&b).map_err(cone_err)? else {
            continue;
        };
        if rank == n && h.contains(&x) {
            found.insert(x);
        }
    }
    if found.is_empty() {
        return Err(PolytopeError::Empty);
    }
    Ok(Polytope::assemble(h.clone(), found.into_iter().collect()))
}

fn cone_err(e: crate::exact::ExactError) -> PolytopeError {
    PolytopeError::Cone(e.into())
}

impl Polytope {
    /// Builds the polytope of an H-representation given its exact vertex set.
    fn assemble(hrep: HPoly, mut vertices: Vec<RVec>) -> Polytope {
        vertices.sort();
        vertices.dedup();
        let incidence: Vec<Vec<usize>> = hrep
            .normals
            .directions()
            .iter()
            .zip(&hrep.supports)
            .map(|(u, h)| {
                (0..vertices.len())
                    .filter(|&v| u.dot(&vertices[v]) == *h)
                    .collect()
            })
            .collect();
        let dim = affine_dim(&vertices);
        let facet = incidence
            .iter()
            .map(|inc| {
                inc.len() < vertices.len()
                    && affine_dim(&inc.iter().map(|&v| vertices[v].clone()).collect::<Vec<_>>())
                        == dim - 1
            })
            .collect();
        Polytope {
            hrep,
            vertices,
            incidence,
            facet,
            dim,
        }
    }

    pub fn from_hpoly(h: &HPoly) -> Result<Polytope, PolytopeError> {
        vertex_enumerate(h)
    }

    /// `{x : ⟨uᵢ, x⟩ ≤ hᵢ}` from raw integer data.
    pub fn from_ints(
        dim: usize,
        normals: &[&[i64]],
        supports: &[i64],
    ) -> Result<Polytope, PolytopeError> {
        let rows = normals
            .iter()
            .zip(supports)
            .map(|(u, &h)| (RVec::from_ints(u), Rat::from_int(h)))
            .collect();
        vertex_enumerate(&HPoly::from_constraints(dim, rows)?)
    }

    /// Convex hull of a finite point set.
    pub fn from_points(dim: usize, points: &[RVec]) -> Result<Polytope, PolytopeError> {
        hull::convex_hull(dim, points)
    }

    pub fn ambient_dim(&self) -> usize {
        self.hrep.dim()
    }

    /// Affine dimension.
    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim() as isize
    }

    pub fn hrep(&self) -> &HPoly {
        &self.hrep
    }

    pub fn normals(&self) -> &NormalSet {
        &self.hrep.normals
    }

    pub fn supports(&self) -> &[Rat] {
        &self.hrep.supports
    }

    pub fn vertices(&self) -> &[RVec] {
        &self.vertices
    }

    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    pub fn is_facet(&self, constraint: usize) -> bool {
        self.facet[constraint]
    }

    pub fn facet_indices(&self) -> Vec<usize> {
        (0..self.facet.len()).filter(|&i| self.facet[i]).collect()
    }

    /// Every constraint defines a facet.
    pub fn is_irredundant(&self) -> bool {
        self.facet.iter().all(|&f| f)
    }

    /// Indices of constraints that are not facets.
    pub fn redundant(&self) -> Vec<usize> {
        (0..self.facet.len()).filter(|&i| !self.facet[i]).collect()
    }

    /// The canonical normal set of the actual facets.
    pub fn facet_normals(&self) -> NormalSet {
        self.normals().restrict(&self.facet_indices())
    }

    /// The same polytope described by its facets only.
    pub fn irredundant(&self) -> Polytope {
        if self.is_irredundant() || !self.is_full_dimensional() {
            return self.clone();
        }
        let keep = self.facet_indices();
        let hrep = HPoly {
            normals: self.normals().restrict(&keep),
            supports: keep.iter().map(|&i| self.supports()[i].clone()).collect(),
        };
        Polytope::assemble(hrep, self.vertices.clone())
    }

    /// Constraints active at a vertex.
    pub fn active_set(&self, vertex: usize) -> Vec<usize> {
        (0..self.incidence.len())
            .filter(|&i| self.incidence[i].binary_search(&vertex).is_ok())
            .collect()
    }

    /// The smallest face containing the given vertices.
    pub fn face_of(&self, vertices: &[usize]) -> FaceRef {
        let active: Vec<usize> = (0..self.incidence.len())
            .filter(|&i| {
                vertices
                    .iter()
                    .all(|v| self.incidence[i].binary_search(v).is_ok())
            })
            .collect();
        self.face_from_active(active)
    }

    /// The face cut out by making the given constraints tight.
    pub fn face_from_active(&self, constraints: Vec<usize>) -> FaceRef {
        let vertices: Vec<usize> = (0..self.vertices.len())
            .filter(|v| {
                constraints
                    .iter()
                    .all(|&i| self.incidence[i].binary_search(v).is_ok())
            })
            .collect();
        let pts: Vec<RVec> = vertices.iter().map(|&v| self.vertices[v].clone()).collect();
        // the full active set of the face, not just the requested constraints
        let active = (0..self.incidence.len())
            .filter(|&i| {
                !vertices.is_empty()
                    && vertices
                        .iter()
                        .all(|v| self.incidence[i].binary_search(v).is_ok())
            })
            .collect();
        FaceRef {
            active,
            dim: affine_dim(&pts),
            vertices,
        }
    }

    /// Vertex pairs spanning an edge.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.vertices.len() {
            for w in v + 1..self.vertices.len() {
                let face = self.face_of(&[v, w]);
                if face.vertices.len() == 2 {
                    out.push((v, w));
                }
            }
        }
        out
    }

    pub fn vertex_points(&self, indices: &[usize]) -> Vec<RVec> {
        indices.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    pub fn translate(&self, t: &RVec) -> Polytope {
        let vertices = self.vertices.iter().map(|v| v.add(t)).collect();
        Polytope {
            hrep: self.hrep.translate(t),
            vertices,
            incidence: self.incidence.clone(),
            facet: self.facet.clone(),
            dim: self.dim,
        }
    }

    /// `λ P` for `λ > 0`.
    pub fn scale(&self, lambda: &Rat) -> Polytope {
        assert!(lambda.is_positive(), "scale factor must be positive");
        let hrep = HPoly {
            normals: self.hrep.normals.clone(),
            supports: self.hrep.supports.iter().map(|h| h * lambda).collect(),
        };
        Polytope {
            hrep,
            vertices: self.vertices.iter().map(|v| v.scale(lambda)).collect(),
            incidence: self.incidence.clone(),
            facet: self.facet.clone(),
            dim: self.dim,
        }
    }

    pub fn contains(&self, x: &RVec) -> bool {
        self.hrep.contains(x)
    }

    /// Whether `x` lies in the relative interior.
    pub fn relint_contains(&self, x: &RVec) -> bool {
        self.contains(x)
            && self
                .normals()
                .directions()
                .iter()
                .zip(self.supports())
                .zip(&self.incidence)
                .all(|((u, h), inc)| inc.len() == self.vertices.len() || u.dot(x) < *h)
    }

    /// Barycenter of the vertices (a relative-interior point).
    pub fn centroid(&self) -> RVec {
        let n = self.ambient_dim();
        let k = Rat::from_int(self.vertices.len() as i64);
        self.vertices
            .iter()
            .fold(RVec::zeros(n), |acc, v| acc.add(v))
            .scale(&k.recip())
    }
}

/// `h_P(u)`.
pub fn support(p: &Polytope, u: &RVec) -> Rat {
    p.vertices
        .iter()
        .map(|v| u.dot(v))
        .max()
        .expect("polytopes are non-empty")
}

/// The face of `P` maximizing `⟨u, ·⟩`.
pub fn face_in_direction(p: &Polytope, u: &RVec) -> FaceRef {
    let h = support(p, u);
    let verts: Vec<usize> = (0..p.vertices.len())
        .filter(|&v| u.dot(&p.vertices[v]) == h)
        .collect();
    p.face_of(&verts)
}

/// `P ∩ (P + t)`, or `None` if empty.
pub fn intersect_translate(p: &Polytope, t: &RVec) -> Option<Polytope> {
    let n = p.ambient_dim();
    let rows = p
        .normals()
        .directions()
        .iter()
        .zip(p.supports())
        .flat_map(|(u, h)| [(u.clone(), h.clone()), (u.clone(), h + &u.dot(t))])
        .collect();
    let h = HPoly::from_constraints(n, rows).ok()?;
    vertex_enumerate(&h).ok()
}

/// Equal vertex sets.
pub fn poly_equal(p: &Polytope, q: &Polytope) -> bool {
    p.vertices == q.vertices
}

/// Same facet normals and the same facet-incidence pattern of vertices.
///
/// Vertices are compared through the set of facet normals active at them; a
/// vertex bijection preserving incidence with facets matched by normal
/// exists exactly when these signature multisets agree.
pub fn combinatorially_equivalent(p: &Polytope, q: &Polytope) -> Result<bool, PolytopeError> {
    let sig = |x: &Polytope| -> Result<(BTreeSet<RVec>, Vec<BTreeSet<RVec>>), PolytopeError> {
        let facets = x.facet_indices();
        let normals: BTreeSet<RVec> = facets.iter().map(|&i| x.normals().get(i).clone()).collect();
        let mut sigs: Vec<BTreeSet<RVec>> = (0..x.vertices.len())
            .map(|v| {
                facets
                    .iter()
                    .filter(|&&i| x.incidence[i].binary_search(&v).is_ok())
                    .map(|&i| x.normals().get(i).clone())
                    .collect()
            })
            .collect();
        sigs.sort();
        Ok((normals, sigs))
    };
    if p.ambient_dim() != q.ambient_dim() {
        return Err(PolytopeError::DimensionMismatch {
            expected: p.ambient_dim(),
            found: q.ambient_dim(),
        });
    }
    let (np, sp) = sig(p)?;
    let (nq, sq) = sig(q)?;
    if np != nq {
        return Err(PolytopeError::NormalSetMismatch);
    }
    Ok(sp == sq)
}

/// Whether the facets with the given normals meet in a face of dimension
/// exactly `n − |U|`. `subset` indexes [`Polytope::normals`].
pub fn verify_m4(p: &Polytope, subset: &[usize]) -> Result<bool, PolytopeError> {
    if let Some(&bad) = subset
        .iter()
        .find(|&&i| i >= p.normals().len() || !p.is_facet(i))
    {
        return Err(PolytopeError::NotAFacet(bad));
    }
    let facets = p.facet_indices();
    let local: Vec<usize> = subset
        .iter()
        .map(|i| facets.binary_search(i).expect("checked above"))
        .collect();
    if !is_primitive(&local, &p.facet_normals()) {
        return Err(PolytopeError::NotPrimitive);
    }
    let face = p.face_from_active(subset.to_vec());
    Ok(face.dim == p.ambient_dim() as isize - subset.len() as isize)
}

/// A polytope living in an affine hyperplane, in coordinates of a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    /// The slice in the basis coordinates `z`.
    pub poly: Polytope,
    /// Ambient point with `z = 0`.
    pub origin: RVec,
    /// Ambient images of the coordinate vectors.
    pub basis: Vec<RVec>,
}

impl Slice {
    /// `origin + Σ zᵢ basisᵢ`.
    pub fn embed(&self, z: &RVec) -> RVec {
        self.basis
            .iter()
            .zip(z.iter())
            .fold(self.origin.clone(), |acc, (b, c)| acc.add_scaled(c, b))
    }

    /// Coordinates of an ambient vector of the hyperplane's direction space.
    pub fn coordinates(&self, direction: &RVec) -> Option<RVec> {
        let a = RMat::from_cols(&self.basis, direction.dim());
        a.solve(direction).ok().flatten()
    }

    pub fn ambient_vertices(&self) -> Vec<RVec> {
        self.poly.vertices().iter().map(|z| self.embed(z)).collect()
    }
}

/// Basis of `p^⊥` shared by all slices orthogonal to `p`.
pub fn hyperplane_basis(p: &RVec) -> Vec<RVec> {
    complement_basis(std::slice::from_ref(p), p.dim())
}

/// `F_ε = P ∩ {⟨p, x⟩ = h_P(p) − ε}` as a polytope of one dimension less.
pub fn slice(poly: &Polytope, p: &RVec, eps: &Rat) -> Result<Slice, PolytopeError> {
    let n = poly.ambient_dim();
    if p.dim() != n {
        return Err(PolytopeError::DimensionMismatch {
            expected: n,
            found: p.dim(),
        });
    }
    if eps.is_negative() || p.is_zero() {
        return Err(PolytopeError::EmptySlice);
    }
    let level = &support(poly, p) - eps;
    let origin = p.scale(&(&level / &p.dot(p)));
    let basis = hyperplane_basis(p);
    let rows: Vec<(RVec, Rat)> = poly
        .normals()
        .directions()
        .iter()
        .zip(poly.supports())
        .map(|(u, h)| {
            let projected: RVec = basis.iter().map(|b| u.dot(b)).collect();
            (projected, h - &u.dot(&origin))
        })
        .collect();
    let h = match HPoly::from_constraints(n - 1, rows) {
        Ok(h) => h,
        Err(PolytopeError::Empty) => return Err(PolytopeError::EmptySlice),
        Err(e) => return Err(e),
    };
    let poly = vertex_enumerate(&h).map_err(|e| match e {
        PolytopeError::Empty => PolytopeError::EmptySlice,
        other => other,
    })?;
    Ok(Slice {
        poly,
        origin,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::shapes::*;
    use super::*;
    use crate::exact::rat;

    fn cut_cube() -> Polytope {
        Polytope::from_ints(
            3,
            &[
                &[1, 0, 0],
                &[-1, 0, 0],
                &[0, 1, 0],
                &[0, -1, 0],
                &[0, 0, 1],
                &[0, 0, -1],
                &[1, 1, 1],
            ],
            &[1, 1, 1, 1, 1, 1, 2],
        )
        .unwrap()
    }

    fn triangle() -> Polytope {
        Polytope::from_ints(2, &[&[-1, 0], &[0, -1], &[1, 1]], &[0, 0, 1]).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let c = cube(3, 1);
        assert_eq!(c.vertices().len(), 8);
        assert!(c
            .vertices()
            .iter()
            .all(|v| v.iter().all(|x| x.abs().is_one())));
        assert_eq!(
            triangle().vertices(),
            &[
                RVec::from_ints(&[0, 0]),
                RVec::from_ints(&[0, 1]),
                RVec::from_ints(&[1, 0])
            ]
        );
        let cc = cut_cube();
        assert_eq!(cc.vertices().len(), 10);
        assert!(!cc.vertices().contains(&RVec::from_ints(&[1, 1, 1])));
        for v in [[0, 1, 1], [1, 0, 1], [1, 1, 0]] {
            assert!(cc.vertices().contains(&RVec::from_ints(&v)));
        }
        assert!(cc.is_irredundant());
    }

    #[test]
    fn enumerate_errors() {
        let half = HPoly::from_constraints(
            2,
            vec![
                (RVec::from_ints(&[1, 0]), Rat::one()),
                (RVec::from_ints(&[0, 1]), Rat::one()),
            ],
        );
        assert_eq!(half, Err(PolytopeError::Unbounded));
        let empty = Polytope::from_ints(1, &[&[1], &[-1]], &[-1, 0]);
        assert_eq!(empty, Err(PolytopeError::Empty));
    }

    #[test]
    fn redundant_constraints_are_flagged() {
        let c = Polytope::from_ints(
            2,
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1]],
            &[1, 1, 1, 1, 5],
        )
        .unwrap();
        assert_eq!(c.redundant(), vec![4]);
        assert!(poly_equal(&c, &cube(2, 1)));
        assert_eq!(c.irredundant().normals().len(), 4);
    }

    #[test]
    fn support_and_faces() {
        let c = cube(3, 1);
        let ones = RVec::from_ints(&[1, 1, 1]);
        assert_eq!(support(&c, &ones), Rat::from_int(3));
        assert_eq!(support(&triangle(), &RVec::from_ints(&[1, 0])), Rat::one());
        assert_eq!(support(&cut_cube(), &ones), Rat::from_int(2));

        let top = face_in_direction(&c, &RVec::from_ints(&[0, 0, 1]));
        assert_eq!((top.vertices.len(), top.dim), (4, 2));
        let corner = face_in_direction(&c, &ones);
        assert_eq!(c.vertex_points(&corner.vertices), vec![ones.clone()]);
        assert_eq!(corner.dim, 0);
        let tri = face_in_direction(&cut_cube(), &ones);
        assert_eq!(tri.dim, 2);
        assert_eq!(tri.vertices.len(), 3);
    }

    #[test]
    fn edges_of_cube() {
        assert_eq!(cube(3, 1).edges().len(), 12);
        assert_eq!(cut_cube().edges().len(), 15);
    }

    #[test]
    fn slices() {
        let c = cube(3, 1);
        let e3 = RVec::from_ints(&[0, 0, 1]);
        let top = slice(&c, &e3, &Rat::zero()).unwrap();
        assert_eq!(top.poly.vertices().len(), 4);
        assert!(top.ambient_vertices().iter().all(|v| v[2].is_one()));
        let mid = slice(&c, &e3, &rat(1, 2)).unwrap();
        assert!(mid.ambient_vertices().iter().all(|v| v[2] == rat(1, 2)));
        assert_eq!(mid.poly.vertices().len(), 4);
        assert_eq!(
            slice(&c, &e3, &Rat::from_int(3)),
            Err(PolytopeError::EmptySlice)
        );
    }

    #[test]
    fn translate_intersections() {
        let c = cube(3, 1);
        let cap = intersect_translate(&c, &RVec::from_ints(&[1, 0, 0])).unwrap();
        let boxed = Polytope::from_ints(
            3,
            &[
                &[1, 0, 0],
                &[-1, 0, 0],
                &[0, 1, 0],
                &[0, -1, 0],
                &[0, 0, 1],
                &[0, 0, -1],
            ],
            &[1, 0, 1, 1, 1, 1],
        )
        .unwrap();
        assert!(poly_equal(&cap, &boxed));
        assert!(intersect_translate(&c, &RVec::from_ints(&[3, 0, 0])).is_none());
        assert!(poly_equal(
            &intersect_translate(&c, &RVec::zeros(3)).unwrap(),
            &c
        ));
        // touching translates meet in a facet
        let touch = intersect_translate(&c, &RVec::from_ints(&[2, 0, 0])).unwrap();
        assert_eq!(touch.dim(), 2);
    }

    #[test]
    fn combinatorial_equivalence() {
        let c = cube(3, 1);
        let b = Polytope::from_ints(
            3,
            &[
                &[1, 0, 0],
                &[-1, 0, 0],
                &[0, 1, 0],
                &[0, -1, 0],
                &[0, 0, 1],
                &[0, 0, -1],
            ],
            &[1, 0, 2, 0, 3, 0],
        )
        .unwrap();
        assert_eq!(combinatorially_equivalent(&c, &b), Ok(true));
        // a corner-touching constraint is not a facet, so nothing changes
        let touching = Polytope::from_ints(
            2,
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1]],
            &[1, 1, 1, 1, 2],
        )
        .unwrap();
        assert_eq!(combinatorially_equivalent(&cube(2, 1), &touching), Ok(true));
        let cut = Polytope::from_ints(
            2,
            &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1]],
            &[1, 1, 1, 1, 1],
        )
        .unwrap();
        assert_eq!(
            combinatorially_equivalent(&cube(2, 1), &cut),
            Err(PolytopeError::NormalSetMismatch)
        );
    }

    #[test]
    fn m4_examples() {
        let c = cube(3, 1);
        let e1 = c.normals().index_of(&RVec::from_ints(&[1, 0, 0])).unwrap();
        let e2 = c.normals().index_of(&RVec::from_ints(&[0, 1, 0])).unwrap();
        let m1 = c.normals().index_of(&RVec::from_ints(&[-1, 0, 0])).unwrap();
        assert_eq!(verify_m4(&c, &[e1, e2]), Ok(true));
        assert_eq!(verify_m4(&c, &[e1]), Ok(true));
        assert_eq!(verify_m4(&c, &[e1, m1]), Err(PolytopeError::NotPrimitive));
    }

    #[test]
    fn relint_and_centroid() {
        let c = cube(2, 1);
        assert!(c.relint_contains(&c.centroid()));
        assert!(!c.relint_contains(&RVec::from_ints(&[1, 0])));
        assert!(c.contains(&RVec::from_ints(&[1, 0])));
    }
}
