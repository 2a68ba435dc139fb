//! Translates witnessing the failure of the generating property.
//!
//! For a polytope `P` that is monotypic but not strongly monotypic, the
//! pipeline picks an inclusion-minimal spanning conical `(n+1)`-set `X` of
//! facet normals, the unique normal `p` inside `pos X`, and splits `X` into
//! `Y₀ ⊔ Y₁ ⊔ Y₂` from the affine dependence of its section. The facet `F`
//! of `p` then has a face `G = {x*} × S₁ × S₂` (a product of simplices), and
//! a translate `t` along the `S₂` factor makes `P ∩ (P + t)` grow a face that
//! is too long to be a Minkowski summand of `P`.
//!
//! Angles and orthogonality are measured with a rational positive definite
//! form `B` on normals (and `B⁻¹` on points) instead of transforming `P`, so
//! every output stays in the original exact coordinates.

use serde::{Deserialize, Serialize};

use crate::cone::{in_conical_position, radon_partition, ConeError, NormalSet};
use crate::criteria::{classify_table, ConicalTable, CriteriaError, MonotypyClass};
use crate::exact::{rank_of, ExactError, RMat, RVec, Rat, SpdForm};
use crate::par::Exec;
use crate::polytope::{
    combinatorially_equivalent, intersect_translate, is_summand, slice, support, verify_m4, HPoly,
    Polytope, PolytopeError, Slice,
};
use crate::subsets::{indices_of, mask_of};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("no witness applies: the polytope is {0}")]
    NotApplicable(MonotypyClass),
    #[error("normal {0} does not define a facet")]
    RedundantNormal(usize),
    #[error("the polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("expected exactly one normal inside the minimal cone, found {0:?}")]
    UniquenessViolation(Vec<usize>),
    #[error("the simplex is a single point")]
    ZeroDimensional,
    #[error("epsilon {0} is outside [0, epsilon0]")]
    EpsilonOutOfRange(Rat),
    #[error("no valid translate within the search budget: {0}")]
    ConstructionFailed(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl From<ExactError> for WitnessError {
    fn from(e: ExactError) -> Self {
        WitnessError::Invariant(e.to_string())
    }
}

fn invariant(msg: &str) -> WitnessError {
    WitnessError::Invariant(msg.to_string())
}

/// The section of `X` by the hyperplane `⟨c, ·⟩ = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionFrame {
    /// Indices of `X` in the normal set, ascending.
    pub x: Vec<usize>,
    /// `⟨c, x⟩ ≥ 1` on `X`; the section hyperplane is `⟨c, ·⟩ = 1`.
    #[serde(with = "crate::format::rvec")]
    pub separator: RVec,
    /// Section points of `X`, aligned with `x`.
    #[serde(with = "crate::format::rvec_list")]
    pub y_points: Vec<RVec>,
    /// Index of the normal `p` inside `pos X`.
    pub p: usize,
    #[serde(with = "crate::format::rvec")]
    pub p_point: RVec,
    /// Affine dependence of `y_points`, aligned with `x`.
    #[serde(with = "crate::format::rvec")]
    pub dependence: RVec,
    /// Normal indices with zero, positive and negative dependence.
    pub y0: Vec<usize>,
    pub y1: Vec<usize>,
    pub y2: Vec<usize>,
}

/// The form `B` and the decomposition of `p^⊥` it makes orthogonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcuteFrame {
    /// Rows of `B`.
    #[serde(with = "crate::format::rvec_list")]
    pub b: Vec<RVec>,
    /// Weight of `c cᵀ` in the starting form `λ c cᵀ + I`.
    #[serde(with = "crate::format::rat")]
    pub lambda: Rat,
    /// Normal-space bases of the three groups, `Rᵢ`.
    #[serde(with = "crate::format::rvec_list")]
    pub r0: Vec<RVec>,
    #[serde(with = "crate::format::rvec_list")]
    pub r1: Vec<RVec>,
    #[serde(with = "crate::format::rvec_list")]
    pub r2: Vec<RVec>,
    /// Point-space bases `Kᵢ = B Rᵢ` of the factors of `p^⊥`.
    #[serde(with = "crate::format::rvec_list")]
    pub k0: Vec<RVec>,
    #[serde(with = "crate::format::rvec_list")]
    pub k1: Vec<RVec>,
    #[serde(with = "crate::format::rvec_list")]
    pub k2: Vec<RVec>,
    /// Projection direction `B p` onto `p^⊥`.
    #[serde(with = "crate::format::rvec")]
    pub d: RVec,
}

impl AcuteFrame {
    pub fn form(&self) -> SpdForm {
        SpdForm::new(RMat::from_rows(self.b.clone())).expect("validated on construction")
    }

    fn frame_matrix(&self) -> RMat {
        let cols: Vec<RVec> = std::iter::once(self.d.clone())
            .chain(self.k0.iter().cloned())
            .chain(self.k1.iter().cloned())
            .chain(self.k2.iter().cloned())
            .collect();
        RMat::from_cols(&cols, self.d.dim())
    }
}

/// Coordinates of a point along `d` and the three factors.
struct Splitter {
    inverse: RMat,
    k0: usize,
    k1: usize,
}

impl Splitter {
    fn new(acute: &AcuteFrame) -> Result<Self, WitnessError> {
        let inverse = acute
            .frame_matrix()
            .inverse()
            .ok_or_else(|| invariant("factor bases do not span"))?;
        Ok(Splitter {
            inverse,
            k0: acute.k0.len(),
            k1: acute.k1.len(),
        })
    }

    fn split(&self, x: &RVec) -> [RVec; 3] {
        let c = self.inverse.mul_vec(x).into_coords();
        let (a, b) = (1 + self.k0, 1 + self.k0 + self.k1);
        [
            RVec::new(c[1..a].to_vec()),
            RVec::new(c[a..b].to_vec()),
            RVec::new(c[b..].to_vec()),
        ]
    }
}

/// Slice data at one depth `ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sections {
    pub eps: Rat,
    /// `F_ε`.
    pub slice: Slice,
    /// `S₁(ε)`, `S₂(ε)` from halfspaces, in `K₁`, `K₂` coordinates.
    pub s1: Polytope,
    pub s2: Polytope,
    /// Support values of the halfspaces, aligned with `y1`, `y2`.
    pub h1: Vec<Rat>,
    pub h2: Vec<Rat>,
    /// Projections of `F_ε` onto the factors.
    pub proj1: Polytope,
    pub proj2: Polytope,
    /// `x*_ε` in `K₀` coordinates.
    pub x_star: RVec,
    /// Ambient vertices of `G_ε`, sorted.
    pub g: Vec<RVec>,
}

/// A named verification outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub frame: SectionFrame,
    pub acute: AcuteFrame,
    #[serde(with = "crate::format::rat")]
    pub eps0: Rat,
    /// `S₁(0)`, `S₁(ε₀)`, `S₂(0)`, `S₂(ε₀)` vertices in factor coordinates.
    #[serde(with = "crate::format::rvec_list")]
    pub s1_0: Vec<RVec>,
    #[serde(with = "crate::format::rvec_list")]
    pub s1_eps0: Vec<RVec>,
    #[serde(with = "crate::format::rvec_list")]
    pub s2_0: Vec<RVec>,
    #[serde(with = "crate::format::rvec_list")]
    pub s2_eps0: Vec<RVec>,
    /// The translate, in ambient coordinates.
    #[serde(with = "crate::format::rvec")]
    pub t: RVec,
    /// Common vertex of `S₂(ε₀)` and `S₂(ε₀) + t`.
    #[serde(with = "crate::format::rvec")]
    pub contact: RVec,
    /// Ambient vertices of `G`, `G_{ε₀}`, `H`, `H_{ε₀}`.
    #[serde(with = "crate::format::rvec_list")]
    pub g: Vec<RVec>,
    #[serde(with = "crate::format::rvec_list")]
    pub g_eps0: Vec<RVec>,
    #[serde(with = "crate::format::rvec_list")]
    pub h: Vec<RVec>,
    #[serde(with = "crate::format::rvec_list")]
    pub h_eps0: Vec<RVec>,
    pub checks: Vec<Check>,
    /// Set when the constructed translate failed a check and the budgeted
    /// search supplied `t` instead.
    pub fallback_used: bool,
}

impl WitnessReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.passed)
    }
}

/// An inclusion-minimal positive hull among the conical `(n+1)`-subsets
/// spanning `Rⁿ`; the first such subset in lexicographic order.
///
/// Positive hulls are compared through their generators: `pos X′ ⊆ pos X`
/// iff every member of `X′` lies in `X` or inside `pos X`.
pub fn find_minimal_conical_set(table: &ConicalTable) -> Result<Vec<usize>, WitnessError> {
    let n = table.normals();
    let spanning: Vec<(u64, u64)> = table
        .conical()
        .filter(|(s, _)| rank_of(&n.pick(s)) == n.dim())
        .map(|(s, inside)| (mask_of(&s), mask_of(&inside)))
        .collect();
    if spanning.is_empty() {
        return Err(WitnessError::NotApplicable(
            MonotypyClass::StronglyMonotypic,
        ));
    }
    let minimal = spanning.iter().find(|&&(x, inside)| {
        let hull = x | inside;
        !spanning
            .iter()
            .any(|&(other, _)| other != x && other & !hull == 0)
    });
    minimal
        .map(|&(x, _)| indices_of(x))
        .ok_or_else(|| invariant("no inclusion-minimal conical set"))
}

/// Cuts `X` by the separating hyperplane and partitions it by the Radon
/// dependence of the section points.
pub fn build_section(n: &NormalSet, x: &[usize]) -> Result<SectionFrame, WitnessError> {
    let dim = n.dim();
    let gens = n.pick(x);
    let cert = in_conical_position(&gens).ok_or(ConeError::NotConical)?;
    let c = cert.separator;
    let cut = |v: &RVec| v.scale(&c.dot(v).recip());
    let y_points: Vec<RVec> = gens.iter().map(cut).collect();

    // normals other than X whose section point lies in conv Y
    let inside: Vec<usize> = (0..n.len())
        .filter(|i| !x.contains(i))
        .filter(|&i| matches!(crate::cone::cone_member(&gens, n.get(i)), Ok(Some(_))))
        .collect();
    let [p] = inside[..] else {
        return Err(WitnessError::UniquenessViolation(inside));
    };
    let p_point = cut(n.get(p));

    let radon = radon_partition(&y_points)?;
    if radon.point != p_point {
        return Err(invariant("the Radon point is not the inner normal"));
    }
    let alpha = radon.dependence;
    let pick = |f: &dyn Fn(&Rat) -> bool| -> Vec<usize> {
        (0..x.len())
            .filter(|&i| f(&alpha[i]))
            .map(|i| x[i])
            .collect()
    };
    let frame = SectionFrame {
        x: x.to_vec(),
        separator: c,
        y_points,
        p,
        p_point,
        y0: pick(&Rat::is_zero),
        y1: pick(&Rat::is_positive),
        y2: pick(&Rat::is_negative),
        dependence: alpha,
    };
    if !section_invariants(&frame, dim) {
        return Err(invariant("section partition violates its invariants"));
    }
    Ok(frame)
}

impl SectionFrame {
    /// `y − p` on the section hyperplane, for a normal index in `x`.
    fn offset(&self, normal: usize) -> RVec {
        let i = self
            .x
            .iter()
            .position(|&j| j == normal)
            .expect("member of X");
        self.y_points[i].sub(&self.p_point)
    }

    fn offsets(&self, group: &[usize]) -> Vec<RVec> {
        group.iter().map(|&i| self.offset(i)).collect()
    }
}

/// (i) independent spans, (ii) independent `Y₀ − p`, (iii) each of
/// `Y₁ − p`, `Y₂ − p` spans a simplex with the origin in its relative
/// interior.
fn section_invariants(f: &SectionFrame, dim: usize) -> bool {
    let (o0, o1, o2) = (f.offsets(&f.y0), f.offsets(&f.y1), f.offsets(&f.y2));
    let (r0, r1, r2) = (rank_of(&o0), rank_of(&o1), rank_of(&o2));
    let all: Vec<RVec> = o0.iter().chain(&o1).chain(&o2).cloned().collect();
    let simplex = |o: &[RVec], r: usize, positive: bool| {
        o.len() >= 2
            && r == o.len() - 1
            && crate::exact::nonneg_combination(o, &RVec::zeros(dim))
                .map(|_| true)
                .unwrap_or(false)
            && {
                let coeffs: Vec<Rat> = o
                    .iter()
                    .map(|v| {
                        let i = f
                            .y_points
                            .iter()
                            .position(|y| y.sub(&f.p_point) == *v)
                            .unwrap();
                        f.dependence[i].clone()
                    })
                    .collect();
                coeffs
                    .iter()
                    .all(|a| a.is_positive() == positive && !a.is_zero())
            }
    };
    rank_of(&all) == r0 + r1 + r2
        && r0 == o0.len()
        && r0 + r1 + r2 == dim - 1
        && simplex(&o1, r1, true)
        && simplex(&o2, r2, false)
}

/// `B₀ = λ c cᵀ + I` with the least integer `λ ≥ 0` making every member of
/// `Y` acute to `p`, then block-diagonalized over `span p ⊕ R₀ ⊕ R₁ ⊕ R₂`
/// where `Rᵢ` is spanned by the section offsets `y − p` of group `i`.
pub fn build_acute_form(n: &NormalSet, frame: &SectionFrame) -> Result<AcuteFrame, WitnessError> {
    let dim = n.dim();
    let p = n.get(frame.p).clone();
    let c = &frame.separator;
    let cp = c.dot(&p);
    let mut lambda = Rat::zero();
    for &i in &frame.x {
        let y = n.get(i);
        let bound = -(y.dot(&p)) / (c.dot(y) * &cp);
        if bound >= lambda {
            lambda = Rat::from_bigint(bound.floor()) + Rat::one();
        }
    }
    let cct = RMat::from_rows(c.iter().map(|ci| c.scale(ci)).collect());
    let mut b0 = RMat::identity(dim);
    for r in 0..dim {
        for s in 0..dim {
            b0.set(r, s, b0.get(r, s) + &(&lambda * cct.get(r, s)));
        }
    }
    let basis = |group: &[usize], drop_last: bool| -> Vec<RVec> {
        let mut o = frame.offsets(group);
        if drop_last {
            o.pop();
        }
        o
    };
    let (r0, r1, r2) = (
        basis(&frame.y0, false),
        basis(&frame.y1, true),
        basis(&frame.y2, true),
    );
    let blocks: Vec<Vec<RVec>> = vec![vec![p.clone()], r0.clone(), r1.clone(), r2.clone()];
    let cols: Vec<RVec> = blocks.iter().flatten().cloned().collect();
    let m = RMat::from_cols(&cols, dim);
    let mut g = RMat::zeros(dim, dim);
    let mut offset = 0;
    for block in &blocks {
        for (a, u) in block.iter().enumerate() {
            let bu = b0.mul_vec(u);
            for (b, v) in block.iter().enumerate() {
                g.set(offset + a, offset + b, v.dot(&bu));
            }
        }
        offset += block.len();
    }
    let m_inv = m
        .inverse()
        .ok_or_else(|| invariant("section offsets do not span"))?;
    let b = m_inv.transpose().mul(&g).mul(&m_inv);
    let form = SpdForm::new(b.clone())?;

    let lower = |r: &[RVec]| -> Vec<RVec> { r.iter().map(|v| form.lower(v)).collect() };
    let acute = AcuteFrame {
        b: b.into_rows(),
        lambda,
        k0: lower(&r0),
        k1: lower(&r1),
        k2: lower(&r2),
        d: form.lower(&p),
        r0,
        r1,
        r2,
    };
    if !acute_invariants(n, frame, &acute, &form) {
        return Err(invariant("form fails acuteness or orthogonality"));
    }
    Ok(acute)
}

fn acute_invariants(n: &NormalSet, frame: &SectionFrame, a: &AcuteFrame, form: &SpdForm) -> bool {
    let p = n.get(frame.p);
    let acute = frame
        .x
        .iter()
        .all(|&i| form.apply(n.get(i), p).is_positive());
    let groups = [&a.r0, &a.r1, &a.r2];
    let orth_p = groups
        .iter()
        .flat_map(|g| g.iter())
        .all(|v| form.apply(v, p).is_zero());
    let orth = (0..3).all(|i| {
        (i + 1..3).all(|j| {
            groups[i]
                .iter()
                .all(|u| groups[j].iter().all(|v| form.apply(u, v).is_zero()))
        })
    });
    acute && orth_p && orth
}

/// `ε₀`: half the smallest positive depth of a vertex below the `p`-facet,
/// halved further until `F_{ε₀}` is combinatorially equivalent to `F`.
pub fn choose_epsilon0(poly: &Polytope, p: &RVec) -> Result<Rat, WitnessError> {
    let top = support(poly, p);
    let gap = poly
        .vertices()
        .iter()
        .map(|v| &top - &p.dot(v))
        .filter(Rat::is_positive)
        .min()
        .ok_or(PolytopeError::NotFullDimensional)?;
    let f = slice(poly, p, &Rat::zero())?;
    let mut eps = gap / Rat::from_int(2);
    for _ in 0..64 {
        let f_eps = slice(poly, p, &eps)?;
        if combinatorially_equivalent(&f.poly, &f_eps.poly) == Ok(true) {
            return Ok(eps);
        }
        eps /= Rat::from_int(2);
    }
    Err(invariant("slices never stabilize"))
}

/// Factor data of `F_ε` for `0 ≤ ε ≤ ε₀`.
pub fn compute_sections(
    poly: &Polytope,
    n: &NormalSet,
    frame: &SectionFrame,
    acute: &AcuteFrame,
    eps: &Rat,
) -> Result<Sections, WitnessError> {
    let dim = poly.ambient_dim();
    let p = n.get(frame.p);
    let f = slice(poly, p, eps)?;
    let split = Splitter::new(acute)?;
    let pts: Vec<[RVec; 3]> = f
        .ambient_vertices()
        .iter()
        .map(|x| split.split(x))
        .collect();

    let functional =
        |y: &RVec, basis: &[RVec]| -> RVec { basis.iter().map(|k| y.dot(k)).collect() };
    let factor = |group: &[usize],
                  basis: &[RVec],
                  slot: usize|
     -> Result<(Polytope, Vec<Rat>, Polytope), WitnessError> {
        let rows: Vec<(RVec, Rat)> = group
            .iter()
            .map(|&i| {
                let a = functional(n.get(i), basis);
                let h = pts
                    .iter()
                    .map(|w| a.dot(&w[slot]))
                    .max()
                    .expect("non-empty slice");
                (a, h)
            })
            .collect();
        let supports = rows.iter().map(|(_, h)| h.clone()).collect();
        let s = Polytope::from_hpoly(&HPoly::from_constraints(basis.len(), rows)?)?;
        let proj = Polytope::from_points(
            basis.len(),
            &pts.iter().map(|w| w[slot].clone()).collect::<Vec<_>>(),
        )?;
        Ok((s, supports, proj))
    };
    let (s1, h1, proj1) = factor(&frame.y1, &acute.k1, 1)?;
    let (s2, h2, proj2) = factor(&frame.y2, &acute.k2, 2)?;

    let x_star = if frame.y0.is_empty() {
        RVec::zeros(0)
    } else {
        let rows: Vec<RVec> = frame
            .y0
            .iter()
            .map(|&i| functional(n.get(i), &acute.k0))
            .collect();
        let rhs: RVec = rows
            .iter()
            .map(|a| {
                pts.iter()
                    .map(|w| a.dot(&w[0]))
                    .max()
                    .expect("non-empty slice")
            })
            .collect();
        RMat::from_rows(rows)
            .solve(&rhs)?
            .ok_or_else(|| invariant("Y₀ hyperplanes do not meet"))?
    };

    let level = &support(poly, p) - eps;
    let base = acute
        .d
        .scale(&(&level / &p.dot(&acute.d)))
        .add(&combine(dim, &acute.k0, &x_star));
    let mut g: Vec<RVec> = Vec::new();
    for a in s1.vertices() {
        for b in s2.vertices() {
            g.push(
                base.add(&combine(dim, &acute.k1, a))
                    .add(&combine(dim, &acute.k2, b)),
            );
        }
    }
    g.sort();
    Ok(Sections {
        eps: eps.clone(),
        slice: f,
        s1,
        s2,
        h1,
        h2,
        proj1,
        proj2,
        x_star,
        g,
    })
}

/// `Σ wᵢ basisᵢ`.
fn combine(dim: usize, basis: &[RVec], w: &RVec) -> RVec {
    basis
        .iter()
        .zip(w.iter())
        .fold(RVec::zeros(dim), |acc, (b, c)| acc.add_scaled(c, b))
}

/// `t = b − a` for the unique minimizer `a` and maximizer `b` of the
/// functional `(1, M, M², …)`, `M = 2C + 1`, over the vertices scaled to
/// integers with largest magnitude `C`; then `S ∩ (S + t) = {b}`.
pub fn choose_translation(s: &Polytope) -> Result<(RVec, RVec), WitnessError> {
    if s.vertices().len() < 2 {
        return Err(WitnessError::ZeroDimensional);
    }
    let lcm = s
        .vertices()
        .iter()
        .flat_map(|v| v.iter().map(Rat::denom))
        .fold(num_bigint::BigInt::from(1), |acc, d| {
            num_integer::Integer::lcm(&acc, &d)
        });
    let scale = Rat::from_bigint(lcm);
    let c = s
        .vertices()
        .iter()
        .map(|v| v.scale(&scale).max_abs())
        .max()
        .expect("non-empty");
    let m = &(&c * &Rat::from_int(2)) + &Rat::one();
    let mut weight = Rat::one();
    let ell: RVec = (0..s.ambient_dim())
        .map(|_| {
            let w = weight.clone();
            weight = &weight * &m;
            w
        })
        .collect();
    let a = s
        .vertices()
        .iter()
        .min_by_key(|v| ell.dot(v))
        .expect("non-empty");
    let b = s
        .vertices()
        .iter()
        .max_by_key(|v| ell.dot(v))
        .expect("non-empty");
    Ok((b.sub(a), b.clone()))
}

/// `P ∩ (P + t)` is non-empty and not a Minkowski summand of `P`.
pub fn verify_witness(poly: &Polytope, t: &RVec) -> Result<bool, WitnessError> {
    match intersect_translate(poly, t) {
        None => Ok(false),
        Some(cap) => Ok(!is_summand(&cap, poly)?.is_summand),
    }
}

/// Every vertex of `vertices` is strictly inside the full-dimensional `outer`.
fn strictly_inside(vertices: &[RVec], outer: &Polytope) -> bool {
    vertices.iter().all(|v| {
        outer
            .normals()
            .directions()
            .iter()
            .zip(outer.supports())
            .all(|(u, h)| u.dot(v) < *h)
    })
}

/// Whether `points` are exactly the vertex set of a face of `poly`.
fn is_face(poly: &Polytope, points: &[RVec]) -> bool {
    let idx: Option<Vec<usize>> = points
        .iter()
        .map(|x| poly.vertices().binary_search(x).ok())
        .collect();
    match idx {
        None => false,
        Some(mut idx) => {
            idx.sort_unstable();
            idx.dedup();
            poly.face_of(&idx).vertices == idx
        }
    }
}

/// The full construction and its verification battery.
pub fn construct_witness(poly: &Polytope) -> Result<WitnessReport, WitnessError> {
    construct_witness_with(poly, Exec::default(), 64)
}

pub fn construct_witness_with(
    poly: &Polytope,
    exec: Exec,
    budget: usize,
) -> Result<WitnessReport, WitnessError> {
    let dim = poly.ambient_dim();
    if !poly.is_full_dimensional() {
        return Err(WitnessError::NotFullDimensional);
    }
    if let Some(&r) = poly.redundant().first() {
        return Err(WitnessError::RedundantNormal(r));
    }
    let n = poly.normals();
    let table = ConicalTable::build(n, exec)?;
    let class = classify_table(&table)?.class;
    if class != MonotypyClass::MonotypicNotStrong {
        return Err(WitnessError::NotApplicable(class));
    }
    let x = find_minimal_conical_set(&table)?;
    let frame = build_section(n, &x)?;
    let acute = build_acute_form(n, &frame)?;
    let p = n.get(frame.p).clone();
    let eps0 = choose_epsilon0(poly, &p)?;
    let at0 = compute_sections(poly, n, &frame, &acute, &Rat::zero())?;
    let at_eps0 = compute_sections(poly, n, &frame, &acute, &eps0)?;
    let (t_local, contact) = choose_translation(&at_eps0.s2)?;
    let t = combine(dim, &acute.k2, &t_local);

    let grid: Vec<Rat> = (0..=5).map(|k| &eps0 * &Rat::new(k, 5)).collect();
    let mut sections = Vec::with_capacity(grid.len());
    for e in &grid {
        sections.push(compute_sections(poly, n, &frame, &acute, e)?);
    }

    let mut checks = Vec::new();
    let mut record = |name: &str, passed: bool| {
        checks.push(Check {
            name: name.to_string(),
            passed,
        })
    };

    record(
        "g_face",
        is_face(&at0.slice.poly, &local(&at0.slice, &at0.g)?)
            && is_face(&at_eps0.slice.poly, &local(&at_eps0.slice, &at_eps0.g)?),
    );
    record(
        "projection_identity",
        [&at0, &at_eps0].iter().all(|s| {
            crate::polytope::poly_equal(&s.s1, &s.proj1)
                && crate::polytope::poly_equal(&s.s2, &s.proj2)
        }),
    );
    record(
        "simplices",
        [&at0, &at_eps0].iter().all(|s| {
            s.s1.vertices().len() == frame.y1.len() && s.s2.vertices().len() == frame.y2.len()
        }),
    );
    record(
        "nesting",
        sections.windows(2).all(|w| {
            strictly_inside(w[0].s1.vertices(), &w[1].s1)
                && strictly_inside(w[0].s2.vertices(), &w[1].s2)
        }),
    );
    record(
        "support_monotone",
        sections.windows(2).all(|w| {
            w[0].h1.iter().zip(&w[1].h1).all(|(a, b)| a < b)
                && w[0].h2.iter().zip(&w[1].h2).all(|(a, b)| a < b)
        }),
    );
    let s2 = &at_eps0.s2;
    let contact_ok = match intersect_translate(s2, &t_local) {
        Some(meet) => {
            meet.vertices() == [contact.clone()]
                && s2.vertices().contains(&contact)
                && s2.vertices().contains(&contact.sub(&t_local))
        }
        None => false,
    };
    record("single_vertex_contact", contact_ok);
    record("translate_in_factor", p.dot(&t).is_zero() && !t.is_zero());

    // H_{ε₀} = G_{ε₀} ∩ (G_{ε₀} + t) = {x*} × S₁(ε₀) × {contact}
    let face_points = |s: &Sections, v2: &RVec| -> Vec<RVec> {
        let level = &support(poly, &p) - &s.eps;
        let base = acute
            .d
            .scale(&(&level / &p.dot(&acute.d)))
            .add(&combine(dim, &acute.k0, &s.x_star))
            .add(&combine(dim, &acute.k2, v2));
        let mut out: Vec<RVec> =
            s.s1.vertices()
                .iter()
                .map(|a| base.add(&combine(dim, &acute.k1, a)))
                .collect();
        out.sort();
        out
    };
    let h_eps0 = face_points(&at_eps0, &contact);
    let g_shift: Vec<RVec> = at_eps0.g.iter().map(|v| v.add(&t)).collect();
    let h_consistent = h_eps0
        .iter()
        .all(|v| at_eps0.g.binary_search(v).is_ok() && g_shift.contains(v));
    let cap = intersect_translate(poly, &t);
    let chain_ok = match &cap {
        Some(cap) => {
            support(cap, &p) == &support(poly, &p) - &eps0 && h_consistent && is_face(cap, &h_eps0)
        }
        None => false,
    };
    record("h_face_chain", chain_ok);
    let disjoint = sections[..sections.len() - 1].iter().all(|s| {
        s.slice
            .coordinates(&t)
            .map(|tz| intersect_translate(&s.slice.poly, &tz).is_none())
            .unwrap_or(false)
    });
    record("slices_disjoint_below_eps0", disjoint);

    // H, the matching face of F, is a translate of S₁(0) sitting strictly
    // inside S₁(ε₀) up to translation
    let h_contact = at0
        .s2
        .vertices()
        .iter()
        .max_by_key(|v| {
            let ell: RVec = (0..v.dim()).map(|k| Rat::from_int(1 + k as i64)).collect();
            ell.dot(v)
        })
        .cloned()
        .expect("non-empty");
    let h = face_points(&at0, &h_contact);
    record(
        "non_summand_core",
        strictly_inside(at0.s1.vertices(), &at_eps0.s1),
    );

    let m4 = frame.y1.iter().all(|&a| {
        frame.y2.iter().all(|&b| {
            let mut u: Vec<usize> = std::iter::once(frame.p)
                .chain(frame.y0.iter().copied())
                .chain(frame.y1.iter().copied().filter(|&i| i != a))
                .chain(frame.y2.iter().copied().filter(|&i| i != b))
                .collect();
            u.sort_unstable();
            verify_m4(poly, &u) == Ok(true)
        })
    });
    record("m4", m4);
    let witnessed = verify_witness(poly, &t)?;
    record("not_summand", witnessed);

    let mut report = WitnessReport {
        frame,
        acute,
        eps0,
        s1_0: at0.s1.vertices().to_vec(),
        s1_eps0: at_eps0.s1.vertices().to_vec(),
        s2_0: at0.s2.vertices().to_vec(),
        s2_eps0: at_eps0.s2.vertices().to_vec(),
        t,
        contact,
        g: at0.g.clone(),
        g_eps0: at_eps0.g.clone(),
        h,
        h_eps0,
        checks,
        fallback_used: false,
    };
    if !report.all_checks_pass() {
        report.t = fallback_translate(poly, &report, budget)?;
        report.fallback_used = true;
    }
    Ok(report)
}

fn local(s: &Slice, points: &[RVec]) -> Result<Vec<RVec>, WitnessError> {
    let mut out = Vec::with_capacity(points.len());
    for x in points {
        out.push(
            s.coordinates(&x.sub(&s.origin))
                .ok_or_else(|| invariant("point off the slice hyperplane"))?,
        );
    }
    Ok(out)
}

/// Rescaled vertex differences of `S₂(ε₀)` until one certifies.
fn fallback_translate(
    poly: &Polytope,
    report: &WitnessReport,
    budget: usize,
) -> Result<RVec, WitnessError> {
    let scales = [
        Rat::one(),
        Rat::new(1, 2),
        Rat::new(3, 4),
        Rat::new(3, 2),
        Rat::from_int(2),
        Rat::new(1, 4),
    ];
    let verts = &report.s2_eps0;
    let mut tried = 0;
    for s in &scales {
        for a in verts {
            for b in verts {
                if a == b {
                    continue;
                }
                if tried == budget {
                    return Err(WitnessError::ConstructionFailed(format!(
                        "{budget} candidates tried"
                    )));
                }
                tried += 1;
                let t = combine(poly.ambient_dim(), &report.acute.k2, &b.sub(a).scale(s));
                if verify_witness(poly, &t)? {
                    return Ok(t);
                }
            }
        }
    }
    Err(WitnessError::ConstructionFailed(format!(
        "{tried} candidates tried"
    )))
}
