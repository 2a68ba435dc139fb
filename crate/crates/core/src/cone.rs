//! Positive hulls of finite direction sets.
//!
//! Every predicate here is exact. Where a cheap linear-algebra argument
//! settles a question (linearly independent generators, a one-dimensional
//! dependence space) it is used directly; otherwise the question goes to the
//! simplex kernel.

use serde::{Deserialize, Serialize};

use crate::exact::lp::{LpOutcome, Problem, Relation};
use crate::exact::{nonneg_combination, rank_of, ExactError, RMat, RVec, Rat};
use crate::subsets::{combinations, subsets_by_size};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("direction {index} is the zero vector")]
    ZeroDirection { index: usize },
    #[error("directions {first} and {second} are positively proportional")]
    DuplicateDirection { first: usize, second: usize },
    #[error("empty input")]
    Empty,
    #[error("at least {needed} points are required, got {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("the target is not in the positive hull")]
    NotInCone,
    #[error("the positive hulls meet only at the origin")]
    TrivialIntersection,
    #[error("the seed set is not in conical position")]
    NotConical,
    #[error("the positive hull of the seed set contains direction {0}")]
    HullNotEmpty(usize),
    #[error("the directions do not span the ambient space")]
    DoesNotSpan,
    #[error("no direction completes the set to n+1 directions in conical position")]
    NoConicalCompletion,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl From<ExactError> for ConeError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::DimensionMismatch { expected, found } => {
                ConeError::DimensionMismatch { expected, found }
            }
            other => ConeError::Invariant(other.to_string()),
        }
    }
}

/// A finite set of facet directions in canonical form: every direction is a
/// primitive integer vector and no two are positively proportional.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalSet {
    dim: usize,
    directions: Vec<RVec>,
}

impl NormalSet {
    /// Canonicalizes each direction; input order is preserved.
    pub fn new(dim: usize, raw: Vec<RVec>) -> Result<Self, ConeError> {
        let mut directions = Vec::with_capacity(raw.len());
        for (index, v) in raw.into_iter().enumerate() {
            if v.dim() != dim {
                return Err(ConeError::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
            let p = v.primitive().ok_or(ConeError::ZeroDirection { index })?;
            if let Some(first) = directions.iter().position(|d| *d == p) {
                return Err(ConeError::DuplicateDirection {
                    first,
                    second: index,
                });
            }
            directions.push(p);
        }
        Ok(NormalSet { dim, directions })
    }

    pub fn from_ints(dim: usize, rows: &[&[i64]]) -> Result<Self, ConeError> {
        Self::new(dim, rows.iter().map(|r| RVec::from_ints(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn directions(&self) -> &[RVec] {
        &self.directions
    }

    pub fn get(&self, i: usize) -> &RVec {
        &self.directions[i]
    }

    /// Index of the direction on the same open ray as `v`.
    pub fn index_of(&self, v: &RVec) -> Option<usize> {
        let p = v.primitive()?;
        self.directions.iter().position(|d| *d == p)
    }

    pub fn pick(&self, indices: &[usize]) -> Vec<RVec> {
        indices
            .iter()
            .map(|&i| self.directions[i].clone())
            .collect()
    }

    /// The sub-normal-set on the given indices (order preserved).
    pub fn restrict(&self, indices: &[usize]) -> NormalSet {
        NormalSet {
            dim: self.dim,
            directions: self.pick(indices),
        }
    }

    /// Whether the directions positively span the ambient space, i.e.
    /// whether some bounded polytope has exactly this normal set.
    pub fn positively_spans(&self) -> bool {
        positively_spans(&self.directions, self.dim)
    }
}

/// `pos V = Rⁿ`: the vectors span and admit a strictly positive dependence.
pub fn positively_spans(vectors: &[RVec], dim: usize) -> bool {
    if vectors.len() <= dim || rank_of(vectors) < dim {
        return false;
    }
    // Σ μᵢ vᵢ = -Σ vᵢ with μ ≥ 0  ⇔  Σ (1 + μᵢ) vᵢ = 0
    let total = vectors.iter().fold(RVec::zeros(dim), |acc, v| acc.add(v));
    matches!(nonneg_combination(vectors, &total.neg()), Ok(Some(_)))
}

fn check_dims(v: &[RVec], dim: usize) -> Result<(), ConeError> {
    match v.iter().find(|x| x.dim() != dim) {
        Some(bad) => Err(ConeError::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        }),
        None => Ok(()),
    }
}

/// Coefficients `λ ≥ 0` with `Σ λᵢ vᵢ = x`, or `None` when `x ∉ pos V`.
pub fn cone_member(v: &[RVec], x: &RVec) -> Result<Option<RVec>, ConeError> {
    check_dims(v, x.dim())?;
    if v.is_empty() {
        return Ok(x.is_zero().then(|| RVec::zeros(0)));
    }
    let a = RMat::from_cols(v, x.dim());
    let (sol, rank) = a.solve_with_rank(x)?;
    if rank == v.len() {
        // unique coefficients
        return Ok(sol.filter(|l| l.iter().all(|c| !c.is_negative())));
    }
    if sol.is_none() {
        return Ok(None);
    }
    Ok(nonneg_combination(v, x)?)
}

/// A Farkas vector `y` with `⟨y, v⟩ ≥ 0` for all `v ∈ V` and `⟨y, x⟩ ≤ -1`;
/// it exists exactly when `x ∉ pos V`.
pub fn exclusion_witness(v: &[RVec], x: &RVec) -> Option<RVec> {
    let n = x.dim();
    let mut p = Problem::new();
    let y = p.add_vars(n, true);
    let terms = |w: &RVec| -> Vec<(usize, Rat)> {
        (0..n)
            .filter(|&k| !w[k].is_zero())
            .map(|k| (y + k, w[k].clone()))
            .collect()
    };
    for w in v {
        p.constrain(terms(w), Relation::Ge, Rat::zero());
    }
    p.constrain(terms(x), Relation::Le, -Rat::one());
    match p.solve() {
        LpOutcome::Optimal { x: sol, .. } => Some(sol),
        _ => None,
    }
}

/// A functional `c` with `⟨c, v⟩ ≥ 1` for every `v ∈ V` (of minimal
/// `ℓ₁` norm, which makes it canonical on symmetric inputs), or `None`
/// exactly when `0 ∈ conv V`.
pub fn separated_from_origin(v: &[RVec]) -> Option<RVec> {
    let n = v.first()?.dim();
    let mut p = Problem::new();
    let c = p.add_vars(n, true);
    let t = p.add_vars(n, false);
    for w in v {
        let terms = (0..n)
            .filter(|&k| !w[k].is_zero())
            .map(|k| (c + k, w[k].clone()))
            .collect();
        p.constrain(terms, Relation::Ge, Rat::one());
    }
    for k in 0..n {
        p.constrain(
            vec![(t + k, Rat::one()), (c + k, -Rat::one())],
            Relation::Ge,
            Rat::zero(),
        );
        p.constrain(
            vec![(t + k, Rat::one()), (c + k, Rat::one())],
            Relation::Ge,
            Rat::zero(),
        );
    }
    p.minimize((0..n).map(|k| (t + k, Rat::one())).collect());
    match p.solve() {
        LpOutcome::Optimal { x, .. } => Some(x.coords()[..n].iter().cloned().collect()),
        _ => None,
    }
}

/// Evidence that a set of vectors is in conical position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicalCertificate {
    /// Indices of the members, into whatever list the certificate refers to.
    pub subset: Vec<usize>,
    /// Strictly positive on every member.
    #[serde(with = "crate::format::rvec")]
    pub separator: RVec,
    /// For each member `i`, a Farkas vector non-negative on the other
    /// members and negative on member `i`.
    #[serde(with = "crate::format::rvec_list")]
    pub exclusions: Vec<RVec>,
}

impl ConicalCertificate {
    /// Re-checks the certificate against the list its indices refer to.
    pub fn validate(&self, vectors: &[RVec]) -> bool {
        if self.subset.is_empty()
            || self.exclusions.len() != self.subset.len()
            || self.subset.iter().any(|&i| i >= vectors.len())
        {
            return false;
        }
        let members: Vec<&RVec> = self.subset.iter().map(|&i| &vectors[i]).collect();
        if members.iter().any(|m| m.dim() != self.separator.dim()) {
            return false;
        }
        if !members.iter().all(|m| self.separator.dot(m).is_positive()) {
            return false;
        }
        self.exclusions.iter().enumerate().all(|(i, y)| {
            y.dim() == self.separator.dim()
                && members.iter().enumerate().all(|(j, m)| {
                    let d = y.dot(m);
                    if i == j {
                        d.is_negative()
                    } else {
                        !d.is_negative()
                    }
                })
        })
    }
}

/// Certificate that `V` is separated from the origin and no member lies in
/// the positive hull of the others; `None` otherwise.
pub fn in_conical_position(v: &[RVec]) -> Option<ConicalCertificate> {
    let separator = separated_from_origin(v)?;
    let mut exclusions = Vec::with_capacity(v.len());
    for i in 0..v.len() {
        let others: Vec<RVec> = v
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, w)| w.clone())
            .collect();
        exclusions.push(exclusion_witness(&others, &v[i])?);
    }
    Some(ConicalCertificate {
        subset: (0..v.len()).collect(),
        separator,
        exclusions,
    })
}

/// Boolean conical-position test.
///
/// When the vectors have at most a one-dimensional linear dependence space
/// the answer is read off the sign pattern of the dependence: independent
/// vectors are always conical, and a unique dependence `β` makes the set
/// conical iff `β` has at least two positive and two negative entries.
pub fn is_conical(v: &[RVec]) -> bool {
    if v.is_empty() || v.iter().any(RVec::is_zero) {
        return false;
    }
    let n = v[0].dim();
    let kernel = RMat::from_cols(v, n).nullspace();
    match kernel.len() {
        0 => true,
        1 => {
            let pos = kernel[0].iter().filter(|c| c.is_positive()).count();
            let neg = kernel[0].iter().filter(|c| c.is_negative()).count();
            pos >= 2 && neg >= 2
        }
        _ => {
            if separated_from_origin(v).is_none() {
                return false;
            }
            (0..v.len()).all(|i| {
                let others: Vec<RVec> = v
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, w)| w.clone())
                    .collect();
                matches!(cone_member(&others, &v[i]), Ok(None))
            })
        }
    }
}

/// Indices of directions of `all` (outside `members`) lying in `pos(members)`.
pub fn directions_in_hull(all: &[RVec], members: &[usize]) -> Vec<usize> {
    let gens: Vec<RVec> = members.iter().map(|&i| all[i].clone()).collect();
    (0..all.len())
        .filter(|i| !members.contains(i))
        .filter(|&i| matches!(cone_member(&gens, &all[i]), Ok(Some(_))))
        .collect()
}

/// `V` is linearly independent and `pos V` holds no other direction of `N`.
pub fn is_primitive(subset: &[usize], n: &NormalSet) -> bool {
    let v = n.pick(subset);
    if v.is_empty() || rank_of(&v) != v.len() {
        return false;
    }
    directions_in_hull(n.directions(), subset).is_empty()
}

/// A Radon partition `A₁ ⊔ A₂` of an affinely dependent point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadonPartition {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    /// The common point of `conv A₁` and `conv A₂`.
    pub point: RVec,
    /// The affine dependence used; positive exactly on `first`.
    pub dependence: RVec,
}

/// Radon partition from the affine-dependence kernel.
///
/// The dependence is the kernel basis vector attached to the first free
/// column of `[points; 1]`, signed so its first non-zero entry is positive.
/// Points with a positive coefficient form `A₁`, the rest `A₂`.
pub fn radon_partition(points: &[RVec]) -> Result<RadonPartition, ConeError> {
    let first = points.first().ok_or(ConeError::Empty)?;
    let n = first.dim();
    check_dims(points, n)?;
    let lifted: Vec<RVec> = points
        .iter()
        .map(|p| {
            p.iter()
                .cloned()
                .chain(std::iter::once(Rat::one()))
                .collect()
        })
        .collect();
    let kernel = RMat::from_cols(&lifted, n + 1).nullspace();
    let Some(mut alpha) = kernel.into_iter().next() else {
        let needed = crate::exact::affine_dim(points).max(0) as usize + 2;
        return Err(ConeError::TooFewPoints {
            needed,
            found: points.len(),
        });
    };
    if alpha
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(Rat::is_negative)
    {
        alpha = alpha.neg();
    }
    let (first, second): (Vec<usize>, Vec<usize>) =
        (0..points.len()).partition(|&i| alpha[i].is_positive());
    let weight: Rat = first.iter().map(|&i| alpha[i].clone()).sum();
    let point = first
        .iter()
        .fold(RVec::zeros(n), |acc, &i| {
            acc.add_scaled(&alpha[i], &points[i])
        })
        .scale(&weight.recip());
    Ok(RadonPartition {
        first,
        second,
        point,
        dependence: alpha,
    })
}

/// A minimal generating subset for a point of a cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub indices: Vec<usize>,
    /// Strictly positive coefficients, one per index.
    pub coefficients: RVec,
}

/// Smallest (then lexicographically first) linearly independent subset
/// `V′ ⊆ V` with `x` in the relative interior of `pos V′`.
pub fn caratheodory_reduce(v: &[RVec], x: &RVec) -> Result<Reduction, ConeError> {
    if cone_member(v, x)?.is_none() {
        return Err(ConeError::NotInCone);
    }
    if x.is_zero() {
        return Ok(Reduction {
            indices: vec![],
            coefficients: RVec::zeros(0),
        });
    }
    let n = x.dim();
    for subset in subsets_by_size(v.len(), 1, n) {
        let gens: Vec<RVec> = subset.iter().map(|&i| v[i].clone()).collect();
        let (sol, rank) = RMat::from_cols(&gens, n).solve_with_rank(x)?;
        if rank != gens.len() {
            continue;
        }
        if let Some(l) = sol.filter(|l| l.iter().all(Rat::is_positive)) {
            return Ok(Reduction {
                indices: subset,
                coefficients: l,
            });
        }
    }
    Err(ConeError::Invariant(
        "Carathéodory reduction found no independent support".into(),
    ))
}

/// A point of `pos U₁ ∩ pos U₂` whose `U₁`-coefficients sum to one, hence
/// non-zero whenever `U₁` is linearly independent.
pub fn common_point(u1: &[RVec], u2: &[RVec]) -> Option<RVec> {
    let n = u1.first()?.dim();
    // rows: Σλu - Σμw = 0 (n rows), Σλ = 1
    let mut cols: Vec<RVec> = Vec::with_capacity(u1.len() + u2.len());
    for u in u1 {
        cols.push(
            u.iter()
                .cloned()
                .chain(std::iter::once(Rat::one()))
                .collect(),
        );
    }
    for w in u2 {
        cols.push(
            w.neg()
                .iter()
                .cloned()
                .chain(std::iter::once(Rat::zero()))
                .collect(),
        );
    }
    let mut rhs = RVec::zeros(n + 1);
    rhs[n] = Rat::one();
    let sol = nonneg_combination(&cols, &rhs).ok()??;
    Some(
        u1.iter()
            .enumerate()
            .fold(RVec::zeros(n), |acc, (i, u)| acc.add_scaled(&sol[i], u)),
    )
}

/// Non-trivial intersection test for the positive hulls of two linearly
/// independent sets, via the kernel of `[U₁ | -U₂]` when it is at most
/// one-dimensional and the simplex kernel otherwise.
pub fn independent_cones_intersect(u1: &[RVec], u2: &[RVec]) -> bool {
    let Some(n) = u1.first().map(RVec::dim) else {
        return false;
    };
    if u2.is_empty() {
        return false;
    }
    let cols: Vec<RVec> = u1.iter().cloned().chain(u2.iter().map(RVec::neg)).collect();
    let kernel = RMat::from_cols(&cols, n).nullspace();
    match kernel.len() {
        0 => false,
        1 => {
            let k = &kernel[0];
            k.iter().all(|c| !c.is_negative()) || k.iter().all(|c| !c.is_positive())
        }
        _ => common_point(u1, u2).is_some(),
    }
}

/// Output of [`minimal_ray_pair`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayPair {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    /// Primitive integer direction of the common ray.
    pub ray: RVec,
    /// Strictly positive coefficients of `ray` over each side.
    pub first_coefficients: RVec,
    pub second_coefficients: RVec,
}

/// Minimal subsets `V₁′ ⊆ V₁`, `V₂′ ⊆ V₂` whose positive hulls still meet
/// away from the origin.
///
/// Subset pairs are tried by total size, then by the size of the first side,
/// then lexicographically. Linearly dependent sides are skipped: by
/// Carathéodory any hit on a dependent side is preceded by a smaller hit.
/// The result is checked to meet in a single ray interior to both hulls and
/// to be separated from the origin.
pub fn minimal_ray_pair(v1: &[RVec], v2: &[RVec]) -> Result<RayPair, ConeError> {
    let n = v1.first().or(v2.first()).ok_or(ConeError::Empty)?.dim();
    check_dims(v1, n)?;
    check_dims(v2, n)?;
    let indep = |v: &[RVec], s: &[usize]| {
        let g: Vec<RVec> = s.iter().map(|&i| v[i].clone()).collect();
        (rank_of(&g) == g.len()).then_some(g)
    };
    let side1: Vec<(Vec<usize>, Vec<RVec>)> = subsets_by_size(v1.len(), 1, n)
        .into_iter()
        .filter_map(|s| indep(v1, &s).map(|g| (s, g)))
        .collect();
    let side2: Vec<(Vec<usize>, Vec<RVec>)> = subsets_by_size(v2.len(), 1, n)
        .into_iter()
        .filter_map(|s| indep(v2, &s).map(|g| (s, g)))
        .collect();
    for total in 2..=2 * n {
        for k1 in 1..total {
            let k2 = total - k1;
            for (s1, g1) in side1.iter().filter(|(s, _)| s.len() == k1) {
                for (s2, g2) in side2.iter().filter(|(s, _)| s.len() == k2) {
                    if !independent_cones_intersect(g1, g2) {
                        continue;
                    }
                    let point = common_point(g1, g2).ok_or_else(|| {
                        ConeError::Invariant("kernel and LP disagree on cone meet".into())
                    })?;
                    return finish_ray_pair(s1, s2, g1, g2, &point);
                }
            }
        }
    }
    Err(ConeError::TrivialIntersection)
}

fn finish_ray_pair(
    s1: &[usize],
    s2: &[usize],
    g1: &[RVec],
    g2: &[RVec],
    point: &RVec,
) -> Result<RayPair, ConeError> {
    let ray = point
        .primitive()
        .ok_or_else(|| ConeError::Invariant("zero meet point".into()))?;
    let n = ray.dim();
    let coeffs = |g: &[RVec]| -> Result<RVec, ConeError> {
        let (sol, _) = RMat::from_cols(g, n).solve_with_rank(&ray)?;
        sol.filter(|l| l.iter().all(Rat::is_positive))
            .ok_or_else(|| {
                ConeError::Invariant("common ray is not interior to a minimal hull".into())
            })
    };
    let first_coefficients = coeffs(g1)?;
    let second_coefficients = coeffs(g2)?;
    let union: Vec<RVec> = g1.iter().chain(g2).cloned().collect();
    if separated_from_origin(&union).is_none() {
        return Err(ConeError::Invariant(
            "minimal pair is not separated from the origin".into(),
        ));
    }
    Ok(RayPair {
        first: s1.to_vec(),
        second: s2.to_vec(),
        ray,
        first_coefficients,
        second_coefficients,
    })
}

fn in_span(basis: &[RVec], x: &RVec) -> bool {
    if basis.is_empty() {
        return x.is_zero();
    }
    let mut with = basis.to_vec();
    with.push(x.clone());
    rank_of(&with) == rank_of(basis)
}

/// Grows a conical seed `Y ⊆ X` to `n + 1` directions of `X` in conical
/// position spanning `Rⁿ`.
///
/// A dependent seed (`|Y| = rank + 1`) grows one direction at a time by a
/// direction outside its span. With `empty_hull`, a candidate whose addition
/// would capture another direction of `X` is replaced by the captured
/// direction until the hull is empty again; each replacement strictly shrinks
/// the hull, so this terminates. An independent seed is first completed to a
/// dependent conical set inside its span when possible, otherwise grown
/// until it spans, then closed by the first direction keeping it conical.
pub fn lift_conical(
    x: &NormalSet,
    seed: &[usize],
    empty_hull: bool,
) -> Result<Vec<usize>, ConeError> {
    let n = x.dim();
    let all = x.directions();
    if rank_of(all) < n {
        return Err(ConeError::DoesNotSpan);
    }
    if seed.is_empty() {
        return Err(ConeError::Empty);
    }
    let mut y: Vec<usize> = seed.to_vec();
    if !is_conical(&x.pick(&y)) {
        return Err(ConeError::NotConical);
    }
    let hull_ok = |set: &[usize]| -> Option<usize> {
        if !empty_hull {
            return None;
        }
        directions_in_hull(all, set).first().copied()
    };
    if let Some(i) = hull_ok(&y) {
        return Err(ConeError::HullNotEmpty(i));
    }
    loop {
        let gens = x.pick(&y);
        let rank = rank_of(&gens);
        if y.len() == n + 1 && rank == n {
            y.sort_unstable();
            return Ok(y);
        }
        if y.len() == rank + 1
            || rank < n && y.len() == rank && !close_in_span(x, &mut y, empty_hull)
        {
            // grow outside the current span
            let mut p = (0..all.len())
                .find(|&i| !y.contains(&i) && !in_span(&gens, &all[i]))
                .ok_or(ConeError::DoesNotSpan)?;
            loop {
                let mut trial = y.clone();
                trial.push(p);
                match hull_ok(&trial) {
                    Some(q) => p = q,
                    None => break,
                }
            }
            y.push(p);
            continue;
        }
        if y.len() == rank && rank == n {
            let q = (0..all.len())
                .find(|&i| {
                    if y.contains(&i) {
                        return false;
                    }
                    let mut trial = y.clone();
                    trial.push(i);
                    is_conical(&x.pick(&trial)) && hull_ok(&trial).is_none()
                })
                .ok_or(ConeError::NoConicalCompletion)?;
            y.push(q);
        }
    }
}

/// Tries to add a direction inside `span(Y)` keeping `Y` conical (and its
/// hull empty when required). Returns whether one was added.
fn close_in_span(x: &NormalSet, y: &mut Vec<usize>, empty_hull: bool) -> bool {
    let all = x.directions();
    let gens = x.pick(y);
    let found = (0..all.len()).find(|&i| {
        if y.contains(&i) || !in_span(&gens, &all[i]) {
            return false;
        }
        let mut trial = y.clone();
        trial.push(i);
        is_conical(&x.pick(&trial)) && (!empty_hull || directions_in_hull(all, &trial).is_empty())
    });
    match found {
        Some(i) => {
            y.push(i);
            true
        }
        None => false,
    }
}

/// All `k`-subsets of `0..n` whose directions are in conical position.
pub fn conical_subsets(x: &NormalSet, k: usize) -> Vec<Vec<usize>> {
    combinations(x.len(), k)
        .into_iter()
        .filter(|s| is_conical(&x.pick(s)))
        .collect()
}
