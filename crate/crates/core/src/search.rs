//! Seeded instance generation and example mining.
//!
//! Every generated object is a pure function of `(seed, index)`: the random
//! stream for instance `i` is the ChaCha stream `i` under `seed`, so sweeps
//! give identical results sequentially and in parallel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cone::{positively_spans, ConeError, NormalSet};
use crate::criteria::{classify_table, ConicalTable, CriteriaError, MonotypyClass};
use crate::exact::{RVec, Rat};
use crate::par::Exec;
use crate::polytope::{support, HPoly, Polytope, PolytopeError};
use crate::witness::{build_section, find_minimal_conical_set};

/// Attempts per instance before the generator gives up on spanning.
const SPAN_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("dimension must be at least 2, got {0}")]
    Dimension(usize),
    #[error("budget must be at least 1")]
    Budget,
    #[error("{min}..={max} directions cannot positively span dimension {dim}")]
    FacetRange { dim: usize, min: usize, max: usize },
    #[error("coordinate bound must be at least 1")]
    CoordinateBound,
    #[error("no positively spanning set after {0} attempts")]
    Exhausted(usize),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub dim: usize,
    /// Inclusive range of direction counts.
    pub min_facets: usize,
    pub max_facets: usize,
    pub target: MonotypyClass,
    pub seed: u64,
    /// Number of candidate normal sets to examine.
    pub budget: usize,
    /// Largest absolute value of a generated coordinate.
    pub bound: i64,
}

impl SearchSpec {
    pub fn new(
        dim: usize,
        facets: (usize, usize),
        target: MonotypyClass,
        seed: u64,
        budget: usize,
    ) -> Self {
        SearchSpec {
            dim,
            min_facets: facets.0,
            max_facets: facets.1,
            target,
            seed,
            budget,
            bound: 5,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.dim < 2 {
            return Err(SearchError::Dimension(self.dim));
        }
        if self.budget == 0 {
            return Err(SearchError::Budget);
        }
        if self.bound < 1 {
            return Err(SearchError::CoordinateBound);
        }
        if self.min_facets < self.dim + 1
            || self.min_facets > self.max_facets
            || self.max_facets > 64
        {
            return Err(SearchError::FacetRange {
                dim: self.dim,
                min: self.min_facets,
                max: self.max_facets,
            });
        }
        Ok(())
    }

    fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// Where an instance came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub index: u64,
    /// Support adjustments made while realizing, in order.
    pub trace: Vec<String>,
}

/// A normal set with supports realizing every direction as a facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub normals: NormalSet,
    pub supports: Vec<Rat>,
    pub provenance: Provenance,
}

impl Instance {
    pub fn polytope(&self) -> Result<Polytope, PolytopeError> {
        Polytope::from_hpoly(&HPoly::new(self.normals.clone(), self.supports.clone())?)
    }
}

/// Distinct primitive integer directions, positively spanning; stream
/// `index` under the seed.
///
/// Each instance draws its own coordinate bound `b ≤ bound` and samples
/// coordinates in `[-b, b]`: coincidences such as a normal lying in the
/// positive hull of four others are common only on small lattices.
pub fn random_normal_set(spec: &SearchSpec, index: u64) -> Result<NormalSet, SearchError> {
    spec.validate()?;
    let mut rng = spec.rng(index);
    let count = rng.gen_range(spec.min_facets..=spec.max_facets);
    let bound = rng.gen_range(1..=spec.bound);
    for _ in 0..SPAN_ATTEMPTS {
        let mut dirs: Vec<RVec> = Vec::with_capacity(count);
        while dirs.len() < count {
            let v: RVec = (0..spec.dim)
                .map(|_| Rat::from_int(rng.gen_range(-bound..=bound)))
                .collect();
            if let Some(v) = v.primitive() {
                if !dirs.contains(&v) {
                    dirs.push(v);
                }
            }
        }
        if positively_spans(&dirs, spec.dim) {
            return Ok(NormalSet::new(spec.dim, dirs)?);
        }
    }
    Err(SearchError::Exhausted(SPAN_ATTEMPTS))
}

/// Supports making every direction of `n` a facet.
///
/// Seed 0 starts from all-ones; any other seed starts from seeded supports
/// in `{1, 3/2, …, 4}`. While some direction `u` is redundant its support is
/// lowered to a seeded point strictly between the two largest values of
/// `⟨u, ·⟩` on the vertices, which cuts off only the face in direction `u`
/// and keeps every existing facet.
pub fn realize(n: &NormalSet, seed: u64) -> Result<Instance, SearchError> {
    if !n.positively_spans() {
        return Err(PolytopeError::Unbounded.into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut supports: Vec<Rat> = if seed == 0 {
        vec![Rat::one(); n.len()]
    } else {
        (0..n.len())
            .map(|_| Rat::new(rng.gen_range(2..=8), 2))
            .collect()
    };
    let mut trace = Vec::new();
    loop {
        let poly = Polytope::from_hpoly(&HPoly::new(n.clone(), supports.clone())?)?;
        let Some(&i) = poly.redundant().first() else {
            return Ok(Instance {
                normals: n.clone(),
                supports,
                provenance: Provenance {
                    seed,
                    index: 0,
                    trace,
                },
            });
        };
        let u = n.get(i);
        let top = support(&poly, u);
        let below = poly
            .vertices()
            .iter()
            .map(|v| u.dot(v))
            .filter(|x| *x < top)
            .max()
            .ok_or(PolytopeError::NotFullDimensional)?;
        let frac = Rat::new(rng.gen_range(1..=3), 4);
        let h = &below + &(&frac * &(&top - &below));
        trace.push(format!("support {i}: {} -> {h}", supports[i]));
        supports[i] = h;
    }
}

/// A parallelogram: four vertices splitting into two pairs with equal sums.
fn is_parallelogram(v: &[RVec]) -> bool {
    let [a, b, c, d] = v else { return false };
    a.add(b) == c.add(d) || a.add(c) == b.add(d) || a.add(d) == b.add(c)
}

/// The planar picture of a monotypic, not strongly monotypic polytope in
/// `R³`: the minimal conical 4-set has exactly one other normal in its
/// positive hull, and that normal's facet is a parallelogram.
pub fn has_parallelogram_structure(poly: &Polytope, exec: Exec) -> Result<bool, SearchError> {
    let n = poly.normals();
    let table = ConicalTable::build(n, exec)?;
    let Ok(x) = find_minimal_conical_set(&table) else {
        return Ok(false);
    };
    let Ok(frame) = build_section(n, &x) else {
        return Ok(false);
    };
    let facet: Vec<RVec> = poly.incidence()[frame.p]
        .iter()
        .map(|&v| poly.vertices()[v].clone())
        .collect();
    Ok(is_parallelogram(&facet))
}

/// Examines candidate `index`: its normal set, class and realization.
pub fn candidate(spec: &SearchSpec, index: u64) -> Result<Option<Instance>, SearchError> {
    let n = random_normal_set(spec, index)?;
    let table = ConicalTable::build(&n, Exec::Sequential)?;
    if classify_table(&table)?.class != spec.target {
        return Ok(None);
    }
    let mut inst = realize(&n, 0)?;
    inst.provenance.seed = spec.seed;
    inst.provenance.index = index;
    if spec.target == MonotypyClass::MonotypicNotStrong
        && spec.dim == 3
        && !has_parallelogram_structure(&inst.polytope()?, Exec::Sequential)?
    {
        return Ok(None);
    }
    Ok(Some(inst))
}

/// The lowest-index candidate within the budget matching the target.
pub fn find_example(spec: &SearchSpec, exec: Exec) -> Result<Option<Instance>, SearchError> {
    spec.validate()?;
    let found = exec.find_first(spec.budget, |i| match candidate(spec, i as u64) {
        Ok(None) => None,
        other => Some(other),
    });
    match found {
        None => Ok(None),
        Some((_, r)) => r,
    }
}
