//! The four combinatorial conditions on a normal set and the classifier.
//!
//! Conditions D and M3′ characterize monotypy; DD and S4′ characterize
//! strong monotypy. D, DD and S4′ share a memoized table of the conical
//! `(n+1)`-subsets and of the directions inside each of their positive hulls.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cone::{
    common_point, exclusion_witness, in_conical_position, independent_cones_intersect, is_conical,
    is_primitive, positively_spans, ConeError, ConicalCertificate, NormalSet,
};
use crate::exact::{rank_of, RVec};
use crate::par::Exec;
use crate::subsets::{combinations, indices_of, mask_of, subsets_by_size};

/// Largest normal set swept by the exponential S4′ check unless overridden.
pub const DEFAULT_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CriteriaError {
    #[error("the directions do not positively span the space, so no polytope has them as normals")]
    NotPolytopal,
    #[error("{size} directions exceed the sweep cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("at most 64 directions are supported, got {0}")]
    TooManyDirections(usize),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    D,
    DD,
    M3Prime,
    S4Prime,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::D => "D",
            Condition::DD => "DD",
            Condition::M3Prime => "M3'",
            Condition::S4Prime => "S4'",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonotypyClass {
    NotMonotypic,
    MonotypicNotStrong,
    StronglyMonotypic,
}

impl fmt::Display for MonotypyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonotypyClass::NotMonotypic => "not monotypic",
            MonotypyClass::MonotypicNotStrong => "monotypic, not strongly monotypic",
            MonotypyClass::StronglyMonotypic => "strongly monotypic",
        })
    }
}

/// A Farkas vector showing direction `index` is outside a positive hull.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub index: usize,
    #[serde(with = "crate::format::rvec")]
    pub witness: RVec,
}

impl Exclusion {
    fn check(&self, members: &[RVec], x: &RVec) -> bool {
        self.witness.dim() == x.dim()
            && members.iter().all(|m| !self.witness.dot(m).is_negative())
            && self.witness.dot(x).is_negative()
    }
}

/// A conical `(n+1)`-subset whose positive hull holds no other direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DViolation {
    pub conical: ConicalCertificate,
    /// One per direction outside the subset.
    pub exclusions: Vec<Exclusion>,
}

impl DViolation {
    /// Re-checks against the directions the indices refer to.
    pub fn validate(&self, n: &NormalSet) -> bool {
        let subset = &self.conical.subset;
        if subset.len() != n.dim() + 1 || !self.conical.validate(n.directions()) {
            return false;
        }
        let members = n.pick(subset);
        let others: Vec<usize> = (0..n.len()).filter(|i| !subset.contains(i)).collect();
        self.exclusions.len() == others.len()
            && self
                .exclusions
                .iter()
                .zip(&others)
                .all(|(e, &i)| e.index == i && e.check(&members, n.get(i)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// The condition holds; exact enumeration counts.
    Holds {
        examined: u64,
        candidates: u64,
    },
    DViolation(DViolation),
    DDViolation {
        conical: ConicalCertificate,
    },
    M3Violation {
        first: Vec<usize>,
        second: Vec<usize>,
        /// Non-zero point in both positive hulls.
        #[serde(with = "crate::format::rvec")]
        point: RVec,
    },
    /// A positively spanning sub-normal-set `subset` violating D; the
    /// violation's indices refer to `subset`.
    S4Violation {
        subset: Vec<usize>,
        violation: DViolation,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub condition: Condition,
    pub holds: bool,
    pub certificate: Certificate,
}

impl Verdict {
    /// Re-checks the certificate against `n`.
    pub fn validate(&self, n: &NormalSet) -> bool {
        match (&self.certificate, self.condition) {
            (Certificate::Holds { .. }, _) => self.holds,
            (Certificate::DViolation(v), Condition::D) => !self.holds && v.validate(n),
            (Certificate::DDViolation { conical }, Condition::DD) => {
                !self.holds
                    && conical.subset.len() == n.dim() + 1
                    && conical.validate(n.directions())
            }
            (
                Certificate::M3Violation {
                    first,
                    second,
                    point,
                },
                Condition::M3Prime,
            ) => {
                !self.holds
                    && first.iter().all(|i| !second.contains(i))
                    && is_primitive(first, n)
                    && is_primitive(second, n)
                    && !point.is_zero()
                    && in_hull(&n.pick(first), point)
                    && in_hull(&n.pick(second), point)
            }
            (Certificate::S4Violation { subset, violation }, Condition::S4Prime) => {
                let m = n.restrict(subset);
                !self.holds && m.positively_spans() && violation.validate(&m)
            }
            _ => false,
        }
    }
}

fn in_hull(gens: &[RVec], x: &RVec) -> bool {
    matches!(crate::cone::cone_member(gens, x), Ok(Some(_)))
}

/// Both verdicts behind a classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub class: MonotypyClass,
    pub dd: Verdict,
    pub d: Verdict,
}

/// The conical `(n+1)`-subsets of a normal set, in lexicographic order, with
/// the mask of other directions inside each positive hull.
#[derive(Debug, Clone)]
pub struct ConicalTable {
    normals: NormalSet,
    /// `(subset mask, inside mask)` for each conical subset.
    entries: Vec<(u64, u64)>,
    examined: u64,
}

impl ConicalTable {
    pub fn build(n: &NormalSet, exec: Exec) -> Result<Self, CriteriaError> {
        if n.len() > 64 {
            return Err(CriteriaError::TooManyDirections(n.len()));
        }
        let subsets = combinations(n.len(), n.dim() + 1);
        let rows = exec.map_slice(&subsets, |s| {
            let gens = n.pick(s);
            is_conical(&gens).then(|| {
                let inside = (0..n.len())
                    .filter(|i| !s.contains(i) && in_hull(&gens, n.get(*i)))
                    .fold(0u64, |m, i| m | 1 << i);
                (mask_of(s), inside)
            })
        });
        Ok(ConicalTable {
            normals: n.clone(),
            entries: rows.into_iter().flatten().collect(),
            examined: subsets.len() as u64,
        })
    }

    pub fn normals(&self) -> &NormalSet {
        &self.normals
    }

    /// Conical subsets as `(indices, indices of directions inside)`.
    pub fn conical(&self) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> + '_ {
        self.entries
            .iter()
            .map(|&(s, inside)| (indices_of(s), indices_of(inside)))
    }

    pub fn conical_count(&self) -> usize {
        self.entries.len()
    }

    /// First conical subset inside `within` whose hull misses `within`.
    fn first_empty_hull(&self, within: u64) -> Option<u64> {
        self.entries
            .iter()
            .find(|&&(s, inside)| s & !within == 0 && inside & within == 0)
            .map(|&(s, _)| s)
    }

    fn first_conical(&self) -> Option<u64> {
        self.entries.first().map(|&(s, _)| s)
    }
}

fn require_polytopal(n: &NormalSet) -> Result<(), CriteriaError> {
    if n.positively_spans() {
        Ok(())
    } else {
        Err(CriteriaError::NotPolytopal)
    }
}

fn conical_certificate(
    n: &NormalSet,
    subset: &[usize],
) -> Result<ConicalCertificate, CriteriaError> {
    let mut cert = in_conical_position(&n.pick(subset))
        .ok_or_else(|| ConeError::Invariant("conical subset lost its certificate".into()))?;
    cert.subset = subset.to_vec();
    Ok(cert)
}

fn d_violation(n: &NormalSet, subset: &[usize]) -> Result<DViolation, CriteriaError> {
    let conical = conical_certificate(n, subset)?;
    let members = n.pick(subset);
    let exclusions = (0..n.len())
        .filter(|i| !subset.contains(i))
        .map(|i| {
            exclusion_witness(&members, n.get(i))
                .map(|witness| Exclusion { index: i, witness })
                .ok_or_else(|| {
                    ConeError::Invariant("direction unexpectedly inside the hull".into())
                })
        })
        .collect::<Result<_, _>>()?;
    Ok(DViolation {
        conical,
        exclusions,
    })
}

/// Condition D from a prebuilt table.
pub fn condition_d(table: &ConicalTable) -> Result<Verdict, CriteriaError> {
    let n = &table.normals;
    let all = if n.len() == 64 {
        u64::MAX
    } else {
        (1u64 << n.len()) - 1
    };
    Ok(match table.first_empty_hull(all) {
        Some(s) => Verdict {
            condition: Condition::D,
            holds: false,
            certificate: Certificate::DViolation(d_violation(n, &indices_of(s))?),
        },
        None => Verdict {
            condition: Condition::D,
            holds: true,
            certificate: Certificate::Holds {
                examined: table.examined,
                candidates: table.entries.len() as u64,
            },
        },
    })
}

/// Condition DD from a prebuilt table.
pub fn condition_dd(table: &ConicalTable) -> Result<Verdict, CriteriaError> {
    Ok(match table.first_conical() {
        Some(s) => Verdict {
            condition: Condition::DD,
            holds: false,
            certificate: Certificate::DDViolation {
                conical: conical_certificate(&table.normals, &indices_of(s))?,
            },
        },
        None => Verdict {
            condition: Condition::DD,
            holds: true,
            certificate: Certificate::Holds {
                examined: table.examined,
                candidates: 0,
            },
        },
    })
}

/// Every conical `(n+1)`-subset has another direction in its positive hull.
pub fn check_condition_d(n: &NormalSet) -> Result<Verdict, CriteriaError> {
    require_polytopal(n)?;
    condition_d(&ConicalTable::build(n, Exec::default())?)
}

/// No `(n+1)`-subset is in conical position.
pub fn check_condition_dd(n: &NormalSet) -> Result<Verdict, CriteriaError> {
    require_polytopal(n)?;
    condition_dd(&ConicalTable::build(n, Exec::default())?)
}

/// Disjoint primitive subsets have positive hulls meeting only at the origin.
pub fn check_m3prime(n: &NormalSet) -> Result<Verdict, CriteriaError> {
    check_m3prime_with(n, Exec::default())
}

pub fn check_m3prime_with(n: &NormalSet, exec: Exec) -> Result<Verdict, CriteriaError> {
    require_polytopal(n)?;
    let candidates = subsets_by_size(n.len(), 1, n.dim());
    let primitive: Vec<Vec<usize>> = exec
        .map_slice(&candidates, |s| is_primitive(s, n))
        .into_iter()
        .zip(candidates)
        .filter_map(|(ok, s)| ok.then_some(s))
        .collect();
    let masks: Vec<u64> = primitive.iter().map(|s| mask_of(s)).collect();
    let gens: Vec<Vec<RVec>> = primitive.iter().map(|s| n.pick(s)).collect();
    let found = exec.find_first(primitive.len(), |i| {
        (i + 1..primitive.len())
            .find(|&j| masks[i] & masks[j] == 0 && independent_cones_intersect(&gens[i], &gens[j]))
    });
    Ok(match found {
        Some((i, j)) => {
            let point = common_point(&gens[i], &gens[j]).ok_or_else(|| {
                ConeError::Invariant("kernel and LP disagree on cone meet".into())
            })?;
            Verdict {
                condition: Condition::M3Prime,
                holds: false,
                certificate: Certificate::M3Violation {
                    first: primitive[i].clone(),
                    second: primitive[j].clone(),
                    point,
                },
            }
        }
        None => {
            let k = primitive.len() as u64;
            Verdict {
                condition: Condition::M3Prime,
                holds: true,
                certificate: Certificate::Holds {
                    examined: k * k.saturating_sub(1) / 2,
                    candidates: k,
                },
            }
        }
    })
}

/// Every positively spanning sub-normal-set satisfies condition D.
pub fn check_s4prime(n: &NormalSet, cap: usize) -> Result<Verdict, CriteriaError> {
    require_polytopal(n)?;
    if n.len() > cap {
        return Err(CriteriaError::CapExceeded { size: n.len(), cap });
    }
    condition_s4prime(
        &ConicalTable::build(n, Exec::default())?,
        cap,
        Exec::default(),
    )
}

/// S4′ from a prebuilt table. Sub-normal-sets are swept by size, then
/// lexicographically; condition D is read off the table by bit operations
/// and only D-failing subsets are tested for positive spanning.
pub fn condition_s4prime(
    table: &ConicalTable,
    cap: usize,
    exec: Exec,
) -> Result<Verdict, CriteriaError> {
    let n = &table.normals;
    if n.len() > cap {
        return Err(CriteriaError::CapExceeded { size: n.len(), cap });
    }
    let dim = n.dim();
    let mut examined = 0u64;
    let mut candidates = 0u64;
    for k in dim + 1..=n.len() {
        let layer: Vec<u64> = combinations(n.len(), k)
            .iter()
            .map(|s| mask_of(s))
            .collect();
        examined += layer.len() as u64;
        let flagged: Vec<Option<u64>> = exec.map_slice(&layer, |&m| table.first_empty_hull(m));
        candidates += flagged.iter().filter(|f| f.is_some()).count() as u64;
        let hit = exec.find_first(layer.len(), |i| {
            let bad = flagged[i]?;
            let dirs = n.pick(&indices_of(layer[i]));
            (rank_of(&dirs) == dim && positively_spans(&dirs, dim)).then_some(bad)
        });
        if let Some((i, bad)) = hit {
            let subset = indices_of(layer[i]);
            let local: Vec<usize> = indices_of(bad)
                .iter()
                .map(|b| {
                    subset
                        .binary_search(b)
                        .expect("violation lies inside the subset")
                })
                .collect();
            let violation = d_violation(&n.restrict(&subset), &local)?;
            return Ok(Verdict {
                condition: Condition::S4Prime,
                holds: false,
                certificate: Certificate::S4Violation { subset, violation },
            });
        }
    }
    Ok(Verdict {
        condition: Condition::S4Prime,
        holds: true,
        certificate: Certificate::Holds {
            examined,
            candidates,
        },
    })
}

/// Runs DD, then D, on one shared table.
pub fn classify(n: &NormalSet) -> Result<Classification, CriteriaError> {
    classify_with(n, Exec::default())
}

pub fn classify_with(n: &NormalSet, exec: Exec) -> Result<Classification, CriteriaError> {
    require_polytopal(n)?;
    let table = ConicalTable::build(n, exec)?;
    classify_table(&table)
}

pub fn classify_table(table: &ConicalTable) -> Result<Classification, CriteriaError> {
    let dd = condition_dd(table)?;
    let d = condition_d(table)?;
    let class = match (d.holds, dd.holds) {
        (false, _) => MonotypyClass::NotMonotypic,
        (true, false) => MonotypyClass::MonotypicNotStrong,
        (true, true) => MonotypyClass::StronglyMonotypic,
    };
    Ok(Classification { class, dd, d })
}
