//! JSON interchange: rationals travel as `"p/q"` strings.

/// Serde adapter for a single [`RVec`](crate::exact::RVec).
pub mod rvec {
    use crate::exact::{RVec, Rat};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &RVec, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RVec, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|x| x.parse::<Rat>().map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter for a list of vectors.
pub mod rvec_list {
    use crate::exact::{RVec, Rat};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[RVec], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            v.iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<RVec>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.parse::<Rat>().map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// Serde adapter for a single [`Rat`](crate::exact::Rat).
pub mod rat {
    use crate::exact::Rat;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

use serde::{Deserialize, Serialize};

use crate::cone::{ConeError, NormalSet};
use crate::exact::{RVec, Rat};
use crate::polytope::{HPoly, Polytope, PolytopeError};
use crate::search::{Instance, Provenance};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("normals: {0}")]
    Normals(#[from] ConeError),
    #[error("polytope: {0}")]
    Polytope(#[from] PolytopeError),
    #[error("supports are required")]
    MissingSupports,
}

fn field_error(field: impl Into<String>, message: impl ToString) -> FormatError {
    FormatError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

/// A normal set, optionally with supports describing `{⟨uᵢ, x⟩ ≤ hᵢ}`.
///
/// Normals need not be primitive; supports are rescaled with them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub dimension: usize,
    pub normals: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supports: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        serde_json::from_str(text).map_err(|e| field_error("instance", e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    fn raw_normals(&self) -> Result<Vec<RVec>, FormatError> {
        self.normals
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != self.dimension {
                    return Err(field_error(
                        format!("normals[{i}]"),
                        format!(
                            "expected {} coordinates, found {}",
                            self.dimension,
                            row.len()
                        ),
                    ));
                }
                row.iter()
                    .enumerate()
                    .map(|(j, x)| {
                        x.parse::<Rat>()
                            .map_err(|e| field_error(format!("normals[{i}][{j}]"), e))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn normal_set(&self) -> Result<NormalSet, FormatError> {
        if self.dimension == 0 {
            return Err(field_error("dimension", "must be positive"));
        }
        Ok(NormalSet::new(self.dimension, self.raw_normals()?)?)
    }

    /// The polytope; requires supports.
    pub fn polytope(&self) -> Result<Polytope, FormatError> {
        let raw = self.raw_normals()?;
        let normals = self.normal_set()?;
        let supports = self.supports.as_ref().ok_or(FormatError::MissingSupports)?;
        if supports.len() != raw.len() {
            return Err(field_error(
                "supports",
                format!("{} values for {} normals", supports.len(), raw.len()),
            ));
        }
        let mut scaled = Vec::with_capacity(raw.len());
        for (i, (s, v)) in supports.iter().zip(&raw).enumerate() {
            let h: Rat = s
                .parse()
                .map_err(|e| field_error(format!("supports[{i}]"), e))?;
            let u = normals.get(i);
            let k = (0..u.dim()).find(|&k| !u[k].is_zero()).expect("nonzero");
            scaled.push(&h / &(&v[k] / &u[k]));
        }
        Ok(Polytope::from_hpoly(&HPoly::new(normals, scaled)?)?)
    }

    pub fn from_normals(n: &NormalSet) -> Self {
        InstanceFile {
            dimension: n.dim(),
            normals: n.directions().iter().map(strings).collect(),
            supports: None,
            provenance: None,
        }
    }

    pub fn from_polytope(p: &Polytope) -> Self {
        InstanceFile {
            supports: Some(p.supports().iter().map(Rat::to_string).collect()),
            ..Self::from_normals(p.normals())
        }
    }

    pub fn from_instance(inst: &Instance) -> Self {
        InstanceFile {
            supports: Some(inst.supports.iter().map(Rat::to_string).collect()),
            provenance: Some(inst.provenance.clone()),
            ..Self::from_normals(&inst.normals)
        }
    }
}

fn strings(v: &RVec) -> Vec<String> {
    v.iter().map(Rat::to_string).collect()
}
