//! OFF export for three-dimensional polytopes.
//!
//! OFF coordinates are decimal approximations; the JSON sidecar carries the
//! exact data.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Polytope, PolytopeError};
use crate::exact::{RVec, Rat};

fn cross(a: &RVec, b: &RVec) -> RVec {
    RVec::new(vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

/// Counter-clockwise order of coplanar points seen from the tip of `u`.
fn cyclic_order(points: &[RVec], idx: &[usize], u: &RVec) -> Vec<usize> {
    let k = Rat::from_int(idx.len() as i64);
    let c = idx
        .iter()
        .fold(RVec::zeros(3), |acc, &i| acc.add(&points[i]))
        .scale(&k.recip());
    let rel = |i: usize| points[i].sub(&c);
    let r = rel(idx[0]);
    // 0: angle 0, 1: (0, π), 2: [π, 2π)
    let half = |a: &RVec| -> u8 {
        let s = u.dot(&cross(&r, a));
        if s.is_positive() {
            1
        } else if s.is_zero() && r.dot(a).is_positive() {
            0
        } else {
            2
        }
    };
    let mut out = idx.to_vec();
    out.sort_by(|&i, &j| {
        let (a, b) = (rel(i), rel(j));
        half(&a).cmp(&half(&b)).then_with(|| {
            let s = u.dot(&cross(&a, &b));
            if s.is_positive() {
                Ordering::Less
            } else if s.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    out
}

/// Faces to draw: the facets of a solid, or the polygon itself if flat.
fn faces(p: &Polytope) -> Vec<Vec<usize>> {
    match p.dim() {
        3 => p
            .facet_indices()
            .into_iter()
            .map(|i| cyclic_order(p.vertices(), &p.incidence()[i], p.normals().get(i)))
            .collect(),
        2 => {
            let all: Vec<usize> = (0..p.vertices().len()).collect();
            let v = p.vertices();
            let u = (1..v.len())
                .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
                .map(|(i, j)| cross(&v[i].sub(&v[0]), &v[j].sub(&v[0])))
                .find(|x| !x.is_zero())
                .expect("a polygon has three non-collinear vertices");
            vec![cyclic_order(v, &all, &u)]
        }
        _ => Vec::new(),
    }
}

/// Exact companion data of an OFF file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffSidecar {
    #[serde(with = "crate::format::rvec_list")]
    pub vertices: Vec<RVec>,
    pub faces: Vec<Vec<usize>>,
    #[serde(with = "crate::format::rvec_list")]
    pub normals: Vec<RVec>,
    pub supports: Vec<String>,
    pub precision: usize,
}

fn require_3d(p: &Polytope) -> Result<(), PolytopeError> {
    if p.ambient_dim() != 3 {
        return Err(PolytopeError::DimensionMismatch {
            expected: 3,
            found: p.ambient_dim(),
        });
    }
    Ok(())
}

/// OFF text with coordinates rounded to `precision` decimals.
pub fn to_off(p: &Polytope, precision: usize) -> Result<String, PolytopeError> {
    require_3d(p)?;
    let faces = faces(p);
    let mut out = String::new();
    writeln!(out, "OFF").unwrap();
    writeln!(
        out,
        "# decimal approximations to {precision} places; exact coordinates are in the JSON sidecar"
    )
    .unwrap();
    writeln!(
        out,
        "{} {} {}",
        p.vertices().len(),
        faces.len(),
        p.edges().len()
    )
    .unwrap();
    for v in p.vertices() {
        let coords: Vec<String> = v.iter().map(|x| x.to_decimal(precision)).collect();
        writeln!(out, "{}", coords.join(" ")).unwrap();
    }
    for f in &faces {
        let ids: Vec<String> = f.iter().map(usize::to_string).collect();
        writeln!(out, "{} {}", f.len(), ids.join(" ")).unwrap();
    }
    Ok(out)
}

pub fn off_sidecar(p: &Polytope, precision: usize) -> Result<OffSidecar, PolytopeError> {
    require_3d(p)?;
    Ok(OffSidecar {
        vertices: p.vertices().to_vec(),
        faces: faces(p),
        normals: p.normals().directions().to_vec(),
        supports: p.supports().iter().map(Rat::to_string).collect(),
        precision,
    })
}
