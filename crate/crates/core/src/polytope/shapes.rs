//! Standard polytopes and their normal sets.

use super::{HPoly, Polytope};
use crate::cone::NormalSet;
use crate::exact::{RVec, Rat};

/// `±eᵢ`, ordered `e₁, −e₁, e₂, −e₂, …`.
pub fn cube_normals(n: usize) -> NormalSet {
    let dirs = (0..n)
        .flat_map(|i| {
            let e = RVec::unit(n, i);
            [e.clone(), e.neg()]
        })
        .collect();
    NormalSet::new(n, dirs).expect("axis directions are distinct")
}

/// All `(±1, …, ±1)`.
pub fn cross_polytope_normals(n: usize) -> NormalSet {
    let dirs = (0..1u32 << n)
        .map(|mask| {
            (0..n)
                .map(|i| Rat::from_int(if mask >> i & 1 == 1 { -1 } else { 1 }))
                .collect()
        })
        .collect();
    NormalSet::new(n, dirs).expect("sign vectors are distinct")
}

/// `−e₁, …, −eₙ, (1, …, 1)`.
pub fn simplex_normals(n: usize) -> NormalSet {
    let mut dirs: Vec<RVec> = (0..n).map(|i| RVec::unit(n, i).neg()).collect();
    dirs.push(RVec::new(vec![Rat::one(); n]));
    NormalSet::new(n, dirs).expect("simplex directions are distinct")
}

/// The polytope `{x : ⟨u, x⟩ ≤ 1, u ∈ N}`.
pub fn unit_polytope(n: &NormalSet) -> Polytope {
    let h = HPoly::new(n.clone(), vec![Rat::one(); n.len()]).expect("positively spanning");
    Polytope::from_hpoly(&h).expect("contains the origin")
}

/// `[−r, r]ⁿ`.
pub fn cube(n: usize, r: i64) -> Polytope {
    let normals = cube_normals(n);
    let h = HPoly::new(normals, vec![Rat::from_int(r); 2 * n]).expect("valid cube");
    Polytope::from_hpoly(&h).expect("non-empty cube")
}

/// `conv{±eᵢ}`.
pub fn cross_polytope(n: usize) -> Polytope {
    unit_polytope(&cross_polytope_normals(n))
}

/// `conv{0, e₁, …, eₙ}`.
pub fn simplex(n: usize) -> Polytope {
    let mut supports = vec![Rat::zero(); n];
    supports.push(Rat::one());
    let h = HPoly::new(simplex_normals(n), supports).expect("valid simplex");
    Polytope::from_hpoly(&h).expect("non-empty simplex")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(cube(4, 1).vertices().len(), 16);
        assert_eq!(cross_polytope(3).vertices().len(), 6);
        assert_eq!(simplex(4).vertices().len(), 5);
        assert!(cross_polytope(3).is_irredundant());
    }
}
