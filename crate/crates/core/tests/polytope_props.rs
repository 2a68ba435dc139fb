mod common;

use common::{full_polytope, int_vec};
use monotypy::exact::lp::{LpOutcome, Problem, Relation};
use monotypy::exact::{RVec, Rat};
use monotypy::polytope::{
    intersect_translate, is_summand, minkowski_sum, poly_equal, support, vertex_enumerate, HPoly,
    Polytope,
};
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = Polytope> {
    prop_oneof![full_polytope(2, 6), full_polytope(3, 6)]
}

fn pair() -> impl Strategy<Value = (Polytope, Polytope)> {
    prop_oneof![
        (full_polytope(2, 4), full_polytope(2, 4)),
        (full_polytope(3, 4), full_polytope(3, 4)),
    ]
}

/// Feasibility of `x ∈ P`, `x − t ∈ P` by a direct LP.
fn meets_translate(p: &Polytope, t: &RVec) -> bool {
    let n = p.ambient_dim();
    let mut lp = Problem::new();
    let x = lp.add_vars(n, true);
    for (u, h) in p.normals().directions().iter().zip(p.supports()) {
        let terms: Vec<(usize, Rat)> = (0..n).map(|k| (x + k, u[k].clone())).collect();
        lp.constrain(terms.clone(), Relation::Le, h.clone());
        lp.constrain(terms, Relation::Le, h + &u.dot(t));
    }
    !matches!(lp.solve(), LpOutcome::Infeasible)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn h_representation_round_trips(p in shape()) {
        let h = HPoly::new(p.normals().clone(), p.supports().to_vec()).unwrap();
        let q = vertex_enumerate(&h).unwrap();
        prop_assert_eq!(q.vertices(), p.vertices());
    }

    #[test]
    fn supports_add_under_sums((p, q) in pair()) {
        let s = minkowski_sum(&p, &q).unwrap();
        for u in s.normals().directions() {
            prop_assert_eq!(support(&p, u) + support(&q, u), support(&s, u));
        }
    }

    #[test]
    fn translates_meet_exactly_when_the_lp_is_feasible(
        (p, t) in shape().prop_flat_map(|p| { let n = p.ambient_dim(); (Just(p), int_vec(n, 6)) })
    ) {
        prop_assert!(poly_equal(&intersect_translate(&p, &RVec::zeros(p.ambient_dim())).unwrap(), &p));
        let t = t.scale(&Rat::new(1, 2));
        let cap = intersect_translate(&p, &t);
        prop_assert_eq!(cap.is_some(), meets_translate(&p, &t));
        if let Some(c) = cap {
            prop_assert!(c.vertices().iter().all(|v| p.contains(v) && p.contains(&v.sub(&t))));
        }
    }

    #[test]
    fn sums_have_their_summands((s, l) in pair()) {
        let p = minkowski_sum(&s, &l).unwrap();
        prop_assert!(is_summand(&s, &p).unwrap().is_summand);
        prop_assert!(is_summand(&l, &p).unwrap().is_summand);
    }

    #[test]
    fn edge_and_constructive_tests_agree((s, p) in pair()) {
        // disagreement surfaces as an error
        is_summand(&s, &p).unwrap();
        is_summand(&p, &s).unwrap();
    }

    #[test]
    fn mutual_summands_are_translates(
        ((s, p), t) in pair().prop_flat_map(|(s, p)| { let n = s.ambient_dim(); (Just((s, p)), int_vec(n, 3)) })
    ) {
        for (a, b) in [(s.clone(), p.clone()), (s.clone(), s.translate(&t))] {
            if is_summand(&a, &b).unwrap().is_summand && is_summand(&b, &a).unwrap().is_summand {
                let shift = b.vertices()[0].sub(&a.vertices()[0]);
                prop_assert!(poly_equal(&a.translate(&shift), &b));
            }
        }
    }
}
