use monotypy::criteria::{classify_with, MonotypyClass};
use monotypy::exact::{RVec, Rat};
use monotypy::format::InstanceFile;
use monotypy::par::Exec;
use monotypy::polytope::{intersect_translate, is_summand};
use monotypy::search::{candidate, find_example, random_normal_set, realize, SearchSpec};
use monotypy::witness::{construct_witness, verify_witness};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn streams_are_deterministic(seed in any::<u64>(), index in 0u64..1000, dim in 2usize..=4) {
        let spec = SearchSpec::new(dim, (dim + 1, 2 * dim + 2), MonotypyClass::StronglyMonotypic, seed, 1);
        let a = random_normal_set(&spec, index).unwrap();
        prop_assert_eq!(&a, &random_normal_set(&spec, index).unwrap());
        prop_assert!(a.positively_spans());
        let r = realize(&a, seed % 4).unwrap();
        prop_assert_eq!(&r, &realize(&a, seed % 4).unwrap());
        prop_assert!(r.polytope().unwrap().redundant().is_empty());
    }
}

#[test]
fn emitted_instances_are_valid_and_worker_independent() {
    for target in [
        MonotypyClass::StronglyMonotypic,
        MonotypyClass::MonotypicNotStrong,
        MonotypyClass::NotMonotypic,
    ] {
        let spec = SearchSpec::new(3, (4, 8), target, 5, 20_000);
        let seq = find_example(&spec, Exec::Sequential)
            .unwrap()
            .expect("found within budget");
        let par = find_example(&spec, Exec::Parallel)
            .unwrap()
            .expect("found within budget");
        assert_eq!(seq, par);
        let p = seq.polytope().unwrap();
        assert!(p.is_full_dimensional() && p.redundant().is_empty());
        assert_eq!(
            classify_with(&seq.normals, Exec::Sequential).unwrap().class,
            target
        );
    }
}

#[test]
fn mined_instances_have_witnesses() {
    let spec = SearchSpec::new(3, (4, 8), MonotypyClass::MonotypicNotStrong, 11, 1);
    let mut found = 0;
    for i in 0..5000 {
        if let Some(inst) = candidate(&spec, i).unwrap() {
            let p = inst.polytope().unwrap();
            let w = construct_witness(&p).unwrap();
            assert!(w.all_checks_pass(), "index {i}: {:?}", w.checks);
            assert!(verify_witness(&p, &w.t).unwrap());
            found += 1;
            if found == 6 {
                break;
            }
        }
    }
    assert_eq!(found, 6);
}

#[test]
fn mined_strongly_monotypic_translates_are_summands() {
    let spec = SearchSpec::new(3, (4, 6), MonotypyClass::StronglyMonotypic, 3, 1);
    let mut checked = 0;
    for i in 0..200 {
        let Some(inst) = candidate(&spec, i).unwrap() else {
            continue;
        };
        let p = inst.polytope().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(i);
        for _ in 0..200 {
            let t: RVec = (0..3)
                .map(|_| Rat::new(rng.gen_range(-12..=12), 4))
                .collect();
            if let Some(cap) = intersect_translate(&p, &t) {
                assert!(
                    is_summand(&cap, &p).unwrap().is_summand,
                    "index {i}, t = {t}"
                );
            }
        }
        checked += 1;
        if checked == 3 {
            break;
        }
    }
    assert_eq!(checked, 3);
}

#[test]
fn pinned_fixture_is_reproduced_by_the_miner() {
    let text = include_str!("../../../fixtures/mono-not-strong-r3.json");
    let pinned = InstanceFile::parse(text).unwrap();
    let spec = SearchSpec::new(3, (4, 8), MonotypyClass::MonotypicNotStrong, 42, 100_000);
    let inst = find_example(&spec, Exec::default()).unwrap().unwrap();
    assert_eq!(InstanceFile::from_instance(&inst), pinned);
}
