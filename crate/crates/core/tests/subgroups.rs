mod common;

use nilclose::automata;
use nilclose::freegroup::{Letter, Word};
use nilclose::stallings::Subgroup;
use nilclose::{Limits, ReducedWord};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn letters(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..4usize).prop_map(Letter::from_index), 0..max)
}

fn subgroup(seed: u64) -> (Vec<ReducedWord>, Subgroup) {
    random_subgroup(&mut ChaCha8Rng::seed_from_u64(seed), &ab(), 3, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_a_normal_form(w in letters(12), v in letters(12)) {
        let r = Word(w.clone()).reduce();
        prop_assert!(ReducedWord::is_reduced(r.letters()));
        prop_assert_eq!(r.clone().into_word().reduce(), r.clone());
        prop_assert!(r.mul(&r.inverse()).is_empty());
        prop_assert_eq!(r.inverse().inverse(), r.clone());
        let mut wv = w.clone();
        wv.extend(v.iter().copied());
        prop_assert_eq!(Word(wv).reduce(), r.mul(&Word(v).reduce()));
    }

    #[test]
    fn products_of_generators_are_members(seed in any::<u64>()) {
        let (gens, h) = subgroup(seed);
        for w in brute_force_elements(&gens, 3) {
            prop_assert!(h.member(&w).unwrap());
        }
    }

    #[test]
    fn language_matches_membership(seed in any::<u64>()) {
        let (_, h) = subgroup(seed);
        let lang = h.language(&Limits::default()).unwrap();
        for w in reduced_up_to(&ab(), 5) {
            prop_assert_eq!(automata::accepts(&lang, &w.clone().into_word()).unwrap(), h.member(&w).unwrap());
        }
    }

    #[test]
    fn basis_generates_and_euler_characteristic(seed in any::<u64>()) {
        let (gens, h) = subgroup(seed);
        let basis = h.basis();
        prop_assert_eq!(basis.len(), h.rank());
        let edges = h.graph().positive_edges().count();
        prop_assert_eq!(h.rank() + h.num_vertices(), edges + 1);
        prop_assert_eq!(Subgroup::fold(&ab(), &basis).unwrap(), h.clone());
        for g in &gens {
            let c = h.coordinates(g).unwrap();
            prop_assert_eq!(c.len(), h.rank());
        }
    }

    #[test]
    fn graph_is_independent_of_generating_set(seed in any::<u64>()) {
        let (mut gens, h) = subgroup(seed);
        let extra = gens[0].mul(gens.last().unwrap());
        gens.reverse();
        gens.push(extra);
        gens.push(gens[0].inverse());
        prop_assert_eq!(Subgroup::fold(&ab(), &gens).unwrap(), h);
    }

    #[test]
    fn intersection_is_pointwise(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (_, h) = subgroup(s1);
        let (_, k) = subgroup(s2);
        let i = h.intersect(&k).unwrap();
        prop_assert!(h.contains(&i).unwrap() && k.contains(&i).unwrap());
        for w in reduced_up_to(&ab(), 5) {
            prop_assert_eq!(i.member(&w).unwrap(), h.member(&w).unwrap() && k.member(&w).unwrap());
        }
    }

    #[test]
    fn conjugation_moves_members(seed in any::<u64>(), g in letters(4)) {
        let (gens, h) = subgroup(seed);
        let g = Word(g).reduce();
        let c = h.conjugate(&g).unwrap();
        for x in &gens {
            prop_assert!(c.member(&g.conjugate(x)).unwrap());
        }
        prop_assert_eq!(c.conjugate(&g.inverse()).unwrap(), h);
    }

    #[test]
    fn overgroups_contain_the_subgroup(seed in any::<u64>()) {
        let (_, h) = subgroup(seed);
        if h.num_vertices() <= 6 {
            let overs = h.overgroups(&Limits::default()).unwrap();
            prop_assert!(overs.contains(&h));
            for o in &overs {
                prop_assert!(o.contains(&h).unwrap());
                prop_assert!(o.num_vertices() <= h.num_vertices());
            }
        }
    }

    #[test]
    fn stem_splits_off_a_conjugator(seed in any::<u64>(), g in letters(5)) {
        let (_, h) = subgroup(seed);
        let h = h.conjugate(&Word(g).reduce()).unwrap();
        let (x, core) = h.strip_stem();
        prop_assert!(core.is_trivial() || core.graph().degree(0) != 1);
        prop_assert_eq!(core.conjugate(&x.inverse()).unwrap(), h);
    }
}

#[test]
fn json_round_trip() {
    let h = sg("aab,bAb,BaB");
    assert_eq!(Subgroup::from_json(&h.to_json()).unwrap(), h);
}
