mod common;

use nilclose::automata::{self, Relation, WordAutomaton};
use nilclose::closures::{dense_primes, Closures};
use nilclose::stallings::Subgroup;
use nilclose::{Limits, ReducedWord};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn subgroup(seed: u64) -> Subgroup {
    random_subgroup(&mut ChaCha8Rng::seed_from_u64(seed), &ab(), 2, 4).1
}

fn subset(a: &WordAutomaton, b: &WordAutomaton) -> bool {
    automata::is_subset(a, b, &Limits::default()).unwrap()
}

fn coords(l: &Subgroup, ws: &[ReducedWord]) -> Vec<Vec<i64>> {
    ws.iter().map(|w| l.coordinates(w).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dense_primes_agree_with_ranks_mod_p(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let h = subgroup(seed);
        let e = Closures::default();
        let info = e.lattice(&h).unwrap();
        let l = &info.nodes[pick.index(info.nodes.len())];
        let dense = dense_primes(&h, l).unwrap();
        let rows = coords(l, &h.basis());
        for p in PRIMES {
            let full = l.rank() == 0 || rank_mod_p(&rows, l.rank(), p as i64) == l.rank();
            prop_assert_eq!(dense.contains(p), full, "p = {}", p);
        }
    }

    #[test]
    fn p_closures_are_closed_dense_overgroups(seed in any::<u64>()) {
        let h = subgroup(seed);
        let e = Closures::default();
        for p in [2, 3, 5] {
            let c = e.p_closure(&h, p).unwrap();
            prop_assert!(c.contains(&h).unwrap());
            prop_assert!(dense_primes(&h, &c).unwrap().contains(p));
            prop_assert!(e.primes_closed(&c).unwrap().contains(p));
            prop_assert_eq!(e.p_closure(&c, p).unwrap(), c);
        }
    }

    #[test]
    fn nil_closure_sits_below_p_closures(seed in any::<u64>()) {
        let h = subgroup(seed);
        let e = Closures::default();
        let n = e.nil_closure_subgroup(&h).unwrap();
        prop_assert!(n.contains(&h).unwrap());
        for p in PRIMES {
            prop_assert!(e.p_closure(&h, p).unwrap().contains(&n).unwrap());
        }
        prop_assert_eq!(e.nil_closure_subgroup(&n).unwrap(), n);
    }

    #[test]
    fn product_closure_bounds(s1 in any::<u64>(), s2 in any::<u64>()) {
        let hs = [subgroup(s1), subgroup(s2)];
        let e = Closures::default();
        let c = e.nil_closure_product(&hs).unwrap();
        prop_assert!(subset(&e.product(&hs).unwrap(), &c));
        for p in [2, 3, 5] {
            prop_assert!(subset(&c, &e.p_closure_product(&hs, p).unwrap()));
        }
        let full = e.nil_closure_product_full(&hs).unwrap();
        prop_assert_eq!(automata::compare(&c, &full, &Limits::default()).unwrap(), Relation::Equal);
    }

    #[test]
    fn automaton_and_expression_routes_agree(seed in any::<u64>()) {
        let a = ab();
        let expr = random_expression(&mut ChaCha8Rng::seed_from_u64(seed), &a, 3);
        let e = Closures::default();
        let via_expr = e.nil_closure_rational(&expr, &a).unwrap();
        let via_auto = e.nil_closure_automaton(&automata::compile_expression(&expr, &a).unwrap()).unwrap();
        prop_assert_eq!(automata::compare(&via_expr, &via_auto, &Limits::default()).unwrap(), Relation::Equal);
    }
}

#[test]
fn finite_index_subgroups_of_prime_power_index_are_p_closed() {
    let e = Closures::default();
    // <a², b, aba⁻¹> has index 2 and <a³, b, aba⁻¹, a²ba⁻²> index 3.
    let two = sg("aa,b,abA");
    let three = sg("aaa,b,abA,aabAA");
    assert!(e.primes_closed(&two).unwrap().contains(2));
    assert!(e.primes_closed(&three).unwrap().contains(3));
    assert!(!e.primes_closed(&three).unwrap().contains(2));
    assert_eq!(e.nil_closure_subgroup(&three).unwrap(), three);
}

#[test]
fn conjugation_commutes_with_closures() {
    let e = Closures::default();
    let h = sg("aaaaaa,bab");
    let g = word("bbA");
    let c = h.conjugate(&g).unwrap();
    for p in [2, 3] {
        assert_eq!(e.p_closure(&c, p).unwrap(), e.p_closure(&h, p).unwrap().conjugate(&g).unwrap());
    }
    assert_eq!(e.primes_closed(&c).unwrap(), e.primes_closed(&h).unwrap());
    assert_eq!(e.nil_closure_subgroup(&c).unwrap(), e.nil_closure_subgroup(&h).unwrap().conjugate(&g).unwrap());
}
