//! Cross-module properties over a small corpus of groups.

use num_bigint::BigUint;
use proptest::prelude::*;

use verba::bounds::{delta, nu_recursive, BoundFunction, EmpiricalBeta};
use verba::census::all_subgroups;
use verba::experiments::corpus;
use verba::group::{exponent, is_nilpotent, is_semisimple, normal_subgroups, quotient};
use verba::height::{height, verify_height_chain};
use verba::simple_table::SimpleExponentTable;
use verba::word::{counting_width_lower_bound, parse_word, word_width};

#[test]
fn nu_bound_dominates_corpus_orders() {
    // With f = s_n(G) and q = height(G), the recursive bound must reach |G|.
    let groups = corpus().unwrap();
    let beta = EmpiricalBeta::from_groups(&groups).unwrap();
    let table = SimpleExponentTable::standard();
    for g in &groups {
        let lattice = all_subgroups(g).unwrap();
        let f = BoundFunction::table((1..=g.order() as u64).map(|n| lattice.s_n(n)).collect()).unwrap();
        let q = height(g).unwrap().height.max(1) as u32;
        let m = exponent(g);
        let nu = nu_recursive(m, q, &f, &beta, &table).unwrap().result;
        assert!(nu >= BigUint::from(g.order()), "{}: nu = {nu} < {}", g.name(), g.order());
    }
}

#[test]
fn height_chains_verify_across_corpus() {
    for g in corpus().unwrap() {
        let cert = height(&g).unwrap();
        assert!(verify_height_chain(&g, &cert).unwrap(), "{}", g.name());
        let orders = cert.chain_orders();
        assert_eq!(orders.first(), Some(&1));
        assert_eq!(orders.last(), Some(&g.order()));
        assert_eq!(cert.height == 1, is_nilpotent(&g) || is_semisimple(&g), "{}", g.name());
    }
}

#[test]
fn counting_bound_never_exceeds_width() {
    let w = parse_word("[x1,x2]").unwrap();
    for g in corpus().unwrap() {
        let width = word_width(&g, &w).unwrap().width;
        // Keep the translation sweep small: |N|^2 pairs per sampled tuple.
        for n in normal_subgroups(&g).into_iter().filter(|n| n.count() <= 12) {
            match counting_width_lower_bound(&g, &w, &n, 0) {
                Ok(b) => assert!(b as usize <= width, "{}: bound {b} > width {width}", g.name()),
                Err(_) => continue,
            }
        }
    }
}

#[test]
fn nilpotent_and_semisimple_only_when_trivial() {
    for g in corpus().unwrap() {
        for n in normal_subgroups(&g) {
            let q = quotient(&g, &n).unwrap().group;
            if is_nilpotent(&q) && is_semisimple(&q) {
                assert_eq!(q.order(), 1, "{} / N of order {}", g.name(), n.count());
            }
        }
    }
}

proptest! {
    #[test]
    fn delta_is_least_exponent(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), coef in 1u64..500, exp in 0u32..4) {
        let f = BoundFunction::power(coef, exp);
        let d = delta(p, &f).unwrap();
        let target = f.eval_u64(p).unwrap();
        prop_assert!(d >= 1);
        prop_assert!(BigUint::from(p).pow(d as u32 - 1) >= target);
        if d > 1 {
            prop_assert!(BigUint::from(p).pow(d as u32 - 2) < target);
        }
    }

    #[test]
    fn rescaling_composes(coef in 1u64..100, exp in 0u32..3, a in 1u64..50, b in 1u64..50, n in 1u64..1000) {
        let f = BoundFunction::power(coef, exp);
        let twice = f.rescaled(&BigUint::from(a)).rescaled(&BigUint::from(b));
        prop_assert_eq!(twice.eval_u64(n).unwrap(), f.eval_u64(a * b * n).unwrap());
    }

    #[test]
    fn table_functions_are_nondecreasing(mut v in prop::collection::vec(1u64..1000, 1..20), n in 1u64..40) {
        v.sort_unstable();
        let f = BoundFunction::table(v).unwrap();
        prop_assert!(f.eval_u64(n).unwrap() <= f.eval_u64(n + 1).unwrap());
    }
}
