//! Word evaluation, value sets, verbal subgroups and widths.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Word;
use crate::error::{Error, Result};
use crate::group::{closure, is_normal, Group};
use crate::holt::least_cover_exponent;
use crate::set::ElementSet;

/// Evaluates `w` with `args[i]` substituted for `x_{i+1}`.
pub fn evaluate_word(g: &Group, w: &Word, args: &[u32]) -> Result<u32> {
    if args.len() != w.arity() {
        return Err(Error::Arity { expected: w.arity(), got: args.len() });
    }
    Ok(eval(g, w, args))
}

fn eval(g: &Group, w: &Word, args: &[u32]) -> u32 {
    match w {
        Word::Var(i) => args[*i as usize - 1],
        Word::Inverse(a) => g.inv(eval(g, a, args)),
        Word::Power(a, k) => g.pow(eval(g, a, args), *k),
        Word::Concat(items) => items.iter().fold(g.identity(), |acc, x| g.mul(acc, eval(g, x, args))),
        Word::Commutator(a, b) => g.commutator(eval(g, a, args), eval(g, b, args)),
    }
}

/// Union of `f(x)` over `xs`, computed in parallel chunks and merged with an
/// associative union so the result does not depend on scheduling.
fn par_union<F>(g: &Group, xs: &[u32], f: F) -> ElementSet
where
    F: Fn(u32, &mut ElementSet) + Sync,
{
    let n = g.order();
    xs.par_chunks(64)
        .map(|chunk| {
            let mut acc = ElementSet::empty(n);
            for &x in chunk {
                f(x, &mut acc);
            }
            acc
        })
        .reduce(|| ElementSet::empty(n), |a, b| a.union(&b))
}

/// `X · Y` for sets that are unions of conjugacy classes. Such a product is
/// again a union of classes, so it suffices to translate `Y` by one
/// representative per class of `X` and saturate.
pub fn normal_product_set(g: &Group, x: &ElementSet, y: &ElementSet) -> ElementSet {
    let classes = g.classes();
    let reps = classes.representatives_in(x);
    let ys = y.to_vec();
    let partial = par_union(g, &reps, |r, acc| {
        for &t in &ys {
            acc.insert(g.mul(r, t));
        }
    });
    classes.saturate(&partial)
}

/// `X · Y` by direct translation; no structural assumptions.
pub fn product_set(g: &Group, x: &ElementSet, y: &ElementSet) -> ElementSet {
    let (xs, ys) = (x.to_vec(), y.to_vec());
    par_union(g, &xs, |a, acc| {
        for &b in &ys {
            acc.insert(g.mul(a, b));
        }
    })
}

/// Splits a top-level concatenation into factors over pairwise-disjoint
/// variables; otherwise the word is its own single factor.
fn disjoint_factors(w: &Word) -> Vec<&Word> {
    if let Word::Concat(items) = w {
        let mut seen = std::collections::BTreeSet::new();
        let disjoint = items.iter().all(|it| it.variables().into_iter().all(|v| seen.insert(v)));
        if disjoint {
            return items.iter().collect();
        }
    }
    vec![w]
}

/// Values of a word with at most two distinct variables. The result is
/// closed under conjugation.
fn factor_values(g: &Group, w: &Word, arity: usize) -> Result<ElementSet> {
    let vars = w.variables();
    let classes = g.classes();
    let args = vec![g.identity(); arity];
    match vars.as_slice() {
        [] => Ok(ElementSet::singleton(g.order(), eval(g, w, &args))),
        [v] => {
            let all: Vec<u32> = (0..g.order() as u32).collect();
            let v = *v as usize - 1;
            Ok(par_union(g, &all, |x, acc| {
                let mut a = args.clone();
                a[v] = x;
                acc.insert(eval(g, w, &a));
            }))
        }
        [v1, v2] => {
            let (i, j) = (*v1 as usize - 1, *v2 as usize - 1);
            let is_plain_commutator = matches!(w, Word::Commutator(a, b)
                if **a == Word::Var(*v1) && **b == Word::Var(*v2) || **a == Word::Var(*v2) && **b == Word::Var(*v1));
            let reps: Vec<u32> = classes.representatives().collect();
            let partial = if is_plain_commutator {
                // {[x,y] : y} = x⁻¹ · Cl(x), up to conjugating x.
                par_union(g, &reps, |x, acc| {
                    let xi = g.inv(x);
                    for &c in classes.members(classes.class_of(x)) {
                        acc.insert(g.mul(xi, c));
                    }
                })
            } else {
                // Conjugating both arguments conjugates the value, so the
                // first argument may be restricted to class representatives.
                let all: Vec<u32> = (0..g.order() as u32).collect();
                par_union(g, &reps, |x, acc| {
                    let mut a = args.clone();
                    a[i] = x;
                    for &y in &all {
                        a[j] = y;
                        acc.insert(eval(g, w, &a));
                    }
                })
            };
            Ok(classes.saturate(&partial))
        }
        _ => Err(Error::Infeasible(format!(
            "factor {w} has {} distinct variables; value sets support at most 2 per disjoint factor",
            vars.len()
        ))),
    }
}

/// `G_w`: all values of `w` together with their inverses.
pub fn value_set(g: &Group, w: &Word) -> Result<ElementSet> {
    let arity = w.arity();
    let mut acc: Option<ElementSet> = None;
    for f in disjoint_factors(w) {
        let vals = factor_values(g, f, arity)?;
        acc = Some(match acc {
            None => vals,
            Some(prev) => normal_product_set(g, &prev, &vals),
        });
    }
    let vals = acc.unwrap_or_else(|| g.trivial_set());
    let mut out = vals.clone();
    for x in vals.iter() {
        out.insert(g.inv(x));
    }
    Ok(out)
}

/// `w(G)`, the subgroup generated by the values of `w`.
pub fn verbal_subgroup(g: &Group, w: &Word) -> Result<ElementSet> {
    Ok(closure(g, &value_set(g, w)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WidthReport {
    pub word: String,
    pub group: String,
    pub value_count: usize,
    pub subgroup_order: usize,
    pub width: usize,
    pub frontier_sizes: Vec<usize>,
}

/// Least `n` with `G_w^{*n} = w(G)`, by iterated product sets.
pub fn word_width(g: &Group, w: &Word) -> Result<WidthReport> {
    let values = value_set(g, w)?;
    let target = closure(g, &values);
    let mut report = WidthReport {
        word: w.to_string(),
        group: g.name().to_string(),
        value_count: values.count(),
        subgroup_order: target.count(),
        width: 0,
        frontier_sizes: vec![values.count()],
    };
    if values == g.trivial_set() {
        return Ok(report);
    }
    let mut level = values.clone();
    report.width = 1;
    while level != target {
        let next = normal_product_set(g, &level, &values);
        debug_assert!(level.is_subset(&next) && next != level);
        level = next;
        report.width += 1;
        report.frontier_sizes.push(level.count());
    }
    Ok(report)
}

/// Tuples of arguments checked before the counting bound is trusted.
pub const INVARIANCE_SAMPLES: usize = 10_000;
/// Exhaustive argument checking is used while `|G|^k` stays below this.
pub const EXHAUSTIVE_ARGUMENTS: u64 = 100_000;
/// Cap on `|N|^k`, the translations tried per argument tuple.
pub const TRANSLATION_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub exhaustive: bool,
    pub argument_tuples: u64,
    pub translations_per_tuple: u64,
    pub violations: u64,
}

fn tuple_from_index(mut idx: u64, base: &[u32], k: usize) -> Vec<u32> {
    let n = base.len() as u64;
    (0..k)
        .map(|_| {
            let d = base[(idx % n) as usize];
            idx /= n;
            d
        })
        .collect()
}

/// Checks `w(a · n) = w(a)` for every `n ∈ N^k`, over all argument tuples
/// `a` when that is cheap and over `samples` seeded random tuples otherwise.
pub fn check_translation_invariance(
    g: &Group,
    w: &Word,
    n: &ElementSet,
    samples: usize,
    seed: u64,
) -> Result<InvarianceReport> {
    let k = w.arity();
    let k32 = k as u32;
    let nvec = n.to_vec();
    let translations = (nvec.len() as u64).checked_pow(k32).filter(|&t| t <= TRANSLATION_CAP).ok_or(
        Error::CapExceeded { what: "translation tuples", cap: TRANSLATION_CAP, reached: TRANSLATION_CAP + 1 },
    )?;
    let all: Vec<u32> = (0..g.order() as u32).collect();
    let space = (g.order() as u64).checked_pow(k32).filter(|&s| s <= EXHAUSTIVE_ARGUMENTS);
    let tuples: Vec<Vec<u32>> = match space {
        Some(s) => (0..s).map(|i| tuple_from_index(i, &all, k)).collect(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| (0..k).map(|_| rng.gen_range(0..g.order() as u32)).collect()).collect()
        }
    };
    let violations: u64 = tuples
        .par_iter()
        .map(|a| {
            let base = eval(g, w, a);
            let mut shifted = a.clone();
            (0..translations)
                .filter(|&t| {
                    let ns = tuple_from_index(t, &nvec, k);
                    for ((s, &x), &y) in shifted.iter_mut().zip(a).zip(&ns) {
                        *s = g.mul(x, y);
                    }
                    eval(g, w, &shifted) != base
                })
                .count() as u64
        })
        .sum();
    Ok(InvarianceReport {
        exhaustive: space.is_some(),
        argument_tuples: tuples.len() as u64,
        translations_per_tuple: translations,
        violations,
    })
}

/// Least `f` with `(|G|/|N|)^{k f} ≥ |w(G)|`. Valid as a lower bound on the
/// width only when `w` is unchanged by `N`-translation of its arguments,
/// which is certified first.
pub fn counting_width_lower_bound(g: &Group, w: &Word, n: &ElementSet, seed: u64) -> Result<u64> {
    if !is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let report = check_translation_invariance(g, w, n, INVARIANCE_SAMPLES, seed)?;
    if report.violations > 0 {
        return Err(Error::InvarianceFailed);
    }
    let target = BigUint::from(verbal_subgroup(g, w)?.count());
    let base = BigUint::from(g.order() / n.count());
    least_cover_exponent(&base, w.arity() as u32, &target)
        .ok_or_else(|| Error::Precondition("N = G leaves no room for a counting bound".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_cycles, symmetric, alternating, derived_subgroup, GroupHandle};
    use crate::holt::{sl2_element, sl2_group};
    use crate::word::parse_word;

    fn perm(g: &GroupHandle, n: usize, c: &str) -> u32 {
        g.index_of(&parse_cycles(n, c).unwrap()).unwrap()
    }

    fn brute_values(g: &Group, w: &Word) -> ElementSet {
        let k = w.arity();
        let all: Vec<u32> = (0..g.order() as u32).collect();
        let total = (g.order() as u64).pow(k as u32);
        let mut s = g.empty_set();
        for i in 0..total {
            let v = eval(g, w, &tuple_from_index(i, &all, k));
            s.insert(v);
            s.insert(g.inv(v));
        }
        s
    }

    #[test]
    fn s3_commutator_value() {
        let s3 = symmetric(3).unwrap();
        let w = parse_word("[x1,x2]").unwrap();
        let v = evaluate_word(&s3, &w, &[perm(&s3, 3, "(1,2)"), perm(&s3, 3, "(1,3)")]).unwrap();
        assert_eq!(v, perm(&s3, 3, "(1,3,2)"));
        assert!(matches!(evaluate_word(&s3, &w, &[0]), Err(Error::Arity { expected: 2, got: 1 })));
    }

    #[test]
    fn identity_arguments_give_identity() {
        let s4 = symmetric(4).unwrap();
        for text in ["[x1,x2]x3^5", "x1^6", "(x1x2^-1)^3[x2,x1x3]"] {
            let w = parse_word(text).unwrap();
            let args = vec![s4.identity(); w.arity()];
            assert_eq!(evaluate_word(&s4, &w, &args).unwrap(), s4.identity());
        }
    }

    #[test]
    fn sl2_power_reduces_mod_order() {
        let g = sl2_group(5).unwrap();
        let x = sl2_element(&g, 5, [0, 1, -1, 0]).unwrap();
        assert_eq!(g.element_order(x), 4);
        let w = parse_word("x1^7").unwrap();
        assert_eq!(evaluate_word(&g, &w, &[x]).unwrap(), g.pow(x, 3));
    }

    #[test]
    fn s3_value_sets_and_verbal_subgroups() {
        let s3 = symmetric(3).unwrap();
        let a3 = s3.set_of([s3.identity(), perm(&s3, 3, "(1,2,3)"), perm(&s3, 3, "(1,3,2)")]);
        assert_eq!(value_set(&s3, &parse_word("[x1,x2]").unwrap()).unwrap(), a3);
        assert_eq!(value_set(&s3, &parse_word("x1^2").unwrap()).unwrap(), a3);
        assert_eq!(verbal_subgroup(&s3, &parse_word("x1^2").unwrap()).unwrap(), a3);
        assert_eq!(verbal_subgroup(&s3, &parse_word("x1^6").unwrap()).unwrap(), s3.trivial_set());
        let r = word_width(&s3, &parse_word("[x1,x2]").unwrap()).unwrap();
        assert_eq!((r.width, r.value_count, r.subgroup_order), (1, 3, 3));
    }

    #[test]
    fn trivial_group_values() {
        let one = crate::group::trivial().unwrap();
        let w = parse_word("[x1,x2]x3^5").unwrap();
        assert_eq!(value_set(&one, &w).unwrap(), one.full_set());
        let r = word_width(&one, &w).unwrap();
        assert_eq!((r.width, r.frontier_sizes.clone()), (0, vec![1]));
    }

    #[test]
    fn fast_routes_match_brute_force() {
        let groups = [symmetric(4).unwrap(), alternating(5).unwrap(), crate::group::dihedral(8).unwrap()];
        let words = ["[x1,x2]", "[x2,x1]", "x1^2", "x1^3x2^2", "[x1,x2]x3^2", "x1x2x1^-1x2", "[x1,x2^2]"];
        for g in &groups {
            for text in words {
                let w = parse_word(text).unwrap();
                if w.arity() == 3 && g.order() > 24 {
                    continue;
                }
                assert_eq!(value_set(g, &w).unwrap(), brute_values(g, &w), "{} {}", g.name(), text);
            }
        }
    }

    #[test]
    fn shared_variables_beyond_two_are_rejected() {
        let s3 = symmetric(3).unwrap();
        let w = parse_word("[x1,x2]x3x1").unwrap();
        assert!(matches!(value_set(&s3, &w), Err(Error::Infeasible(_))));
    }

    #[test]
    fn product_sets_agree() {
        let s4 = symmetric(4).unwrap();
        let x = value_set(&s4, &parse_word("x1^2").unwrap()).unwrap();
        let y = value_set(&s4, &parse_word("[x1,x2]").unwrap()).unwrap();
        assert_eq!(normal_product_set(&s4, &x, &y), product_set(&s4, &x, &y));
    }

    #[test]
    fn value_sets_are_conjugation_invariant() {
        let g = sl2_group(5).unwrap();
        let vals = value_set(&g, &parse_word("x1^3").unwrap()).unwrap();
        for h in (0..g.order() as u32).step_by(7) {
            for x in vals.iter() {
                assert!(vals.contains(g.conj(x, h)));
            }
        }
    }

    #[test]
    fn coprime_powers_are_surjective() {
        let g = sl2_group(5).unwrap();
        for m in [7, 11] {
            let r = word_width(&g, &Word::power(Word::Var(1), m)).unwrap();
            assert_eq!((r.value_count, r.width), (120, 1));
        }
    }

    #[test]
    fn sl2_power_widths_are_small() {
        for q in [5, 7, 9] {
            let g = sl2_group(q).unwrap();
            for m in [2, 3, 4, 6] {
                let r = word_width(&g, &Word::power(Word::Var(1), m)).unwrap();
                assert!(r.width >= 1 && r.width <= 4, "q={q} m={m} width={}", r.width);
                assert!(r.frontier_sizes.windows(2).all(|p| p[0] < p[1]));
            }
        }
    }

    #[test]
    fn monotone_bfs_reaches_derived_subgroup() {
        let s5 = symmetric(5).unwrap();
        let r = word_width(&s5, &parse_word("[x1,x2]").unwrap()).unwrap();
        assert_eq!(r.subgroup_order, derived_subgroup(&s5).count());
        assert_eq!(r.width, 1);
    }

    #[test]
    fn counting_bound_with_trivial_kernel() {
        let s4 = symmetric(4).unwrap();
        for text in ["[x1,x2]", "x1^2", "[x1,x2]x3^3"] {
            let w = parse_word(text).unwrap();
            let b = counting_width_lower_bound(&s4, &w, &s4.trivial_set(), 1).unwrap();
            assert_eq!(b, 1);
            assert!(b as usize <= word_width(&s4, &w).unwrap().width);
        }
    }

    #[test]
    fn counting_bound_detects_non_invariance() {
        let s4 = symmetric(4).unwrap();
        let v4 = s4.set_of(["()", "(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)"].map(|c| perm(&s4, 4, c)));
        let w = parse_word("x1^2").unwrap();
        assert!(matches!(counting_width_lower_bound(&s4, &w, &v4, 1), Err(Error::InvarianceFailed)));
        let a3 = symmetric(3).unwrap();
        let not_normal = a3.set_of([a3.identity(), perm(&a3, 3, "(1,2)")]);
        assert!(matches!(counting_width_lower_bound(&a3, &w, &not_normal, 1), Err(Error::NotNormal)));
    }
}
