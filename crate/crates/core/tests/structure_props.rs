mod common;

use std::collections::HashMap;

use common::{arb_divisible_atom, arb_expr, expr_from, random_fraction};
use divgroup::arith::factorize_u64;
use divgroup::element::{elem_add, elem_order, in_socle};
use divgroup::lang::Atom;
use divgroup::structure::{
    classify, is_divisible, is_isomorphic, primary_decompose_element, split_divisible,
    torsion_split,
};
use divgroup::{GroupElement, GroupExpr, Limits, OrderValue};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lim() -> Limits {
    Limits::default()
}

fn is_prime_power_of(n: u64, p: u64) -> bool {
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Elements of Z/m whose order is a power of `p`, by scanning.
fn p_part(m: u64, p: u64) -> Vec<u64> {
    (0..m)
        .filter(|&r| is_prime_power_of(m / num_integer::gcd(r, m), p))
        .collect()
}

/// Every tuple of p-power-order elements, keyed by its sum. Panics if two
/// tuples share a sum.
fn decomposition_table(m: u64) -> (Vec<u64>, HashMap<u64, Vec<u64>>) {
    let primes: Vec<u64> = factorize_u64(m, 1 << 20).unwrap().primes().collect();
    let parts: Vec<Vec<u64>> = primes.iter().map(|&p| p_part(m, p)).collect();
    let mut table = HashMap::new();
    let mut idx = vec![0usize; parts.len()];
    loop {
        let tuple: Vec<u64> = idx.iter().zip(&parts).map(|(&i, s)| s[i]).collect();
        let sum = tuple.iter().sum::<u64>() % m;
        assert!(
            table.insert(sum, tuple).is_none(),
            "two decompositions of {sum} mod {m}"
        );
        let mut k = 0;
        loop {
            if k == idx.len() {
                return (primes, table);
            }
            idx[k] += 1;
            if idx[k] < parts[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn element_decomposition_matches_brute_force_up_to_300() {
    for m in 1..=300u64 {
        let (primes, table) = decomposition_table(m);
        assert_eq!(table.len() as u64, m);
        for g in 0..m {
            let x = GroupElement::cyclic(m, g).unwrap();
            let got = primary_decompose_element(&x, &lim()).unwrap();
            // primes not dividing the order of g contribute zero parts
            let expected: Vec<(u64, GroupElement)> = primes
                .iter()
                .zip(&table[&g])
                .filter(|(_, &r)| r != 0)
                .map(|(&p, &r)| (p, GroupElement::cyclic(m, r).unwrap()))
                .collect();
            assert_eq!(got, expected, "g = {g} in Z/{m}");
        }
    }
}

fn component_map(x: &GroupElement) -> HashMap<u64, GroupElement> {
    primary_decompose_element(x, &lim())
        .unwrap()
        .into_iter()
        .collect()
}

#[test]
fn element_decomposition_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..500 {
        let (a, b) = random_fraction(&mut rng, 120);
        let (c, d) = random_fraction(&mut rng, 120);
        let x = GroupElement::mod_one(a, b);
        let y = GroupElement::mod_one(c, d);
        let sum = component_map(&elem_add(&x, &y).unwrap());
        let (cx, cy) = (component_map(&x), component_map(&y));
        let zero = GroupElement::mod_one(0, 1);
        let mut primes: Vec<u64> = cx
            .keys()
            .chain(cy.keys())
            .chain(sum.keys())
            .copied()
            .collect();
        primes.sort_unstable();
        primes.dedup();
        for p in primes {
            let lhs = sum.get(&p).unwrap_or(&zero);
            let rhs = elem_add(cx.get(&p).unwrap_or(&zero), cy.get(&p).unwrap_or(&zero)).unwrap();
            assert_eq!(lhs, &rhs, "{x} + {y} at p = {p}");
        }
    }
}

#[test]
fn socle_meets_every_nontrivial_subgroup() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let mut q = p;
        while q <= 256 {
            // every subgroup of a cyclic group is generated by one element
            let mut subgroups: Vec<Vec<u64>> = (0..q)
                .map(|g| {
                    let mut s: Vec<u64> = (0..q).map(|k| k * g % q).collect();
                    s.sort_unstable();
                    s.dedup();
                    s
                })
                .collect();
            subgroups.sort();
            subgroups.dedup();
            for h in subgroups.iter().filter(|h| h.len() > 1) {
                let meets = h.iter().any(|&r| {
                    let x = GroupElement::cyclic(q, r).unwrap();
                    !x.is_identity() && in_socle(&x, &lim()).unwrap()
                });
                assert!(
                    meets,
                    "subgroup of Z/{q} of size {} misses the socle",
                    h.len()
                );
            }
            q *= p;
        }
    }
}

fn has_divisible_atom(e: &GroupExpr) -> bool {
    e.atoms().iter().any(|(a, m)| {
        !m.is_zero()
            && matches!(
                a,
                Atom::Q
                    | Atom::Prufer(_)
                    | Atom::QmodZ
                    | Atom::R
                    | Atom::RPow(_)
                    | Atom::CStar
                    | Atom::Circle
            )
    })
}

/// Twenty fixed expressions with deliberate isomorphic pairs.
const CORPUS: [&str; 20] = [
    "C*",
    "S^1",
    "R",
    "R^3",
    "Q^c",
    "Q/Z",
    "Z(2^inf)",
    "Z(3^inf)",
    "Z/6",
    "Z/2 (+) Z/3",
    "Z/4",
    "Z/2^2",
    "Z",
    "Q",
    "0",
    "Z/1",
    "(Q/Z)^aleph0 (+) Z(2^inf)",
    "(Q/Z)^aleph0",
    "Q/Z (+) Z(2^inf)",
    "Z(2^inf)^2 (+) Q/Z",
];

#[test]
fn isomorphism_is_an_equivalence() {
    let exprs: Vec<GroupExpr> = CORPUS.iter().map(|t| divgroup::parse(t).unwrap()).collect();
    let n = exprs.len();
    let iso: Vec<Vec<bool>> = exprs
        .iter()
        .map(|a| {
            exprs
                .iter()
                .map(|b| is_isomorphic(a, b, &lim()).unwrap())
                .collect()
        })
        .collect();
    for i in 0..n {
        assert!(iso[i][i]);
        for j in 0..n {
            assert_eq!(iso[i][j], iso[j][i], "{} / {}", CORPUS[i], CORPUS[j]);
            for k in 0..n {
                if iso[i][j] && iso[j][k] {
                    assert!(iso[i][k], "{} ~ {} ~ {}", CORPUS[i], CORPUS[j], CORPUS[k]);
                }
            }
        }
    }
    // the corpus is not trivially all-distinct
    let classes = (0..n).filter(|&i| (0..i).all(|j| !iso[i][j])).count();
    assert!(classes < n && classes > 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn torsion_split_reassembles(e in arb_expr()) {
        let (t, f) = torsion_split(&e);
        let whole = GroupExpr::Sum(vec![t.clone(), f.clone()]);
        prop_assert_eq!(classify(&whole, &lim()).unwrap(), classify(&e, &lim()).unwrap());
        prop_assert!(classify(&t, &lim()).unwrap().is_torsion);
        prop_assert!(classify(&f, &lim()).unwrap().is_torsion_free);
    }

    #[test]
    fn torsion_part_of_divisible_is_divisible(e in expr_from(arb_divisible_atom())) {
        prop_assert!(is_divisible(&e, &lim()).unwrap().divisible);
        let (t, _) = torsion_split(&e);
        prop_assert!(is_divisible(&t, &lim()).unwrap().divisible);
    }

    #[test]
    fn divisible_split_reassembles(e in arb_expr()) {
        let (d, r) = split_divisible(&e);
        prop_assert!(is_divisible(&d, &lim()).unwrap().divisible);
        prop_assert!(!has_divisible_atom(&r), "{}", r);
        let whole = GroupExpr::Sum(vec![d, r]);
        prop_assert!(is_isomorphic(&whole, &e, &lim()).unwrap());
    }

    #[test]
    fn element_components_have_prime_power_order(a in 0u64..1000, b in 1u64..1000) {
        let x = GroupElement::mod_one(a, b);
        let parts = primary_decompose_element(&x, &lim()).unwrap();
        let mut total = GroupElement::mod_one(0, 1);
        for (p, c) in &parts {
            let OrderValue::Fin(k) = elem_order(c) else { panic!() };
            let k: u64 = (&k).try_into().unwrap();
            prop_assert!(k > 1 && is_prime_power_of(k, *p));
            total = elem_add(&total, c).unwrap();
        }
        prop_assert_eq!(total, x);
    }
}
