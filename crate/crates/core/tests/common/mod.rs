//! Shared generators for the integration suites.
#![allow(dead_code)]

use divgroup::lang::Atom;
use divgroup::{Cardinal, GroupExpr};
use proptest::prelude::*;
use rand::Rng;

const PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

pub fn arb_cardinal() -> impl Strategy<Value = Cardinal> {
    prop_oneof![
        6 => (0u64..5).prop_map(Cardinal::from),
        1 => Just(Cardinal::Aleph0),
        1 => Just(Cardinal::Continuum),
    ]
}

pub fn arb_atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        Just(Atom::Zero),
        Just(Atom::Z),
        Just(Atom::Q),
        (1u64..=60).prop_map(|m| Atom::Cyclic(m.into())),
        prop::sample::select(&PRIMES[..]).prop_map(Atom::Prufer),
        Just(Atom::QmodZ),
        Just(Atom::R),
        (1u64..4).prop_map(|n| Atom::RPow(n.into())),
        Just(Atom::CStar),
        Just(Atom::Circle),
    ]
}

/// Atoms of torsion groups only.
pub fn arb_torsion_atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        (1u64..=60).prop_map(|m| Atom::Cyclic(m.into())),
        prop::sample::select(&PRIMES[..]).prop_map(Atom::Prufer),
        Just(Atom::QmodZ),
    ]
}

/// Atoms of divisible groups only.
pub fn arb_divisible_atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        Just(Atom::Zero),
        Just(Atom::Q),
        prop::sample::select(&PRIMES[..]).prop_map(Atom::Prufer),
        Just(Atom::QmodZ),
        Just(Atom::R),
        (1u64..4).prop_map(|n| Atom::RPow(n.into())),
        Just(Atom::CStar),
        Just(Atom::Circle),
    ]
}

pub fn expr_from(atom: impl Strategy<Value = Atom> + 'static) -> impl Strategy<Value = GroupExpr> {
    atom.prop_map(GroupExpr::Atom)
        .prop_recursive(3, 16, 4, |inner| {
            prop_oneof![
                (inner.clone(), arb_cardinal()).prop_map(|(b, c)| GroupExpr::power(b, c)),
                prop::collection::vec(inner, 2..=4).prop_map(GroupExpr::Sum),
            ]
        })
}

pub fn arb_expr() -> impl Strategy<Value = GroupExpr> {
    expr_from(arb_atom())
}

/// A random reduced fraction `a/b` with `0 <= a < b <= max_den`.
pub fn random_fraction(rng: &mut impl Rng, max_den: u64) -> (u64, u64) {
    let b = rng.random_range(1..=max_den);
    let a = rng.random_range(0..b);
    let g = num_integer::gcd(a, b);
    (a / g, b / g)
}
