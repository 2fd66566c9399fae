use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Pow;

use crate::arith::{factorize, Cardinal, Limits};
use crate::error::Result;

use super::{Atom, GroupExpr};

/// `mult` copies of `Z/p^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryDivisor {
    pub p: u64,
    pub r: u32,
    pub mult: Cardinal,
}

impl ElementaryDivisor {
    pub fn prime_power(&self) -> BigUint {
        Pow::pow(BigUint::from(self.p), self.r)
    }
}

/// Canonical invariants of an expression:
/// `Z^free_rank (+) [Z/p^r]^mult ... (+) [Z(p^inf)]^m_p ... (+) Q^q_mult`.
///
/// `m_p` is `default_prufer` for every prime not listed in
/// `prufer_exceptions`. The default is what `Q/Z` summands contribute to
/// every prime at once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub free_rank: Cardinal,
    /// Sorted by `(p, r)`; multiplicities are nonzero.
    pub elementary_divisors: Vec<ElementaryDivisor>,
    /// Sorted by `p`; every entry differs from `default_prufer`.
    pub prufer_exceptions: Vec<(u64, Cardinal)>,
    pub default_prufer: Cardinal,
    pub q_mult: Cardinal,
}

impl NormalForm {
    pub fn trivial() -> Self {
        NormalForm {
            free_rank: Cardinal::zero(),
            elementary_divisors: Vec::new(),
            prufer_exceptions: Vec::new(),
            default_prufer: Cardinal::zero(),
            q_mult: Cardinal::zero(),
        }
    }

    /// Multiplicity of `Z(p^inf)`.
    pub fn m_p(&self, p: u64) -> Cardinal {
        self.prufer_exceptions
            .iter()
            .find(|(q, _)| *q == p)
            .map_or_else(|| self.default_prufer.clone(), |(_, c)| c.clone())
    }

    pub fn has_prufer_part(&self) -> bool {
        !self.default_prufer.is_zero() || !self.prufer_exceptions.is_empty()
    }

    /// A canonical expression with this normal form.
    pub fn to_expr(&self) -> GroupExpr {
        let mut terms = Vec::new();
        let mut push = |atom: Atom, mult: &Cardinal| {
            if !mult.is_zero() {
                terms.push(GroupExpr::power_or_atom(atom.into(), mult.clone()));
            }
        };
        push(Atom::Z, &self.free_rank);
        for d in &self.elementary_divisors {
            push(Atom::Cyclic(d.prime_power()), &d.mult);
        }
        push(Atom::QmodZ, &self.default_prufer);
        for (p, m) in &self.prufer_exceptions {
            // exceptions only ever exceed the default
            push(Atom::Prufer(*p), &m.saturating_sub(&self.default_prufer));
        }
        push(Atom::Q, &self.q_mult);
        GroupExpr::sum(terms)
    }
}

#[derive(Default)]
struct Accumulator {
    free_rank: Option<Cardinal>,
    divisors: BTreeMap<(u64, u32), Cardinal>,
    prufer_extra: BTreeMap<u64, Cardinal>,
    default_prufer: Option<Cardinal>,
    q_mult: Option<Cardinal>,
}

fn bump(slot: &mut Option<Cardinal>, by: &Cardinal) {
    let cur = slot.take().unwrap_or_else(Cardinal::zero);
    *slot = Some(cur.add(by));
}

fn bump_map<K: Ord>(map: &mut BTreeMap<K, Cardinal>, key: K, by: &Cardinal) {
    let entry = map.entry(key).or_insert_with(Cardinal::zero);
    *entry = entry.add(by);
}

impl Accumulator {
    fn add_atom(&mut self, atom: &Atom, mult: &Cardinal, limits: &Limits) -> Result<()> {
        if mult.is_zero() {
            return Ok(());
        }
        match atom {
            Atom::Zero => {}
            Atom::Z => bump(&mut self.free_rank, mult),
            Atom::Q => bump(&mut self.q_mult, mult),
            Atom::Cyclic(m) => {
                for &(p, r) in factorize(m, limits.factor_bound)?.pairs() {
                    bump_map(&mut self.divisors, (p, r), mult);
                }
            }
            Atom::Prufer(p) => bump_map(&mut self.prufer_extra, *p, mult),
            Atom::QmodZ => bump(&mut self.default_prufer, mult),
            alias => {
                for (part, m) in alias.model_parts() {
                    self.add_atom(&part, &m.mul(mult), limits)?;
                }
            }
        }
        Ok(())
    }

    fn finish(self) -> NormalForm {
        let default_prufer = self.default_prufer.unwrap_or_else(Cardinal::zero);
        let prufer_exceptions = self
            .prufer_extra
            .into_iter()
            .map(|(p, extra)| (p, default_prufer.add(&extra)))
            .filter(|(_, m)| *m != default_prufer)
            .collect();
        NormalForm {
            free_rank: self.free_rank.unwrap_or_else(Cardinal::zero),
            elementary_divisors: self
                .divisors
                .into_iter()
                .map(|((p, r), mult)| ElementaryDivisor { p, r, mult })
                .collect(),
            prufer_exceptions,
            default_prufer,
            q_mult: self.q_mult.unwrap_or_else(Cardinal::zero),
        }
    }
}

/// Computes the canonical invariants of `e`: aliases are expanded, cyclic
/// moduli are split into prime powers, and multiplicities are merged.
pub fn normalize(e: &GroupExpr, limits: &Limits) -> Result<NormalForm> {
    let mut acc = Accumulator::default();
    for (atom, mult) in e.atoms() {
        acc.add_atom(&atom, &mult, limits)?;
    }
    Ok(acc.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse;

    fn nf(text: &str) -> NormalForm {
        normalize(&parse(text).unwrap(), &Limits::default()).unwrap()
    }

    #[test]
    fn c_star() {
        let n = nf("C*");
        assert_eq!(n.default_prufer, Cardinal::one());
        assert_eq!(n.q_mult, Cardinal::Continuum);
        assert_eq!(n.free_rank, Cardinal::zero());
        assert!(n.elementary_divisors.is_empty());
        assert!(n.prufer_exceptions.is_empty());
    }

    #[test]
    fn cyclic_twelve() {
        let n = nf("Z/12");
        assert_eq!(
            n.elementary_divisors,
            vec![
                ElementaryDivisor {
                    p: 2,
                    r: 2,
                    mult: Cardinal::one()
                },
                ElementaryDivisor {
                    p: 3,
                    r: 1,
                    mult: Cardinal::one()
                },
            ]
        );
        assert_eq!(n.free_rank, Cardinal::zero());
        assert_eq!(n.q_mult, Cardinal::zero());
        assert!(!n.has_prufer_part());
    }

    #[test]
    fn cardinal_absorption() {
        assert_eq!(nf("Q (+) Q^aleph0").q_mult, Cardinal::Aleph0);
    }

    #[test]
    fn zero_and_trivial_cyclic_vanish() {
        assert_eq!(nf("0 (+) Z/1^c (+) Q^0"), NormalForm::trivial());
    }

    #[test]
    fn prufer_exceptions_over_default() {
        let n = nf("Q/Z (+) Z(2^inf)^2 (+) Z(3^inf)^aleph0");
        assert_eq!(n.default_prufer, Cardinal::one());
        assert_eq!(
            n.prufer_exceptions,
            vec![(2, Cardinal::from(3)), (3, Cardinal::Aleph0)]
        );
        assert_eq!(n.m_p(5), Cardinal::one());
        assert_eq!(n.m_p(2), Cardinal::from(3));
        // absorbed into an infinite default
        let n = nf("(Q/Z)^c (+) Z(2^inf)^5");
        assert!(n.prufer_exceptions.is_empty());
        assert_eq!(n.m_p(2), Cardinal::Continuum);
    }

    #[test]
    fn to_expr_round_trips() {
        for text in [
            "0",
            "Z^3 (+) Z/12 (+) Q/Z (+) Z(2^inf)^2 (+) Q^aleph0",
            "C* (+) Z(7^inf)^c",
            "R^3 (+) Z/8^aleph0",
        ] {
            let n = nf(text);
            assert_eq!(
                normalize(&n.to_expr(), &Limits::default()).unwrap(),
                n,
                "{text}"
            );
        }
    }
}
