//! Structure theory on expressions and elements: divisibility, torsion and
//! divisible splittings, primary decomposition, socles, classification and
//! isomorphism.
//!
//! Splittings work atom by atom. Every atom of the language is either
//! divisible or reduced, and either torsion or torsion-free (`C*` and `S^1`
//! are divided into their `Q/Z` and `Q^c` parts), so complements are always
//! visible in the syntax.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow};

use crate::arith::{ext_gcd_multi, factorize, Cardinal, Limits, OrderValue};
use crate::element::{elem_order, elem_smul, GroupElement};
use crate::error::{Error, Result};
use crate::lang::{normalize, Atom, GroupExpr, NormalForm};

/// The canonical invariants of a group expression together with the
/// properties they determine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub normal: NormalForm,
    pub is_divisible: bool,
    pub is_torsion: bool,
    pub is_torsion_free: bool,
    pub is_reduced: bool,
}

impl StructureReport {
    pub fn from_normal(normal: NormalForm) -> Self {
        let no_reduced = normal.free_rank.is_zero() && normal.elementary_divisors.is_empty();
        let no_prufer = !normal.has_prufer_part();
        StructureReport {
            is_divisible: no_reduced,
            is_torsion: normal.q_mult.is_zero() && normal.free_rank.is_zero(),
            is_torsion_free: normal.elementary_divisors.is_empty() && no_prufer,
            is_reduced: normal.q_mult.is_zero() && no_prufer,
            normal,
        }
    }
}

pub fn classify(e: &GroupExpr, limits: &Limits) -> Result<StructureReport> {
    Ok(StructureReport::from_normal(normalize(e, limits)?))
}

/// Isomorphism of expressions, decided by equality of normal forms.
pub fn is_isomorphic(a: &GroupExpr, b: &GroupExpr, limits: &Limits) -> Result<bool> {
    Ok(normalize(a, limits)? == normalize(b, limits)?)
}

/// Outcome of a divisibility test. A failing test names an atom `A` and an
/// `n` with `nA != A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisibility {
    pub divisible: bool,
    pub witness: Option<(Atom, BigUint)>,
}

pub fn is_divisible(e: &GroupExpr, limits: &Limits) -> Result<Divisibility> {
    let nf = normalize(e, limits)?;
    let witness = if !nf.free_rank.is_zero() {
        Some((Atom::Z, BigUint::from(2u32)))
    } else {
        nf.elementary_divisors
            .first()
            .map(|d| (Atom::Cyclic(d.prime_power()), BigUint::from(d.p)))
    };
    Ok(Divisibility {
        divisible: witness.is_none(),
        witness,
    })
}

fn not_divisible(d: Divisibility) -> Error {
    let (atom, n) = d.witness.expect("non-divisible groups carry a witness");
    Error::NotDivisible {
        atom: atom.to_string(),
        n: n.to_string(),
    }
}

/// Splits `e` atom by atom. An atom goes left when all of its model parts
/// satisfy `pred`, right when none do, and is divided otherwise. Exponents
/// are kept on both sides.
fn split_by(e: &GroupExpr, pred: impl Fn(&Atom) -> bool) -> (GroupExpr, GroupExpr) {
    let part = |keep: bool| {
        e.map_atoms(&mut |atom| {
            let parts = atom.model_parts();
            let hits = parts.iter().filter(|(a, _)| pred(a) == keep).count();
            if hits == parts.len() {
                atom.clone().into()
            } else {
                GroupExpr::sum(
                    parts
                        .into_iter()
                        .filter(|(a, _)| pred(a) == keep)
                        .map(|(a, m)| GroupExpr::power_or_atom(a.into(), m))
                        .collect(),
                )
            }
        })
        .simplify()
    };
    (part(true), part(false))
}

/// `(T, F)` with `T` the torsion part and `F` a torsion-free complement.
pub fn torsion_split(e: &GroupExpr) -> (GroupExpr, GroupExpr) {
    split_by(e, Atom::is_torsion)
}

/// `(D, R)` with `D` the largest divisible summand and `R` reduced.
pub fn split_divisible(e: &GroupExpr) -> (GroupExpr, GroupExpr) {
    split_by(e, Atom::is_divisible)
}

/// Primary components of a torsion expression. `every_prime` copies of
/// `Z(p^inf)` belong to each prime not listed in `components` (the
/// contribution of `Q/Z` summands).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryDecomposition {
    pub components: Vec<(u64, GroupExpr)>,
    pub every_prime: Cardinal,
}

impl PrimaryDecomposition {
    /// The `p`-component for any prime `p`.
    pub fn component(&self, p: u64) -> GroupExpr {
        self.components
            .iter()
            .find(|(q, _)| *q == p)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| {
                GroupExpr::power_or_atom(Atom::Prufer(p).into(), self.every_prime.clone())
                    .simplify()
            })
    }

    /// A single expression for the whole direct sum.
    pub fn to_expr(&self) -> GroupExpr {
        let mut terms: Vec<GroupExpr> = self
            .components
            .iter()
            .map(|(p, c)| strip_prufer(c, *p, &self.every_prime))
            .collect();
        terms.push(GroupExpr::power_or_atom(
            Atom::QmodZ.into(),
            self.every_prime.clone(),
        ));
        GroupExpr::sum(terms).simplify()
    }
}

/// Removes `k` copies of `Z(p^inf)` from a `p`-component.
fn strip_prufer(component: &GroupExpr, p: u64, k: &Cardinal) -> GroupExpr {
    let mut terms = Vec::new();
    for (atom, mult) in component.atoms() {
        let mult = if atom == Atom::Prufer(p) {
            mult.saturating_sub(k)
        } else {
            mult
        };
        if !mult.is_zero() {
            terms.push(GroupExpr::power_or_atom(atom.into(), mult));
        }
    }
    GroupExpr::sum(terms)
}

/// Splits a torsion expression into its `p`-primary components.
pub fn primary_decompose_expr(e: &GroupExpr, limits: &Limits) -> Result<PrimaryDecomposition> {
    for (atom, mult) in e.atoms() {
        if !mult.is_zero() && atom != Atom::Zero && !atom.is_torsion() {
            return Err(Error::NotTorsion {
                atom: atom.to_string(),
            });
        }
    }
    let nf = normalize(e, limits)?;
    let mut primes: Vec<u64> = nf
        .elementary_divisors
        .iter()
        .map(|d| d.p)
        .chain(nf.prufer_exceptions.iter().map(|(p, _)| *p))
        .collect();
    primes.sort_unstable();
    primes.dedup();
    let components = primes
        .into_iter()
        .map(|p| {
            let mut terms: Vec<GroupExpr> = nf
                .elementary_divisors
                .iter()
                .filter(|d| d.p == p)
                .map(|d| {
                    GroupExpr::power_or_atom(Atom::Cyclic(d.prime_power()).into(), d.mult.clone())
                })
                .collect();
            let m = nf.m_p(p);
            if !m.is_zero() {
                terms.push(GroupExpr::power_or_atom(Atom::Prufer(p).into(), m));
            }
            (p, GroupExpr::sum(terms))
        })
        .collect();
    Ok(PrimaryDecomposition {
        components,
        every_prime: nf.default_prufer,
    })
}

/// Writes a finite-order element as a sum of elements of prime-power order:
/// with `|x| = m = prod p_i^r_i` and `m_i = m / p_i^r_i`, Bezout coefficients
/// `s_i` of the `m_i` give the components `s_i * m_i * x`.
///
/// The identity has no components.
pub fn primary_decompose_element(
    x: &GroupElement,
    limits: &Limits,
) -> Result<Vec<(u64, GroupElement)>> {
    let m = match elem_order(x) {
        OrderValue::Fin(m) => m,
        OrderValue::Infinite => return Err(Error::InfiniteOrder(x.to_string())),
    };
    let f = factorize(&m, limits.factor_bound)?;
    if f.pairs().is_empty() {
        return Ok(Vec::new());
    }
    let m = BigInt::from(m);
    let cofactors: Vec<BigInt> = f
        .pairs()
        .iter()
        .map(|&(p, r)| &m / Pow::pow(BigInt::from(p), r))
        .collect();
    let (g, coeffs) = ext_gcd_multi(&cofactors);
    debug_assert!(g.is_one());
    Ok(f.primes()
        .zip(cofactors.iter().zip(&coeffs))
        .map(|(p, (mi, si))| (p, elem_smul(&(si * mi), x)))
        .collect())
}

/// The socle of a group expression: an explicit part plus `every_prime`
/// copies of `Z/p` for every prime `p` (from `Q/Z`-like summands).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Socle {
    pub explicit: GroupExpr,
    pub every_prime: Cardinal,
}

impl std::fmt::Display for Socle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.every_prime.is_zero() {
            return write!(f, "{}", self.explicit);
        }
        if self.explicit != GroupExpr::zero() {
            write!(f, "{} (+) ", self.explicit)?;
        }
        write!(f, "[Z/p for every prime p]")?;
        if self.every_prime != Cardinal::one() {
            write!(f, "^{}", self.every_prime)?;
        }
        Ok(())
    }
}

/// Elements of square-free order, atom by atom: `Z/p^r` and `Z(p^inf)` give
/// `Z/p`, `Z/m` gives `Z/p` for each prime `p | m`, torsion-free atoms give 0.
pub fn socle_expr(e: &GroupExpr, limits: &Limits) -> Result<Socle> {
    let mut every_prime = Cardinal::zero();
    let mut terms = Vec::new();
    for (atom, mult) in e.model_atoms() {
        if mult.is_zero() {
            continue;
        }
        match atom {
            Atom::Cyclic(m) => {
                for p in factorize(&m, limits.factor_bound)?.primes() {
                    terms.push(GroupExpr::power_or_atom(
                        Atom::Cyclic(p.into()).into(),
                        mult.clone(),
                    ));
                }
            }
            Atom::Prufer(p) => terms.push(GroupExpr::power_or_atom(
                Atom::Cyclic(p.into()).into(),
                mult,
            )),
            Atom::QmodZ => every_prime = every_prime.add(&mult),
            _ => {}
        }
    }
    Ok(Socle {
        explicit: GroupExpr::sum(terms),
        every_prime,
    })
}

/// The divisible hull of a finitely generated group: `Z` becomes `Q` and
/// `Z/m` becomes one `Z(p^inf)` per prime dividing `m`.
pub fn divisible_hull(e: &GroupExpr, limits: &Limits) -> Result<GroupExpr> {
    for (atom, mult) in e.atoms() {
        let fg_atom = matches!(atom, Atom::Zero | Atom::Z | Atom::Cyclic(_));
        if mult.is_zero() || atom == Atom::Zero {
            continue;
        }
        if !fg_atom || !mult.is_finite() {
            let shown = GroupExpr::power_or_atom(atom.into(), mult);
            return Err(Error::NotFinitelyGenerated {
                atom: shown.to_string(),
            });
        }
    }
    let mut failure = None;
    let hull = e.map_atoms(&mut |atom| match atom {
        Atom::Z => Atom::Q.into(),
        Atom::Cyclic(m) => match factorize(m, limits.factor_bound) {
            Ok(f) => GroupExpr::sum(f.primes().map(|p| Atom::Prufer(p).into()).collect()),
            Err(err) => {
                failure = Some(err);
                GroupExpr::zero()
            }
        },
        other => other.clone().into(),
    });
    match failure {
        Some(err) => Err(err),
        None => Ok(flatten(hull.simplify())),
    }
}

/// Splices sums nested directly inside sums into their parent.
fn flatten(e: GroupExpr) -> GroupExpr {
    match e {
        GroupExpr::Sum(terms) => GroupExpr::Sum(
            terms
                .into_iter()
                .flat_map(|t| match flatten(t) {
                    GroupExpr::Sum(inner) => inner,
                    other => vec![other],
                })
                .collect(),
        ),
        GroupExpr::Power(base, c) => GroupExpr::Power(Box::new(flatten(*base)), c),
        atom => atom,
    }
}

/// Number of solutions of `n x = y` for any attainable `y` in a divisible
/// group: the size of the `n`-torsion, `prod_{p | n} p^(v_p(n) m_p)`.
pub fn count_division_solutions(e: &GroupExpr, n: &BigUint, limits: &Limits) -> Result<Cardinal> {
    let div = is_divisible(e, limits)?;
    if !div.divisible {
        return Err(not_divisible(div));
    }
    if n == &BigUint::from(0u32) {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let nf = normalize(e, limits)?;
    let mut count = Cardinal::one();
    for &(p, v) in factorize(n, limits.factor_bound)?.pairs() {
        let kernel = Pow::pow(BigUint::from(p), v);
        count = count.mul(&nf.m_p(p).direct_sum_size(&kernel)?);
    }
    Ok(count)
}
