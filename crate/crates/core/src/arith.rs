//! Exact integer helpers, trial-division factorization and the small slice of
//! cardinal arithmetic the structure theory needs.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest integer `factorize` will accept unless configured otherwise.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000_000_000;
/// Largest number of coefficient tuples a brute-force search may visit.
pub const DEFAULT_ENUM_BOUND: u64 = 1_000_000;

/// Desk-scale limits shared by every bounded computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub factor_bound: u64,
    pub enum_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            factor_bound: DEFAULT_FACTOR_BOUND,
            enum_bound: DEFAULT_ENUM_BOUND,
        }
    }
}

/// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `a*x + b*y = g`.
///
/// `gcd(0, 0)` is 0 with coefficients `(0, 0)`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else if old_r.is_zero() {
        (BigInt::zero(), BigInt::zero(), BigInt::zero())
    } else {
        (old_r, old_s, old_t)
    }
}

/// Folds `ext_gcd` over a list: returns the gcd of all values together with
/// coefficients whose weighted sum equals it.
///
/// # Panics
/// If `values` is empty.
pub fn ext_gcd_multi(values: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    assert!(!values.is_empty(), "ext_gcd_multi needs at least one value");
    let first = &values[0];
    let (mut g, mut coeffs) = if first.is_negative() {
        (-first, vec![-BigInt::one()])
    } else {
        (first.clone(), vec![BigInt::one()])
    };
    if g.is_zero() {
        coeffs[0] = BigInt::zero();
    }
    for v in &values[1..] {
        let (next, x, y) = ext_gcd(&g, v);
        for c in coeffs.iter_mut() {
            *c *= &x;
        }
        coeffs.push(y);
        g = next;
    }
    (g, coeffs)
}

/// Prime factorization as strictly increasing `(prime, exponent)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    /// Multiplies the factors back together.
    pub fn product(&self) -> BigUint {
        self.pairs
            .iter()
            .map(|&(p, r)| BigUint::from(p).pow(r))
            .product()
    }

    /// The product of the distinct primes.
    pub fn radical(&self) -> BigUint {
        self.pairs.iter().map(|&(p, _)| BigUint::from(p)).product()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, r)| r)
    }
}

fn bounded_u64(n: &BigUint, bound: u64) -> Result<u64> {
    match n.to_u64() {
        Some(v) if v <= bound => Ok(v),
        _ => Err(Error::BoundExceeded {
            value: n.to_string(),
            bound,
        }),
    }
}

/// Factors `n >= 1` by trial division, refusing inputs above `bound`.
pub fn factorize(n: &BigUint, bound: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factorize 0".into()));
    }
    let mut n = bounded_u64(n, bound)?;
    let mut pairs = Vec::new();
    let mut push = |n: &mut u64, d: u64| {
        let mut r = 0;
        while (*n).is_multiple_of(d) {
            *n /= d;
            r += 1;
        }
        if r > 0 {
            pairs.push((d, r));
        }
    };
    push(&mut n, 2);
    push(&mut n, 3);
    // 6k ± 1 wheel
    let mut d: u64 = 5;
    while d.saturating_mul(d) <= n {
        push(&mut n, d);
        push(&mut n, d + 2);
        d += 6;
    }
    if n > 1 {
        pairs.push((n, 1));
    }
    Ok(Factorization { pairs })
}

/// Convenience wrapper for machine-sized inputs.
pub fn factorize_u64(n: u64, bound: u64) -> Result<Factorization> {
    factorize(&BigUint::from(n), bound)
}

pub fn is_squarefree(n: &BigUint, bound: u64) -> Result<bool> {
    Ok(factorize(n, bound)?.pairs.iter().all(|&(_, r)| r == 1))
}

/// Trial-division primality check, bounded like `factorize`.
pub fn is_prime(n: u64, bound: u64) -> Result<bool> {
    if n < 2 {
        return Ok(false);
    }
    let f = factorize_u64(n, bound)?;
    Ok(f.pairs == [(n, 1)])
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigUint, p: u64) -> u32 {
    debug_assert!(p >= 2);
    if n.is_zero() {
        return 0;
    }
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Modular inverse of `a` modulo `m > 1`, when it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, x, _) = ext_gcd(&a.mod_floor(m), m);
    g.is_one().then(|| x.mod_floor(m))
}

/// Sizes of direct-sum multiplicities: a finite count, countably many, or
/// continuum many.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinal {
    Finite(BigUint),
    Aleph0,
    Continuum,
}

impl Cardinal {
    pub fn zero() -> Self {
        Cardinal::Finite(BigUint::zero())
    }

    pub fn one() -> Self {
        Cardinal::Finite(BigUint::one())
    }

    pub fn finite(n: impl Into<BigUint>) -> Self {
        Cardinal::Finite(n.into())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Cardinal::Finite(n) if n.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            Cardinal::Finite(n) => Some(n),
            _ => None,
        }
    }

    /// `a + b`; any infinite summand absorbs the other.
    pub fn add(&self, other: &Cardinal) -> Cardinal {
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a + b),
            _ => self.clone().max(other.clone()),
        }
    }

    /// `a * b`; zero annihilates, otherwise infinite factors absorb.
    pub fn mul(&self, other: &Cardinal) -> Cardinal {
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a * b),
            _ if self.is_zero() || other.is_zero() => Cardinal::zero(),
            _ => self.clone().max(other.clone()),
        }
    }

    /// `self - other` for `other <= self` when both are finite; an infinite
    /// minuend is returned unchanged.
    pub(crate) fn saturating_sub(&self, other: &Cardinal) -> Cardinal {
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) if a >= b => Cardinal::Finite(a - b),
            (Cardinal::Finite(_), _) => Cardinal::zero(),
            _ => self.clone(),
        }
    }

    /// Size of the direct sum of `self` copies of a finite group with `order`
    /// elements.
    pub fn direct_sum_size(&self, order: &BigUint) -> Result<Cardinal> {
        if order.is_one() || self.is_zero() {
            return Ok(Cardinal::one());
        }
        match self {
            Cardinal::Finite(k) => {
                let k = k.to_u32().ok_or_else(|| Error::BoundExceeded {
                    value: k.to_string(),
                    bound: u32::MAX as u64,
                })?;
                Ok(Cardinal::Finite(Pow::pow(order, k)))
            }
            infinite => Ok(infinite.clone()),
        }
    }
}

impl From<u64> for Cardinal {
    fn from(n: u64) -> Self {
        Cardinal::Finite(BigUint::from(n))
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Aleph0 => f.write_str("aleph0"),
            Cardinal::Continuum => f.write_str("c"),
        }
    }
}

pub fn card_add(a: &Cardinal, b: &Cardinal) -> Cardinal {
    a.add(b)
}

pub fn card_mul(a: &Cardinal, b: &Cardinal) -> Cardinal {
    a.mul(b)
}

/// Order of a group element: a positive integer or infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderValue {
    Fin(BigUint),
    Infinite,
}

impl OrderValue {
    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            OrderValue::Fin(n) => Some(n),
            OrderValue::Infinite => None,
        }
    }
}

impl fmt::Display for OrderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderValue::Fin(n) => write!(f, "{n}"),
            OrderValue::Infinite => f.write_str("infinite"),
        }
    }
}

pub(crate) fn to_biguint(n: &BigInt) -> BigUint {
    debug_assert!(n.sign() != Sign::Minus);
    n.magnitude().clone()
}
