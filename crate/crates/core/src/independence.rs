//! Linear independence of finite systems.
//!
//! A system `{x_i}` is independent when `sum c_i x_i = 0` forces every
//! `c_i x_i = 0`. Torsion systems are checked by enumerating all coefficient
//! tuples; torsion-free systems reduce to rank over `Q`. Only finite systems
//! can be checked.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{Limits, OrderValue};
use crate::element::{elem_add, elem_order, GroupElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceVerdict {
    pub independent: bool,
    /// For a dependent system, coefficients of a relation `sum c_i x_i = 0`.
    pub certificate: Option<Vec<BigInt>>,
}

impl IndependenceVerdict {
    fn independent() -> Self {
        IndependenceVerdict {
            independent: true,
            certificate: None,
        }
    }

    fn dependent(certificate: Vec<BigInt>) -> Self {
        IndependenceVerdict {
            independent: false,
            certificate: Some(certificate),
        }
    }
}

fn common_parent(xs: &[GroupElement]) -> Result<()> {
    if let Some(first) = xs.first() {
        let parent = first.parent();
        for x in &xs[1..] {
            let other = x.parent();
            if other != parent {
                return Err(Error::ParentMismatch {
                    left: parent.to_string(),
                    right: other.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Brute force over every tuple `0 <= c_i < |x_i|`. The first relation in
/// lexicographic order is returned as the certificate.
pub fn is_independent_torsion(xs: &[GroupElement], limits: &Limits) -> Result<IndependenceVerdict> {
    common_parent(xs)?;
    let mut orders = Vec::with_capacity(xs.len());
    let mut total = BigInt::one();
    for x in xs {
        match elem_order(x) {
            OrderValue::Fin(m) => {
                total *= BigInt::from(m.clone());
                orders.push(m.to_u64().unwrap_or(u64::MAX));
            }
            OrderValue::Infinite => return Err(Error::InfiniteOrder(x.to_string())),
        }
    }
    if total > BigInt::from(limits.enum_bound) {
        return Err(Error::BoundExceeded {
            value: total.to_string(),
            bound: limits.enum_bound,
        });
    }
    let Some(first) = xs.first() else {
        return Ok(IndependenceVerdict::independent());
    };

    // Odometer with the last coefficient fastest. Stepping c_i, including the
    // wrap from |x_i| - 1 back to 0, always adds x_i to the running sum.
    let mut coeffs = vec![0u64; xs.len()];
    let mut sum = first.identity_like();
    loop {
        let mut i = xs.len();
        loop {
            if i == 0 {
                return Ok(IndependenceVerdict::independent());
            }
            i -= 1;
            sum = elem_add(&sum, &xs[i])?;
            coeffs[i] += 1;
            if coeffs[i] < orders[i] {
                break;
            }
            coeffs[i] = 0;
        }
        if sum.is_identity() {
            return Ok(IndependenceVerdict::dependent(
                coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            ));
        }
    }
}

/// Row-echelon basis that remembers how each row was built from the inputs.
struct Echelon {
    dim: usize,
    count: usize,
    rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)>,
}

impl Echelon {
    fn new(dim: usize) -> Self {
        Echelon {
            dim,
            count: 0,
            rows: Vec::new(),
        }
    }

    /// Inserts the next input vector. Returns the relation it completes, if
    /// any, as coefficients over all inputs seen so far.
    fn push(&mut self, v: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let index = self.count;
        self.count += 1;
        let mut v = v.to_vec();
        let mut comb = vec![BigRational::zero(); self.count];
        comb[index] = BigRational::one();
        for (pivot, row, row_comb) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = &v[*pivot] / &row[*pivot];
            for (a, b) in v.iter_mut().zip(row) {
                *a -= &f * b;
            }
            for (a, b) in comb.iter_mut().zip(row_comb) {
                *a -= &f * b;
            }
        }
        match v.iter().position(|a| !a.is_zero()) {
            Some(pivot) => {
                self.rows.push((pivot, v, comb));
                Ok(None)
            }
            None => Ok(Some(comb)),
        }
    }
}

/// Clears denominators and content; the first nonzero entry is positive.
fn primitive(coeffs: &[BigRational]) -> Vec<BigInt> {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() {
        let sign = match ints.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => -BigInt::one(),
            _ => BigInt::one(),
        };
        for c in &mut ints {
            *c = &*c / &g * &sign;
        }
    }
    ints
}

fn dimension(vs: &[Vec<BigRational>]) -> usize {
    vs.first().map_or(0, Vec::len)
}

/// Independence over `Q` by exact elimination. The certificate is the first
/// relation found, as a primitive integer vector.
pub fn is_independent_rational(vs: &[Vec<BigRational>]) -> Result<IndependenceVerdict> {
    let mut ech = Echelon::new(dimension(vs));
    for v in vs {
        if let Some(comb) = ech.push(v)? {
            let mut cert = primitive(&comb);
            cert.resize(vs.len(), BigInt::zero());
            return Ok(IndependenceVerdict::dependent(cert));
        }
    }
    Ok(IndependenceVerdict::independent())
}

/// Greedy left-to-right selection of a maximal independent subfamily.
pub fn max_independent_subset(vs: &[Vec<BigRational>]) -> Result<Vec<usize>> {
    let mut ech = Echelon::new(dimension(vs));
    let mut kept = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        if ech.push(v)?.is_none() {
            kept.push(i);
        } else {
            // forget the rejected vector so later relations stay aligned
            ech.count -= 1;
        }
    }
    Ok(kept)
}

/// Rational coordinates of a torsion-free element.
fn coordinates(x: &GroupElement, keys: &[(usize, u64)]) -> Vec<BigRational> {
    let scalar = |x: &GroupElement| match x {
        GroupElement::Integer(n) => BigRational::from_integer(n.clone()),
        GroupElement::Rational(q) => q.clone(),
        _ => BigRational::zero(),
    };
    match x {
        GroupElement::Sum(s) => keys
            .iter()
            .map(|&(pos, tag)| s.get(pos, tag).map_or_else(BigRational::zero, scalar))
            .collect(),
        other => vec![scalar(other)],
    }
}

/// Dispatches on the system: all elements of finite order are checked by
/// enumeration, systems in a torsion-free group by rank over `Q`.
pub fn is_independent(xs: &[GroupElement], limits: &Limits) -> Result<IndependenceVerdict> {
    common_parent(xs)?;
    let Some(first) = xs.first() else {
        return Ok(IndependenceVerdict::independent());
    };
    if xs.iter().all(|x| elem_order(x).finite().is_some()) {
        return is_independent_torsion(xs, limits);
    }
    if !first.parent().is_torsion_free() {
        return Err(Error::UnsupportedMix);
    }
    let keys: Vec<(usize, u64)> = xs
        .iter()
        .flat_map(|x| match x {
            GroupElement::Sum(s) => s.entries().keys().copied().collect(),
            _ => BTreeSet::new(),
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    // zero terms never witness a dependency
    let live: Vec<usize> = (0..xs.len()).filter(|&i| !xs[i].is_identity()).collect();
    let vs: Vec<Vec<BigRational>> = live.iter().map(|&i| coordinates(&xs[i], &keys)).collect();
    let mut verdict = is_independent_rational(&vs)?;
    if let Some(cert) = verdict.certificate.take() {
        let mut full = vec![BigInt::zero(); xs.len()];
        for (&i, c) in live.iter().zip(cert) {
            full[i] = c;
        }
        verdict.certificate = Some(full);
    }
    Ok(verdict)
}
