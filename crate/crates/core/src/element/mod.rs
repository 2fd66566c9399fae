//! Exact elements of the model groups `Z`, `Q`, `Q/Z`, `Z(p^inf)`, `Z/m` and
//! finite-support direct sums of them.
//!
//! `Q/Z` and Pruefer elements are kept as their representative in `[0, 1)`,
//! so structural equality is group equality.

mod literal;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::arith::{
    is_squarefree, mod_inverse, to_biguint, valuation, Cardinal, Limits, OrderValue,
};
use crate::error::{Error, Result};
use crate::lang::{Atom, GroupExpr};

pub use literal::parse_element;

fn frac(q: &BigRational) -> BigRational {
    q - q.floor()
}

fn pow_u64(p: u64, k: u32) -> BigInt {
    Pow::pow(BigInt::from(p), k)
}

/// An element `a/p^k` of `Z(p^inf)` with `0 <= a < p^k` and `p` not dividing
/// `a` unless `k = 0` (then `a = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PruferElement {
    p: u64,
    k: u32,
    a: BigInt,
}

impl PruferElement {
    pub fn identity(p: u64) -> Self {
        PruferElement {
            p,
            k: 0,
            a: BigInt::zero(),
        }
    }

    /// The generator `c_n = 1/p^n`; `c_0` is the identity.
    pub fn generator(p: u64, n: u32) -> Self {
        if n == 0 {
            Self::identity(p)
        } else {
            PruferElement {
                p,
                k: n,
                a: BigInt::one(),
            }
        }
    }

    /// The class of `value` mod 1. Fails unless the reduced denominator is a
    /// power of `p`.
    pub fn from_value(p: u64, value: &BigRational) -> Result<Self> {
        let v = frac(value);
        let den = to_biguint(v.denom());
        let k = valuation(&den, p);
        if Pow::pow(BigUint::from(p), k) != den {
            return Err(Error::InvalidArgument(format!(
                "{value} has a denominator that is not a power of {p}"
            )));
        }
        Ok(PruferElement {
            p,
            k,
            a: v.numer().clone(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn numerator(&self) -> &BigInt {
        &self.a
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(self.a.clone(), pow_u64(self.p, self.k))
    }

    fn map_value(&self, f: impl FnOnce(BigRational) -> BigRational) -> Self {
        Self::from_value(self.p, &f(self.value())).expect("p-power denominators are closed")
    }
}

/// A residue `r` modulo `m >= 1`, `0 <= r < m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicElement {
    m: BigInt,
    r: BigInt,
}

impl CyclicElement {
    pub fn new(m: impl Into<BigInt>, r: impl Into<BigInt>) -> Result<Self> {
        let m = m.into();
        if !m.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "modulus {m} must be positive"
            )));
        }
        let r = r.into().mod_floor(&m);
        Ok(CyclicElement { m, r })
    }

    pub fn modulus(&self) -> &BigInt {
        &self.m
    }

    pub fn residue(&self) -> &BigInt {
        &self.r
    }
}

/// One coordinate of a direct sum: a model atom with a multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub atom: Atom,
    pub mult: Cardinal,
}

/// The coordinate structure of a direct-sum parent: the expression's model
/// atoms (aliases expanded, `C*` and `S^1` giving two slots each) in order.
#[derive(Clone, Debug)]
pub struct Layout {
    expr: GroupExpr,
    slots: Vec<Slot>,
}

impl PartialEq for Layout {
    fn eq(&self, other: &Self) -> bool {
        self.slots == other.slots
    }
}

impl Eq for Layout {}

impl Layout {
    pub fn new(expr: &GroupExpr) -> Self {
        let slots = expr
            .model_atoms()
            .into_iter()
            .map(|(atom, mult)| Slot { atom, mult })
            .collect();
        Layout {
            expr: expr.clone(),
            slots,
        }
    }

    pub fn expr(&self) -> &GroupExpr {
        &self.expr
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }
}

/// A finite-support element of a direct sum, keyed by `(slot position, tag)`.
/// Tags may be any `u64` below the slot multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumElement {
    layout: Arc<Layout>,
    entries: BTreeMap<(usize, u64), GroupElement>,
}

impl SumElement {
    pub fn identity(layout: Arc<Layout>) -> Self {
        SumElement {
            layout,
            entries: BTreeMap::new(),
        }
    }

    /// Builds an element, validating every coordinate against its slot and
    /// dropping identity components.
    pub fn new(
        layout: Arc<Layout>,
        entries: impl IntoIterator<Item = ((usize, u64), GroupElement)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((pos, tag), elem) in entries {
            let slot = layout.slots.get(pos).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "position {pos} out of range for {} (has {} slots)",
                    layout.expr,
                    layout.slots.len()
                ))
            })?;
            if let Cardinal::Finite(m) = &slot.mult {
                if BigUint::from(tag) >= *m {
                    return Err(Error::InvalidArgument(format!(
                        "tag {tag} out of range for {}^{}",
                        slot.atom, slot.mult
                    )));
                }
            }
            if !component_fits(&slot.atom, &elem) {
                return Err(Error::InvalidArgument(format!(
                    "{elem} is not an element of {}",
                    slot.atom
                )));
            }
            if map.insert((pos, tag), elem).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "coordinate pos{pos}.tag{tag} given twice"
                )));
            }
        }
        map.retain(|_, e: &mut GroupElement| !e.is_identity());
        Ok(SumElement {
            layout,
            entries: map,
        })
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn entries(&self) -> &BTreeMap<(usize, u64), GroupElement> {
        &self.entries
    }

    pub fn get(&self, pos: usize, tag: u64) -> Option<&GroupElement> {
        self.entries.get(&(pos, tag))
    }

    fn from_map(layout: Arc<Layout>, mut entries: BTreeMap<(usize, u64), GroupElement>) -> Self {
        entries.retain(|_, e| !e.is_identity());
        SumElement { layout, entries }
    }
}

fn component_fits(atom: &Atom, elem: &GroupElement) -> bool {
    match (atom, elem) {
        (Atom::Z, GroupElement::Integer(_)) => true,
        (Atom::Q, GroupElement::Rational(_)) => true,
        (Atom::QmodZ, GroupElement::ModOne(_)) => true,
        (Atom::Prufer(p), GroupElement::Prufer(x)) => x.p == *p,
        (Atom::Cyclic(m), GroupElement::Cyclic(x)) => x.m.magnitude() == m,
        (Atom::Zero, e) => e.is_identity(),
        _ => false,
    }
}

/// An element of one of the model groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupElement {
    /// Element of `Z`.
    Integer(BigInt),
    /// Element of `Q`.
    Rational(BigRational),
    /// Element of `Q/Z`, in `[0, 1)`.
    ModOne(BigRational),
    Prufer(PruferElement),
    Cyclic(CyclicElement),
    Sum(SumElement),
}

/// The group an element lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parent {
    Z,
    Q,
    QmodZ,
    Prufer(u64),
    Cyclic(BigInt),
    Sum(Arc<Layout>),
}

impl fmt::Display for Parent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parent::Z => f.write_str("Z"),
            Parent::Q => f.write_str("Q"),
            Parent::QmodZ => f.write_str("Q/Z"),
            Parent::Prufer(p) => write!(f, "Z({p}^inf)"),
            Parent::Cyclic(m) => write!(f, "Z/{m}"),
            Parent::Sum(layout) => write!(f, "{}", layout.expr),
        }
    }
}

impl Parent {
    pub fn is_torsion_free(&self) -> bool {
        match self {
            Parent::Z | Parent::Q => true,
            Parent::Cyclic(m) => m.is_one(),
            Parent::QmodZ | Parent::Prufer(_) => false,
            Parent::Sum(layout) => layout
                .slots
                .iter()
                .all(|s| s.atom.is_torsion_free() || s.atom == Atom::Cyclic(BigUint::one())),
        }
    }

    pub fn is_divisible(&self) -> bool {
        match self {
            Parent::Q | Parent::QmodZ | Parent::Prufer(_) => true,
            Parent::Z => false,
            Parent::Cyclic(m) => m.is_one(),
            Parent::Sum(layout) => layout.slots.iter().all(|s| s.atom.is_divisible()),
        }
    }
}

impl GroupElement {
    pub fn integer(n: impl Into<BigInt>) -> Self {
        GroupElement::Integer(n.into())
    }

    pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        GroupElement::Rational(BigRational::new(num.into(), den.into()))
    }

    /// The class of `num/den` in `Q/Z`.
    pub fn mod_one(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        GroupElement::ModOne(frac(&BigRational::new(num.into(), den.into())))
    }

    pub fn prufer(p: u64, num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let v = BigRational::new(num.into(), den.into());
        Ok(GroupElement::Prufer(PruferElement::from_value(p, &v)?))
    }

    pub fn cyclic(m: impl Into<BigInt>, r: impl Into<BigInt>) -> Result<Self> {
        Ok(GroupElement::Cyclic(CyclicElement::new(m, r)?))
    }

    pub fn parent(&self) -> Parent {
        match self {
            GroupElement::Integer(_) => Parent::Z,
            GroupElement::Rational(_) => Parent::Q,
            GroupElement::ModOne(_) => Parent::QmodZ,
            GroupElement::Prufer(x) => Parent::Prufer(x.p),
            GroupElement::Cyclic(x) => Parent::Cyclic(x.m.clone()),
            GroupElement::Sum(s) => Parent::Sum(s.layout.clone()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Integer(n) => n.is_zero(),
            GroupElement::Rational(q) | GroupElement::ModOne(q) => q.is_zero(),
            GroupElement::Prufer(x) => x.k == 0,
            GroupElement::Cyclic(x) => x.r.is_zero(),
            GroupElement::Sum(s) => s.entries.is_empty(),
        }
    }

    /// The identity of this element's parent group.
    pub fn identity_like(&self) -> GroupElement {
        match self {
            GroupElement::Integer(_) => GroupElement::Integer(BigInt::zero()),
            GroupElement::Rational(_) => GroupElement::Rational(BigRational::zero()),
            GroupElement::ModOne(_) => GroupElement::ModOne(BigRational::zero()),
            GroupElement::Prufer(x) => GroupElement::Prufer(PruferElement::identity(x.p)),
            GroupElement::Cyclic(x) => GroupElement::Cyclic(CyclicElement {
                m: x.m.clone(),
                r: BigInt::zero(),
            }),
            GroupElement::Sum(s) => GroupElement::Sum(SumElement::identity(s.layout.clone())),
        }
    }

    pub fn neg(&self) -> GroupElement {
        elem_smul(&-BigInt::one(), self)
    }
}

fn mismatch(x: &GroupElement, y: &GroupElement) -> Error {
    Error::ParentMismatch {
        left: x.parent().to_string(),
        right: y.parent().to_string(),
    }
}

pub fn elem_add(x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
    use GroupElement::*;
    Ok(match (x, y) {
        (Integer(a), Integer(b)) => Integer(a + b),
        (Rational(a), Rational(b)) => Rational(a + b),
        (ModOne(a), ModOne(b)) => ModOne(frac(&(a + b))),
        (Prufer(a), Prufer(b)) if a.p == b.p => Prufer(a.map_value(|v| v + b.value())),
        (Cyclic(a), Cyclic(b)) if a.m == b.m => Cyclic(CyclicElement {
            m: a.m.clone(),
            r: (&a.r + &b.r).mod_floor(&a.m),
        }),
        (Sum(a), Sum(b)) if a.layout == b.layout => {
            let mut entries = a.entries.clone();
            for (key, v) in &b.entries {
                let sum = match entries.get(key) {
                    Some(u) => elem_add(u, v)?,
                    None => v.clone(),
                };
                entries.insert(*key, sum);
            }
            Sum(SumElement::from_map(a.layout.clone(), entries))
        }
        _ => return Err(mismatch(x, y)),
    })
}

pub fn elem_sub(x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
    elem_add(x, &y.neg())
}

/// `n * x`, computed in closed form.
pub fn elem_smul(n: &BigInt, x: &GroupElement) -> GroupElement {
    use GroupElement::*;
    match x {
        Integer(a) => Integer(n * a),
        Rational(a) => Rational(a * BigRational::from_integer(n.clone())),
        ModOne(a) => ModOne(frac(&(a * BigRational::from_integer(n.clone())))),
        Prufer(a) => Prufer(a.map_value(|v| v * BigRational::from_integer(n.clone()))),
        Cyclic(a) => Cyclic(CyclicElement {
            m: a.m.clone(),
            r: (n * &a.r).mod_floor(&a.m),
        }),
        Sum(s) => Sum(SumElement::from_map(
            s.layout.clone(),
            s.entries
                .iter()
                .map(|(k, v)| (*k, elem_smul(n, v)))
                .collect(),
        )),
    }
}

pub fn elem_order(x: &GroupElement) -> OrderValue {
    use GroupElement::*;
    match x {
        Integer(_) | Rational(_) if x.is_identity() => OrderValue::Fin(BigUint::one()),
        Integer(_) | Rational(_) => OrderValue::Infinite,
        ModOne(q) => OrderValue::Fin(to_biguint(q.denom())),
        Prufer(a) => OrderValue::Fin(Pow::pow(BigUint::from(a.p), a.k)),
        Cyclic(a) => OrderValue::Fin(to_biguint(&(&a.m / a.r.gcd(&a.m)))),
        Sum(s) => {
            let mut acc = BigUint::one();
            for v in s.entries.values() {
                match elem_order(v) {
                    OrderValue::Fin(k) => acc = acc.lcm(&k),
                    OrderValue::Infinite => return OrderValue::Infinite,
                }
            }
            OrderValue::Fin(acc)
        }
    }
}

/// True iff `x` has finite square-free order.
pub fn in_socle(x: &GroupElement, limits: &Limits) -> Result<bool> {
    match (x, elem_order(x)) {
        (_, OrderValue::Infinite) => Ok(false),
        (GroupElement::Prufer(a), _) => Ok(a.k <= 1),
        (_, OrderValue::Fin(k)) => is_squarefree(&k, limits.factor_bound),
    }
}

/// Every solution of `n * y = x`, or as many as the enumeration bound allows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub solutions: Vec<GroupElement>,
    /// Total number of solutions.
    pub count: Cardinal,
    /// Set when `solutions` is not the complete solution set.
    pub truncated: bool,
}

/// Size of the kernel of multiplication by `n` on one copy of `atom`.
fn kernel_size(atom: &Atom, n: &BigUint) -> BigUint {
    match atom {
        Atom::QmodZ => n.clone(),
        Atom::Prufer(p) => Pow::pow(BigUint::from(*p), valuation(n, *p)),
        Atom::Cyclic(m) => n.gcd(m),
        _ => BigUint::one(),
    }
}

fn bounded_take(
    iter: impl Iterator<Item = GroupElement>,
    total: &BigUint,
    limit: u64,
) -> (Vec<GroupElement>, bool) {
    let list: Vec<_> = iter.take(limit.max(1) as usize).collect();
    let truncated = BigUint::from(list.len()) < *total;
    (list, truncated)
}

/// Solutions of `n * y = x` for `x` in a single model group (not a sum),
/// ascending by representative.
fn divide_atom(n: &BigUint, x: &GroupElement, limits: &Limits) -> Result<Division> {
    use GroupElement::*;
    let n_int = BigInt::from(n.clone());
    let n_rat = BigRational::from_integer(n_int.clone());
    let single = |y: GroupElement| Division {
        solutions: vec![y],
        count: Cardinal::one(),
        truncated: false,
    };
    match x {
        Rational(q) => Ok(single(Rational(q / &n_rat))),
        Integer(a) => {
            let (quot, rem) = a.div_mod_floor(&n_int);
            if rem.is_zero() {
                Ok(single(Integer(quot)))
            } else {
                Err(Error::NoSolution(format!("{n} does not divide {a} in Z")))
            }
        }
        ModOne(q) => {
            // (q + j)/n for j in 0..n
            let (sols, truncated) = bounded_take(
                num_iter_range(n)
                    .map(|j| ModOne(frac(&((q + BigRational::from_integer(j)) / &n_rat)))),
                n,
                limits.enum_bound,
            );
            Ok(Division {
                solutions: sols,
                count: Cardinal::Finite(n.clone()),
                truncated,
            })
        }
        Prufer(a) => {
            let p = a.p;
            let v = valuation(n, p);
            let unit = BigInt::from(n / Pow::pow(BigUint::from(p), v));
            let pk = pow_u64(p, a.k);
            // unit * b = a (mod p^k)
            let b = if a.k == 0 {
                BigInt::zero()
            } else {
                let inv = mod_inverse(&unit, &pk).expect("unit is prime to p");
                (&a.a * inv).mod_floor(&pk)
            };
            let den = pow_u64(p, a.k + v);
            let total = Pow::pow(BigUint::from(p), v);
            let (sols, truncated) = bounded_take(
                num_iter_range(&total).map(|j| {
                    let num = &b + j * &pk;
                    Prufer(
                        PruferElement::from_value(p, &BigRational::new(num, den.clone())).unwrap(),
                    )
                }),
                &total,
                limits.enum_bound,
            );
            Ok(Division {
                solutions: sols,
                count: Cardinal::Finite(total),
                truncated,
            })
        }
        Cyclic(c) => {
            let g = n_int.gcd(&c.m);
            if !(&c.r % &g).is_zero() {
                return Err(Error::NoSolution(format!(
                    "gcd({n}, {}) = {g} does not divide {}",
                    c.m, c.r
                )));
            }
            let step = &c.m / &g;
            let y0 = if step.is_one() {
                BigInt::zero()
            } else {
                let inv = mod_inverse(&(&n_int / &g), &step).expect("n/g is prime to m/g");
                ((&c.r / &g) * inv).mod_floor(&step)
            };
            let total = to_biguint(&g);
            let (sols, truncated) = bounded_take(
                num_iter_range(&total).map(|j| {
                    Cyclic(CyclicElement {
                        m: c.m.clone(),
                        r: &y0 + j * &step,
                    })
                }),
                &total,
                limits.enum_bound,
            );
            Ok(Division {
                solutions: sols,
                count: Cardinal::Finite(total),
                truncated,
            })
        }
        Sum(_) => unreachable!("sums are divided coordinatewise"),
    }
}

fn num_iter_range(n: &BigUint) -> impl Iterator<Item = BigInt> {
    let n = BigInt::from(n.clone());
    let mut j = BigInt::zero();
    std::iter::from_fn(move || {
        if j < n {
            let out = j.clone();
            j += 1;
            Some(out)
        } else {
            None
        }
    })
}

/// A generic element of `atom`, used to divide into zero coordinates.
fn atom_identity(atom: &Atom) -> Option<GroupElement> {
    Some(match atom {
        Atom::Z => GroupElement::integer(0),
        Atom::Q => GroupElement::rational(0, 1),
        Atom::QmodZ => GroupElement::mod_one(0, 1),
        Atom::Prufer(p) => GroupElement::Prufer(PruferElement::identity(*p)),
        Atom::Cyclic(m) => GroupElement::cyclic(BigInt::from(m.clone()), 0).ok()?,
        _ => return None,
    })
}

/// All solutions `y` of `n * y = x`.
///
/// Counts are exact cardinals. For a finite count the list is complete
/// unless it would exceed `limits.enum_bound`. When infinitely many solutions
/// exist (a direct sum with infinitely many coordinates whose kernel is
/// nontrivial) the list holds the solutions supported on the coordinates
/// of `x` and the finite-multiplicity slots, and `truncated` is set.
pub fn elem_divide(n: &BigUint, x: &GroupElement, limits: &Limits) -> Result<Division> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("divisor must be positive".into()));
    }
    let GroupElement::Sum(s) = x else {
        return divide_atom(n, x, limits);
    };

    let mut count = Cardinal::one();
    for slot in &s.layout.slots {
        count = count.mul(&slot.mult.direct_sum_size(&kernel_size(&slot.atom, n))?);
    }

    // candidate values per varied coordinate
    let mut coords: Vec<((usize, u64), Vec<GroupElement>)> = Vec::new();
    let mut truncated = false;
    for (key, v) in &s.entries {
        let d = divide_atom(n, v, limits)?;
        truncated |= d.truncated;
        coords.push((*key, d.solutions));
    }
    let mut budget = BigUint::from(limits.enum_bound);
    for c in &coords {
        budget /= BigUint::from(c.1.len().max(1));
    }
    'slots: for (pos, slot) in s.layout.slots.iter().enumerate() {
        let kernel = kernel_size(&slot.atom, n);
        if kernel.is_one() {
            continue;
        }
        let Some(zero) = atom_identity(&slot.atom) else {
            continue;
        };
        let Cardinal::Finite(mult) = &slot.mult else {
            truncated = true;
            continue;
        };
        let mut tag = 0u64;
        while BigUint::from(tag) < *mult {
            if s.entries.contains_key(&(pos, tag)) {
                tag += 1;
                continue;
            }
            if budget < kernel {
                truncated = true;
                break 'slots;
            }
            budget /= &kernel;
            coords.push(((pos, tag), divide_atom(n, &zero, limits)?.solutions));
            tag += 1;
        }
    }
    coords.sort_by_key(|a| a.0);

    let mut solutions = Vec::new();
    let mut idx = vec![0usize; coords.len()];
    'outer: loop {
        if solutions.len() as u64 >= limits.enum_bound.max(1) {
            truncated = true;
            break;
        }
        let entries = coords
            .iter()
            .zip(&idx)
            .map(|((key, cands), &i)| (*key, cands[i].clone()))
            .collect();
        solutions.push(GroupElement::Sum(SumElement::from_map(
            s.layout.clone(),
            entries,
        )));
        // odometer, last coordinate fastest
        for d in (0..coords.len()).rev() {
            idx[d] += 1;
            if idx[d] < coords[d].1.len() {
                continue 'outer;
            }
            idx[d] = 0;
        }
        break;
    }
    if let Cardinal::Finite(total) = &count {
        truncated = BigUint::from(solutions.len()) < *total;
    }
    Ok(Division {
        solutions,
        count,
        truncated,
    })
}

/// The canonical `y` with `p^k * y = x` in `Z(p^inf)`: the numerator of `x`
/// over `p^(e+k)`, where the identity counts as `1/p^0`.
pub fn chain_lift(x: &GroupElement, k: u32) -> Result<GroupElement> {
    let GroupElement::Prufer(a) = x else {
        return Err(Error::InvalidArgument(format!(
            "chain lifting needs a Pruefer element, got {}",
            x.parent()
        )));
    };
    if k == 0 {
        return Err(Error::InvalidArgument(
            "lift length must be positive".into(),
        ));
    }
    let a_num = if a.k == 0 { BigInt::one() } else { a.a.clone() };
    Ok(GroupElement::Prufer(PruferElement {
        p: a.p,
        k: a.k + k,
        a: a_num,
    }))
}

/// `r * x` in a torsion-free group, using the unique division there.
pub fn rational_scale(r: &BigRational, x: &GroupElement) -> Result<GroupElement> {
    use GroupElement::*;
    let parent = x.parent();
    if !parent.is_torsion_free() {
        return Err(Error::NotTorsionFree(parent.to_string()));
    }
    Ok(match x {
        Rational(q) => Rational(q * r),
        Integer(a) => {
            let v = BigRational::from_integer(a.clone()) * r;
            if !v.is_integer() {
                return Err(Error::NoSolution(format!("{r} * {a} is not an integer")));
            }
            Integer(v.to_integer())
        }
        Sum(s) => {
            let mut entries = BTreeMap::new();
            for (k, v) in &s.entries {
                entries.insert(*k, rational_scale(r, v)?);
            }
            Sum(SumElement::from_map(s.layout.clone(), entries))
        }
        // trivial cyclic group
        Cyclic(_) => x.clone(),
        ModOne(_) | Prufer(_) => unreachable!("torsion parents rejected above"),
    })
}

fn fmt_rat(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Integer(n) => write!(f, "z:{n}"),
            GroupElement::Rational(q) => {
                f.write_str("q:")?;
                fmt_rat(f, q)
            }
            GroupElement::ModOne(q) => {
                f.write_str("qz:")?;
                fmt_rat(f, q)
            }
            GroupElement::Prufer(a) => {
                write!(f, "pr:{}^inf:", a.p)?;
                fmt_rat(f, &a.value())
            }
            GroupElement::Cyclic(c) => write!(f, "cyc:{}:{}", c.m, c.r),
            GroupElement::Sum(s) => {
                f.write_str("{")?;
                for (i, ((pos, tag), v)) in s.entries.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "pos{pos}.tag{tag}={v}")?;
                }
                f.write_str("}")
            }
        }
    }
}
