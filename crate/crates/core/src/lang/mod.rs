//! The group-expression language: direct sums of model atoms with cardinal
//! multiplicities.
//!
//! ```text
//! expr     := term { "(+)" term } ;
//! term     := atom [ "^" cardinal ] ;
//! atom     := "0" | "Z" | "Q" | "Q/Z" | "Z/" nat | "Z(" nat "^inf)"
//!           | "R" [ "^" nat ] | "C*" | "S^1" | "(" expr ")" ;
//! cardinal := nat | "aleph0" | "c" ;
//! ```
//!
//! Aliases (`R`, `R^n`, `C*`, `S^1`) survive parsing and printing untouched;
//! they are only replaced by their model decomposition during normalization.

mod normal;
mod parse;

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::Cardinal;

pub use normal::{normalize, ElementaryDivisor, NormalForm};
pub use parse::{parse, parse_with};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Zero,
    Z,
    Q,
    /// `Z/m`, `m >= 1`.
    Cyclic(BigUint),
    /// `Z(p^inf)`, `p` prime.
    Prufer(u64),
    QmodZ,
    R,
    /// `R^n`, `n >= 1`.
    RPow(BigUint),
    CStar,
    Circle,
}

impl Atom {
    /// The atom as a direct sum of model atoms (`Zero`, `Z`, `Q`, `Z/m`,
    /// `Z(p^inf)`, `Q/Z`).
    pub fn model_parts(&self) -> Vec<(Atom, Cardinal)> {
        match self {
            Atom::R | Atom::RPow(_) => vec![(Atom::Q, Cardinal::Continuum)],
            Atom::CStar | Atom::Circle => vec![
                (Atom::QmodZ, Cardinal::one()),
                (Atom::Q, Cardinal::Continuum),
            ],
            other => vec![(other.clone(), Cardinal::one())],
        }
    }

    pub fn is_alias(&self) -> bool {
        matches!(self, Atom::R | Atom::RPow(_) | Atom::CStar | Atom::Circle)
    }

    /// Every element has finite order.
    pub fn is_torsion(&self) -> bool {
        matches!(
            self,
            Atom::Zero | Atom::Cyclic(_) | Atom::Prufer(_) | Atom::QmodZ
        )
    }

    /// No nonzero element has finite order.
    pub fn is_torsion_free(&self) -> bool {
        matches!(
            self,
            Atom::Zero | Atom::Z | Atom::Q | Atom::R | Atom::RPow(_)
        )
    }

    pub fn is_divisible(&self) -> bool {
        match self {
            Atom::Z => false,
            Atom::Cyclic(m) => m.is_one(),
            _ => true,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Zero => f.write_str("0"),
            Atom::Z => f.write_str("Z"),
            Atom::Q => f.write_str("Q"),
            Atom::Cyclic(m) => write!(f, "Z/{m}"),
            Atom::Prufer(p) => write!(f, "Z({p}^inf)"),
            Atom::QmodZ => f.write_str("Q/Z"),
            Atom::R => f.write_str("R"),
            Atom::RPow(n) => write!(f, "R^{n}"),
            Atom::CStar => f.write_str("C*"),
            Atom::Circle => f.write_str("S^1"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Atom(Atom),
    Power(Box<GroupExpr>, Cardinal),
    /// At least two summands when produced by the parser or `GroupExpr::sum`.
    Sum(Vec<GroupExpr>),
}

impl GroupExpr {
    pub fn zero() -> Self {
        GroupExpr::Atom(Atom::Zero)
    }

    pub fn power(base: GroupExpr, card: Cardinal) -> Self {
        GroupExpr::Power(Box::new(base), card)
    }

    /// `base^card`, dropping a trivial exponent of 1.
    pub fn power_or_atom(base: GroupExpr, card: Cardinal) -> Self {
        if card == Cardinal::one() {
            base
        } else {
            GroupExpr::power(base, card)
        }
    }

    /// Builds a sum, collapsing the empty sum to `0` and singletons to their
    /// only summand.
    pub fn sum(mut terms: Vec<GroupExpr>) -> Self {
        match terms.len() {
            0 => GroupExpr::zero(),
            1 => terms.pop().unwrap(),
            _ => GroupExpr::Sum(terms),
        }
    }

    /// Flattens the expression into its atoms, each with the product of the
    /// exponents above it. Aliases are kept as written.
    pub fn atoms(&self) -> Vec<(Atom, Cardinal)> {
        let mut out = Vec::new();
        self.collect_atoms(&Cardinal::one(), &mut out);
        out
    }

    fn collect_atoms(&self, mult: &Cardinal, out: &mut Vec<(Atom, Cardinal)>) {
        match self {
            GroupExpr::Atom(a) => out.push((a.clone(), mult.clone())),
            GroupExpr::Power(base, c) => base.collect_atoms(&mult.mul(c), out),
            GroupExpr::Sum(terms) => {
                for t in terms {
                    t.collect_atoms(mult, out);
                }
            }
        }
    }

    /// Like [`GroupExpr::atoms`] with aliases replaced by model atoms.
    pub fn model_atoms(&self) -> Vec<(Atom, Cardinal)> {
        self.atoms()
            .into_iter()
            .flat_map(|(atom, mult)| {
                atom.model_parts()
                    .into_iter()
                    .map(move |(part, m)| (part, m.mul(&mult)))
            })
            .collect()
    }

    /// Rebuilds the expression bottom-up, replacing each atom by `f(atom)`.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> GroupExpr) -> GroupExpr {
        match self {
            GroupExpr::Atom(a) => f(a),
            GroupExpr::Power(base, c) => GroupExpr::power(base.map_atoms(f), c.clone()),
            GroupExpr::Sum(terms) => GroupExpr::Sum(terms.iter().map(|t| t.map_atoms(f)).collect()),
        }
    }

    /// Removes `0` summands and zero exponents where the structure allows.
    pub fn simplify(&self) -> GroupExpr {
        match self {
            GroupExpr::Atom(_) => self.clone(),
            GroupExpr::Power(base, c) => {
                let base = base.simplify();
                if c.is_zero() || base == GroupExpr::zero() {
                    GroupExpr::zero()
                } else {
                    GroupExpr::power_or_atom(base, c.clone())
                }
            }
            GroupExpr::Sum(terms) => GroupExpr::sum(
                terms
                    .iter()
                    .map(GroupExpr::simplify)
                    .filter(|t| *t != GroupExpr::zero())
                    .collect(),
            ),
        }
    }
}

impl From<Atom> for GroupExpr {
    fn from(a: Atom) -> Self {
        GroupExpr::Atom(a)
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Atom(a) => write!(f, "{a}"),
            GroupExpr::Power(base, c) => {
                // `R^n` is an atom of its own, so a finite power of plain `R`
                // needs parentheses to survive a round trip.
                let wrap = match base.as_ref() {
                    GroupExpr::Atom(Atom::R) => c.is_finite(),
                    GroupExpr::Atom(_) => false,
                    _ => true,
                };
                if wrap {
                    write!(f, "({base})^{c}")
                } else {
                    write!(f, "{base}^{c}")
                }
            }
            GroupExpr::Sum(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" (+) ")?;
                    }
                    if matches!(t, GroupExpr::Sum(_)) {
                        write!(f, "({t})")?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn print_examples() {
        assert_eq!(
            GroupExpr::Sum(vec![Atom::Q.into(), Atom::Q.into()]).to_string(),
            "Q (+) Q"
        );
        assert_eq!(
            GroupExpr::power(Atom::Prufer(3).into(), Cardinal::Aleph0).to_string(),
            "Z(3^inf)^aleph0"
        );
        assert_eq!(GroupExpr::zero().to_string(), "0");
        assert_eq!(
            GroupExpr::power(Atom::R.into(), Cardinal::from(2)).to_string(),
            "(R)^2"
        );
        assert_eq!(
            GroupExpr::power(Atom::R.into(), Cardinal::Continuum).to_string(),
            "R^c"
        );
    }

    #[test]
    fn atoms_multiply_nested_exponents() {
        let e = GroupExpr::power(
            GroupExpr::Sum(vec![
                Atom::Z.into(),
                GroupExpr::power(Atom::Q.into(), Cardinal::from(3)),
            ]),
            Cardinal::from(2),
        );
        assert_eq!(
            e.atoms(),
            vec![(Atom::Z, Cardinal::from(2)), (Atom::Q, Cardinal::from(6))]
        );
        let c = GroupExpr::from(Atom::CStar);
        assert_eq!(
            c.model_atoms(),
            vec![
                (Atom::QmodZ, Cardinal::one()),
                (Atom::Q, Cardinal::Continuum)
            ]
        );
    }

    #[test]
    fn simplify_drops_zero_parts() {
        let e = GroupExpr::Sum(vec![
            GroupExpr::zero(),
            GroupExpr::power(Atom::Q.into(), Cardinal::zero()),
            GroupExpr::power(Atom::Z.into(), Cardinal::one()),
        ]);
        assert_eq!(e.simplify(), GroupExpr::from(Atom::Z));
    }
}
