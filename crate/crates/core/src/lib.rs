//! Computer algebra for divisible abelian groups.
//!
//! Every divisible group is a direct sum of Pruefer groups `Z(p^inf)` and
//! copies of `Q`, and the multiplicities `m_p` and `n` determine it up to
//! isomorphism. This crate works with that classification symbolically:
//!
//! * [`arith`]: exact integers, Bezout coefficients, trial-division
//!   factorization and cardinal arithmetic.
//! * [`element`]: exact elements of `Z`, `Q`, `Q/Z`, `Z(p^inf)`, `Z/m` and
//!   finite-support direct sums.
//! * [`lang`]: the group-expression language and its normal form.
//! * [`structure`]: divisibility, torsion and divisible splittings, primary
//!   decomposition, socles, invariants and isomorphism.
//! * [`snf`]: Smith normal form and classification of finitely presented
//!   groups.
//! * [`independence`]: linear independence of finite systems.
//!
//! Isomorphism of expressions is decided by equality of normal forms.
//! Independence can only be checked for finite systems.

pub mod arith;
pub mod element;
pub mod error;
pub mod independence;
pub mod lang;
pub mod snf;
pub mod structure;

pub use arith::{Cardinal, Limits, OrderValue};
pub use element::GroupElement;
pub use error::{Error, ParseError, Result};
pub use lang::{parse, GroupExpr, NormalForm};
