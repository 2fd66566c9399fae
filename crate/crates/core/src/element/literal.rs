//! Element literals: `q:3/5`, `qz:1/6`, `pr:2^inf:3/8`, `cyc:12:7`, `z:4`,
//! and `{pos0.tag0=qz:1/2, pos2.tag5=q:1/3}` for direct sums.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{is_prime, Limits};
use crate::error::{Error, ParseError, Result};
use crate::lang::GroupExpr;

use super::{CyclicElement, GroupElement, Layout, PruferElement, SumElement};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.rest().starts_with(|c: char| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn err(&self, expected: &[&str], message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            message: message.into(),
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(&[s], "unexpected input"))
        }
    }

    fn nat(&mut self) -> Result<BigUint, ParseError> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.err(&["<digits>"], "expected a number"));
        }
        let n = self.rest()[..len].parse().unwrap();
        self.pos += len;
        Ok(n)
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        let neg = self.eat("-");
        let n = BigInt::from(self.nat()?);
        Ok(if neg { -n } else { n })
    }

    fn rat(&mut self) -> Result<BigRational, ParseError> {
        let num = self.int()?;
        if self.eat("/") {
            let at = self.pos;
            let den = self.nat()?;
            if den.is_zero() {
                return Err(ParseError {
                    offset: at,
                    expected: vec!["<nonzero>".into()],
                    message: "zero denominator".into(),
                });
            }
            Ok(BigRational::new(num, den.into()))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn small(&mut self, what: &str) -> Result<u64, ParseError> {
        let at = self.pos;
        let n = self.nat()?;
        n.to_u64().ok_or_else(|| ParseError {
            offset: at,
            expected: vec![what.into()],
            message: format!("{n} is too large"),
        })
    }
}

const KINDS: &[&str] = &["q:", "qz:", "z:", "pr:", "cyc:", "{"];

fn atom_literal(cur: &mut Cursor<'_>, limits: &Limits) -> Result<GroupElement> {
    cur.skip_ws();
    let start = cur.pos;
    let invalid = |e: Error| match e {
        Error::InvalidArgument(message) => Error::Parse(ParseError {
            offset: start,
            expected: Vec::new(),
            message,
        }),
        other => other,
    };
    // longer prefixes first
    if cur.eat("qz:") {
        let q = cur.rat()?;
        Ok(GroupElement::mod_one(q.numer().clone(), q.denom().clone()))
    } else if cur.eat("q:") {
        Ok(GroupElement::Rational(cur.rat()?))
    } else if cur.eat("z:") {
        Ok(GroupElement::Integer(cur.int()?))
    } else if cur.eat("pr:") {
        let at = cur.pos;
        let p = cur.small("<prime>")?;
        if !is_prime(p, limits.factor_bound).unwrap_or(false) {
            return Err(ParseError {
                offset: at,
                expected: vec!["<prime>".into()],
                message: format!("{p} is not a prime within the factor bound"),
            }
            .into());
        }
        cur.expect("^")?;
        cur.expect("inf")?;
        cur.expect(":")?;
        let q = cur.rat()?;
        PruferElement::from_value(p, &q)
            .map(GroupElement::Prufer)
            .map_err(invalid)
    } else if cur.eat("cyc:") {
        let m = cur.nat()?;
        cur.expect(":")?;
        let r = cur.int()?;
        CyclicElement::new(m, r)
            .map(GroupElement::Cyclic)
            .map_err(invalid)
    } else {
        Err(cur.err(KINDS, "expected an element literal").into())
    }
}

fn sum_literal(cur: &mut Cursor<'_>, parent: &GroupExpr, limits: &Limits) -> Result<GroupElement> {
    let layout = Arc::new(Layout::new(parent));
    let start = cur.pos;
    let mut entries = Vec::new();
    if !cur.eat("}") {
        loop {
            cur.expect("pos")?;
            let pos = cur.small("<position>")? as usize;
            cur.expect(".")?;
            cur.expect("tag")?;
            let tag = cur.small("<tag>")?;
            cur.expect("=")?;
            entries.push(((pos, tag), atom_literal(cur, limits)?));
            if cur.eat("}") {
                break;
            }
            cur.expect(",")?;
        }
    }
    SumElement::new(layout, entries)
        .map(GroupElement::Sum)
        .map_err(|e| match e {
            Error::InvalidArgument(message) => Error::Parse(ParseError {
                offset: start,
                expected: Vec::new(),
                message,
            }),
            other => other,
        })
}

/// Parses an element literal. Direct-sum literals need the `parent`
/// expression; positions index its model atoms in order.
pub fn parse_element(
    text: &str,
    parent: Option<&GroupExpr>,
    limits: &Limits,
) -> Result<GroupElement> {
    let mut cur = Cursor { text, pos: 0 };
    let elem = if cur.eat("{") {
        let parent = parent.ok_or_else(|| {
            Error::Parse(cur.err(&["--group"], "direct-sum literals need a parent group"))
        })?;
        sum_literal(&mut cur, parent, limits)?
    } else {
        atom_literal(&mut cur, limits)?
    };
    cur.skip_ws();
    if cur.pos != text.len() {
        return Err(cur.err(&["end of input"], "trailing input").into());
    }
    Ok(elem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse;

    fn lit(text: &str) -> GroupElement {
        parse_element(text, None, &Limits::default()).unwrap()
    }

    #[test]
    fn atom_literals() {
        assert_eq!(lit("q:3/5"), GroupElement::rational(3, 5));
        assert_eq!(lit("qz:7/6"), GroupElement::mod_one(1, 6));
        assert_eq!(lit("qz:-1/2"), GroupElement::mod_one(1, 2));
        assert_eq!(lit("pr:2^inf:3/8"), GroupElement::prufer(2, 3, 8).unwrap());
        assert_eq!(lit("cyc:12:7"), GroupElement::cyclic(12, 7).unwrap());
        assert_eq!(lit("cyc:12:-1"), GroupElement::cyclic(12, 11).unwrap());
        assert_eq!(lit("z:-4"), GroupElement::integer(-4));
        assert_eq!(lit(" q:2 "), GroupElement::rational(2, 1));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "q:3/5",
            "qz:1/6",
            "pr:2^inf:3/8",
            "cyc:12:7",
            "z:4",
            "q:-2",
            "pr:3^inf:0",
        ] {
            assert_eq!(lit(text).to_string(), text);
        }
    }

    #[test]
    fn sum_literal_against_parent() {
        let parent = parse("Q/Z (+) Z (+) Q^c").unwrap();
        let x = parse_element(
            "{pos0.tag0=qz:1/2, pos2.tag5=q:1/3}",
            Some(&parent),
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(x.to_string(), "{pos0.tag0=qz:1/2, pos2.tag5=q:1/3}");
        let GroupElement::Sum(s) = &x else { panic!() };
        assert_eq!(s.get(2, 5), Some(&GroupElement::rational(1, 3)));
        assert_eq!(
            parse_element("{}", Some(&parent), &Limits::default())
                .unwrap()
                .to_string(),
            "{}"
        );
    }

    #[test]
    fn rejected_literals() {
        let l = Limits::default();
        let parent = parse("Q/Z (+) Z").unwrap();
        let offset = |text: &str, parent: Option<&GroupExpr>| match parse_element(text, parent, &l)
        {
            Err(Error::Parse(e)) => e.offset,
            other => panic!("{text}: {other:?}"),
        };
        assert_eq!(offset("pr:4^inf:1/4", None), 3);
        assert_eq!(offset("pr:2^inf:1/3", None), 0);
        assert_eq!(offset("q:1/0", None), 4);
        assert_eq!(offset("w:1", None), 0);
        assert_eq!(offset("z:1 z", None), 4);
        assert_eq!(offset("{pos0.tag0=qz:1/2}", None), 1);
        // wrong component type, tag beyond a finite multiplicity
        assert_eq!(offset("{pos1.tag0=q:1}", Some(&parent)), 1);
        assert_eq!(offset("{pos1.tag1=z:1}", Some(&parent)), 1);
        assert_eq!(offset("{pos7.tag0=z:1}", Some(&parent)), 1);
        assert_eq!(offset("cyc:0:1", None), 0);
    }
}
