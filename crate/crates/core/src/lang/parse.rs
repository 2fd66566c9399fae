use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{is_prime, Cardinal, Limits};
use crate::error::{Error, ParseError, Result};

use super::{Atom, GroupExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Plus,
    Caret,
    Slash,
    Star,
    Nat(BigUint),
    Ident(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Star => "'*'".into(),
            Tok::Nat(n) => format!("number {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b if b.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'+' => Tok::Plus,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'*' => Tok::Star,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Nat(text[start..i].parse().unwrap()), start));
                continue;
            }
            b if b.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(ParseError {
                    offset: start,
                    expected: Vec::new(),
                    message: format!("unexpected character {ch:?}"),
                });
            }
        };
        toks.push((tok, start));
        i += 1;
    }
    toks.push((Tok::Eof, text.len()));
    Ok(toks)
}

const ATOM_START: &[&str] = &[
    "0",
    "Z",
    "Q",
    "Q/Z",
    "Z/<n>",
    "Z(<p>^inf)",
    "R",
    "R^<n>",
    "C*",
    "S^1",
    "(",
];

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    limits: &'a Limits,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str], message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            message: message.into(),
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        self.error(expected, format!("unexpected {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[name]))
        }
    }

    fn expect_ident(&mut self, word: &str) -> Result<(), ParseError> {
        self.expect(Tok::Ident(word.into()), word)
    }

    fn expect_nat(&mut self, what: &str) -> Result<BigUint, ParseError> {
        match self.peek() {
            Tok::Nat(n) => {
                let n = n.clone();
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected(&[what])),
        }
    }

    fn at_sum_operator(&self) -> bool {
        *self.peek() == Tok::LParen && *self.peek2() == Tok::Plus
    }

    fn expr(&mut self) -> Result<GroupExpr, ParseError> {
        let mut terms = vec![self.term()?];
        while self.at_sum_operator() {
            self.bump();
            self.bump();
            self.expect(Tok::RParen, ")")?;
            terms.push(self.term()?);
        }
        Ok(GroupExpr::sum(terms))
    }

    fn term(&mut self) -> Result<GroupExpr, ParseError> {
        let atom = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let card = self.cardinal()?;
            Ok(GroupExpr::power(atom, card))
        } else {
            Ok(atom)
        }
    }

    fn cardinal(&mut self) -> Result<Cardinal, ParseError> {
        const EXPECTED: &[&str] = &["<n>", "aleph0", "c"];
        let card = match self.peek() {
            Tok::Nat(n) => Cardinal::Finite(n.clone()),
            Tok::Ident(s) if s == "aleph0" => Cardinal::Aleph0,
            Tok::Ident(s) if s == "c" => Cardinal::Continuum,
            _ => return Err(self.unexpected(EXPECTED)),
        };
        self.bump();
        Ok(card)
    }

    fn atom(&mut self) -> Result<GroupExpr, ParseError> {
        let start = self.offset();
        let atom = match self.peek().clone() {
            Tok::Nat(n) if n.is_zero() => {
                self.bump();
                Atom::Zero
            }
            Tok::LParen if !self.at_sum_operator() => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, ")")?;
                return Ok(inner);
            }
            Tok::Ident(word) => {
                self.bump();
                match word.as_str() {
                    "Z" => self.after_z()?,
                    "Q" if *self.peek() == Tok::Slash => {
                        self.bump();
                        self.expect_ident("Z")?;
                        Atom::QmodZ
                    }
                    "Q" => Atom::Q,
                    "R" if *self.peek() == Tok::Caret && matches!(self.peek2(), Tok::Nat(_)) => {
                        self.bump();
                        let at = self.offset();
                        let n = self.expect_nat("<n>")?;
                        if n.is_zero() {
                            return Err(ParseError {
                                offset: at,
                                expected: vec!["<n> >= 1".into()],
                                message: "exponent of R must be at least 1".into(),
                            });
                        }
                        Atom::RPow(n)
                    }
                    "R" => Atom::R,
                    "C" => {
                        self.expect(Tok::Star, "*")?;
                        Atom::CStar
                    }
                    "S" => {
                        self.expect(Tok::Caret, "^")?;
                        let at = self.offset();
                        match self.expect_nat("1")? {
                            n if n == BigUint::from(1u32) => Atom::Circle,
                            _ => {
                                return Err(ParseError {
                                    offset: at,
                                    expected: vec!["1".into()],
                                    message: "only S^1 is supported".into(),
                                })
                            }
                        }
                    }
                    _ => {
                        return Err(ParseError {
                            offset: start,
                            expected: ATOM_START.iter().map(|s| s.to_string()).collect(),
                            message: format!("unknown group '{word}'"),
                        })
                    }
                }
            }
            _ => return Err(self.unexpected(ATOM_START)),
        };
        Ok(GroupExpr::Atom(atom))
    }

    /// Continues after a `Z`: `Z/m`, `Z(p^inf)`, or plain `Z`.
    fn after_z(&mut self) -> Result<Atom, ParseError> {
        if *self.peek() == Tok::Slash {
            self.bump();
            let at = self.offset();
            let m = self.expect_nat("<n>")?;
            if m.is_zero() {
                return Err(ParseError {
                    offset: at,
                    expected: vec!["<n> >= 1".into()],
                    message: "cyclic modulus must be at least 1".into(),
                });
            }
            return Ok(Atom::Cyclic(m));
        }
        if *self.peek() == Tok::LParen && !self.at_sum_operator() {
            self.bump();
            let at = self.offset();
            let p = self.expect_nat("<p>")?;
            self.expect(Tok::Caret, "^")?;
            self.expect_ident("inf")?;
            self.expect(Tok::RParen, ")")?;
            let not_prime = |message: String| ParseError {
                offset: at,
                expected: vec!["<prime>".into()],
                message,
            };
            let p_small = p
                .to_u64()
                .ok_or_else(|| not_prime(format!("Pruefer base {p} is too large")))?;
            return match is_prime(p_small, self.limits.factor_bound) {
                Ok(true) => Ok(Atom::Prufer(p_small)),
                Ok(false) => Err(not_prime(format!("Pruefer base {p} is not prime"))),
                Err(e) => Err(not_prime(e.to_string())),
            };
        }
        Ok(Atom::Z)
    }
}

/// Parses a group expression using the default limits for primality checks.
pub fn parse(text: &str) -> Result<GroupExpr> {
    parse_with(text, &Limits::default())
}

pub fn parse_with(text: &str, limits: &Limits) -> Result<GroupExpr> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        limits,
    };
    let expr = parser.expr()?;
    if *parser.peek() != Tok::Eof {
        return Err(Error::Parse(parser.unexpected(&["(+)", "end of input"])));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perr(text: &str) -> ParseError {
        match parse(text) {
            Err(Error::Parse(e)) => e,
            other => panic!("expected parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse("Z(2^inf)^3 (+) Q").unwrap(),
            GroupExpr::Sum(vec![
                GroupExpr::power(Atom::Prufer(2).into(), Cardinal::from(3)),
                Atom::Q.into(),
            ])
        );
        assert_eq!(parse("Q/Z").unwrap(), Atom::QmodZ.into());
        assert_eq!(perr("Z/0").offset, 2);
    }

    #[test]
    fn parse_aliases() {
        assert_eq!(parse("C*").unwrap(), Atom::CStar.into());
        assert_eq!(parse("S^1").unwrap(), Atom::Circle.into());
        assert_eq!(parse("R^2").unwrap(), Atom::RPow(2u32.into()).into());
        assert_eq!(
            parse("R^c").unwrap(),
            GroupExpr::power(Atom::R.into(), Cardinal::Continuum)
        );
        assert_eq!(
            parse("R^2^aleph0").unwrap(),
            GroupExpr::power(Atom::RPow(2u32.into()).into(), Cardinal::Aleph0)
        );
        assert_eq!(
            parse("(R)^2").unwrap(),
            GroupExpr::power(Atom::R.into(), Cardinal::from(2))
        );
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(
            parse(" Z ( 5 ^ inf ) ^ c ( + ) Q / Z ").unwrap(),
            parse("Z(5^inf)^c(+)Q/Z").unwrap()
        );
    }

    #[test]
    fn z_followed_by_sum_operator() {
        assert_eq!(
            parse("Z (+) Q").unwrap(),
            GroupExpr::Sum(vec![Atom::Z.into(), Atom::Q.into()])
        );
    }

    #[test]
    fn nested_parentheses() {
        assert_eq!(
            parse("(Z (+) Q)^2 (+) 0").unwrap(),
            GroupExpr::Sum(vec![
                GroupExpr::power(
                    GroupExpr::Sum(vec![Atom::Z.into(), Atom::Q.into()]),
                    Cardinal::from(2)
                ),
                GroupExpr::zero(),
            ])
        );
    }

    #[test]
    fn error_offsets() {
        let e = perr("Z(2^inf");
        assert_eq!(e.offset, 7);
        assert_eq!(e.expected, vec![")"]);
        assert_eq!(perr("Z(4^inf)").offset, 2);
        assert_eq!(perr("Q (+)").offset, 5);
        assert_eq!(perr("Q Q").offset, 2);
        assert_eq!(perr("X").offset, 0);
        assert_eq!(perr("Q^d").offset, 2);
        assert_eq!(perr("S^2").offset, 2);
        assert_eq!(perr("Q # Z").offset, 2);
        assert_eq!(perr("").offset, 0);
        assert_eq!(perr("R^0").offset, 2);
        // multi-byte characters report byte offsets
        assert_eq!(perr("Q (+) ℚ").offset, 6);
    }

    proptest! {
        #[test]
        fn parse_never_panics(s in "[ZQRCS0-9()+^/*a-z ]{0,24}") {
            let _ = parse(&s);
        }
    }
}
