//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' natural)?
//! base     := rational | name | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Whitespace is insignificant. A leading minus is accepted at the start of an
//! expression so that printed polynomials with a negative leading coefficient
//! parse back.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::Poly;
use crate::fields::{Field, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnknownVariable(String),
    MalformedRational(String),
    ExponentTooLarge(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub offset: usize,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected `{t}`"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            ParseErrorKind::MalformedRational(r) => write!(f, "malformed rational literal `{r}`"),
            ParseErrorKind::ExponentTooLarge(e) => write!(f, "exponent `{e}` too large"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(s) | Tok::Ident(s) => write!(f, "{s}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].to_string()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError { kind: ParseErrorKind::UnexpectedChar(ch), offset: i });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Parser configured with variable names and optional named constants.
#[derive(Clone, Debug)]
pub struct PolyParser<F> {
    vars: Vec<String>,
    constants: Vec<(String, F)>,
}

impl<F: Field> PolyParser<F> {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Self {
        Self { vars: vars.iter().map(|v| v.as_ref().to_string()).collect(), constants: Vec::new() }
    }

    /// Binds `name` to a field constant, e.g. `s` for rational functions.
    pub fn constant(mut self, name: &str, value: F) -> Self {
        self.constants.push((name.to_string(), value));
        self
    }

    pub fn parse(&self, text: &str) -> Result<Poly<F>, ParseError> {
        let toks = tokenize(text)?;
        let mut state = State { toks, pos: 0, parser: self };
        let out = state.expr()?;
        match state.peek() {
            (Tok::End, _) => Ok(out),
            (tok, offset) => Err(ParseError { kind: ParseErrorKind::UnexpectedToken(tok.to_string()), offset }),
        }
    }
}

/// Parses `text` as a polynomial in `vars` with rational literals.
pub fn parse_poly<F: Field, S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Poly<F>, ParseError> {
    PolyParser::new(vars).parse(text)
}

struct State<'a, F> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    parser: &'a PolyParser<F>,
}

impl<F: Field> State<'_, F> {
    fn n(&self) -> usize {
        self.parser.vars.len()
    }

    fn peek(&self) -> (Tok, usize) {
        self.toks[self.pos].clone()
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(tok: Tok, offset: usize) -> ParseError {
        let kind = match tok {
            Tok::End => ParseErrorKind::UnexpectedEnd,
            t => ParseErrorKind::UnexpectedToken(t.to_string()),
        };
        ParseError { kind, offset }
    }

    fn expr(&mut self) -> Result<Poly<F>, ParseError> {
        let negate = matches!(self.peek().0, Tok::Minus);
        if negate {
            self.bump();
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek().0 {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().0 == Tok::Star {
            self.bump();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly<F>, ParseError> {
        let base = self.base()?;
        if self.peek().0 != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            (Tok::Int(digits), offset) => {
                let exp: u32 = digits.parse().map_err(|_| ParseError {
                    kind: ParseErrorKind::ExponentTooLarge(digits.clone()),
                    offset,
                })?;
                Ok(base.pow(exp))
            }
            (tok, offset) => Err(Self::unexpected(tok, offset)),
        }
    }

    fn base(&mut self) -> Result<Poly<F>, ParseError> {
        match self.bump() {
            (Tok::Int(digits), offset) => {
                let num: BigInt = digits.parse().expect("digits");
                let mut value = Rational::from_integer(num);
                if self.peek().0 == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        (Tok::Int(den), _) => {
                            let den: BigInt = den.parse().expect("digits");
                            if den.is_zero() {
                                return Err(ParseError {
                                    kind: ParseErrorKind::MalformedRational(format!("{digits}/0")),
                                    offset,
                                });
                            }
                            value = Rational::new(value.to_integer(), den);
                        }
                        (tok, _) => {
                            let text = format!("{digits}/{tok}");
                            return Err(ParseError { kind: ParseErrorKind::MalformedRational(text), offset });
                        }
                    }
                }
                Ok(Poly::constant(self.n(), F::from_rational(&value)))
            }
            (Tok::Ident(name), offset) => {
                if let Some(i) = self.parser.vars.iter().position(|v| *v == name) {
                    return Ok(Poly::var(self.n(), i));
                }
                if let Some((_, c)) = self.parser.constants.iter().find(|(k, _)| *k == name) {
                    return Ok(Poly::constant(self.n(), c.clone()));
                }
                Err(ParseError { kind: ParseErrorKind::UnknownVariable(name), offset })
            }
            (Tok::LParen, _) => {
                let inner = self.expr()?;
                match self.bump() {
                    (Tok::RParen, _) => Ok(inner),
                    (tok, offset) => Err(Self::unexpected(tok, offset)),
                }
            }
            (tok, offset) => Err(Self::unexpected(tok, offset)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::RatFunc;

    type P = Poly<Rational>;

    fn parse(text: &str) -> Result<P, ParseError> {
        parse_poly(text, &["x", "y"])
    }

    #[test]
    fn reads_three_term_polynomial() {
        let f = parse("y^2 - 2*x^3 + 1/2").unwrap();
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let expected = y
            .pow(2)
            .sub(&x.pow(3).scale(&Rational::from_integer(2.into())))
            .add(&P::constant(2, Rational::new(1.into(), 2.into())));
        assert_eq!(f, expected);
        assert_eq!(f.term_count(), 3);
    }

    #[test]
    fn distributes_products() {
        let x = P::var(2, 0);
        assert_eq!(parse("x*(x+1)").unwrap(), x.pow(2).add(&x));
        assert_eq!(parse("-(x - 1)^2").unwrap(), x.sub(&P::one(2)).pow(2).neg());
    }

    #[test]
    fn reports_positions() {
        let err = parse("x + )").unwrap_err();
        assert_eq!(err.offset, 4);
        assert_eq!(err.kind, ParseErrorKind::UnexpectedToken(")".into()));
        assert_eq!(err.to_string(), "syntax error at offset 4: unexpected `)`");

        let err = parse("x + z").unwrap_err();
        assert_eq!(err, ParseError { kind: ParseErrorKind::UnknownVariable("z".into()), offset: 4 });

        let err = parse("3/0*x").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::MalformedRational(_)));
        assert_eq!(err.offset, 0);

        assert_eq!(parse("x +").unwrap_err().kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(parse("x $ y").unwrap_err(), ParseError { kind: ParseErrorKind::UnexpectedChar('$'), offset: 2 });
        assert!(matches!(parse("x y").unwrap_err().kind, ParseErrorKind::UnexpectedToken(_)));
        assert!(matches!(parse("x^99999999999").unwrap_err().kind, ParseErrorKind::ExponentTooLarge(_)));
    }

    #[test]
    fn named_constants() {
        let p = PolyParser::<RatFunc>::new(&["X", "Y"]).constant("s", RatFunc::s());
        let f = p.parse("(s - 1)*X^3").unwrap();
        let x = Poly::<RatFunc>::var(2, 0);
        assert_eq!(f, x.pow(3).scale(&RatFunc::s_minus(1)));
    }

    #[test]
    fn print_then_parse() {
        let f = parse("-3/4*x^2*y + 5*y^3 - x + 7").unwrap();
        let printed = f.to_string_with(&["x", "y"]);
        assert_eq!(printed, "-3/4*x^2*y + 5*y^3 - x + 7");
        assert_eq!(parse(&printed).unwrap(), f);
    }
}
