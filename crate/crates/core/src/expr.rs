//! Text format for polynomials, derivations and polynomial maps.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! poly       := term (("+" | "-") term)*
//! term       := unary (("*" | "/") unary)*      divisor must be a nonzero constant
//! unary      := ("+" | "-") unary | power
//! power      := atom ("^" integer)?
//! atom       := integer | "x" | "y" | "(" poly ")"
//!
//! derivation := "dx" "=" poly ";" "dy" "=" poly [";"]
//!             | "shamsuddin" "a" "=" poly ";" "b" "=" poly [";"]
//! map        := "(" poly "," poly ")"
//! ```
//!
//! Multiplication is always explicit: `2x` is rejected, `2*x` is accepted.
//! Printing goes through the `Display` impls of [`BPoly`], [`Derivation`] and
//! [`PolyMap`]; their output parses back to the same value.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::derivation::{Derivation, ShamsuddinForm};
use crate::dynamics::PolyMap;
use crate::polyring::{BPoly, BigRat, UPoly, Var};

/// Largest total degree the parser will build.
pub const MAX_DEGREE: u32 = 200;

/// Rough cap on the bit size of coefficients produced by `^`.
pub const MAX_COEFF_BITS: u64 = 1 << 16;

/// Byte range `start..end` in the parsed text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn new(start: usize, end: usize) -> Self {
        SourceSpan { start, end }
    }

    fn to(self, other: SourceSpan) -> SourceSpan {
        SourceSpan::new(self.start, other.end.max(self.start))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at {}..{}", span.start, span.end)]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
}

impl ParseError {
    fn new(message: impl Into<String>, span: SourceSpan) -> Self {
        ParseError {
            message: message.into(),
            span,
        }
    }

    /// Multi-line message with the input and a caret marker under the span.
    pub fn render(&self, input: &str) -> String {
        let start = input[..self.span.start.min(input.len())].chars().count();
        let width = input
            .get(self.span.start..self.span.end)
            .map_or(0, |s| s.chars().count())
            .max(1);
        format!(
            "error: {}\n  {}\n  {}{}",
            self.message,
            input,
            " ".repeat(start),
            "^".repeat(width)
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    Eq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Semi => "';'".into(),
            Tok::Eq => "'='".into(),
            Tok::Eof => "end of input".into(),
        }
    }

    fn starts_operand(&self) -> bool {
        matches!(self, Tok::Num(_) | Tok::Ident(_) | Tok::LParen)
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Num(src[start..i].parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(src[start..i].to_string())
        } else {
            i += 1;
            match c {
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'/' => Tok::Slash,
                b'^' => Tok::Caret,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b',' => Tok::Comma,
                b';' => Tok::Semi,
                b'=' => Tok::Eq,
                _ => {
                    let ch = src[start..].chars().next().unwrap();
                    let end = start + ch.len_utf8();
                    return Err(ParseError::new(
                        format!("unknown symbol '{ch}'"),
                        SourceSpan::new(start, end),
                    ));
                }
            }
        };
        out.push(Token {
            tok,
            span: SourceSpan::new(start, i),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: SourceSpan::new(src.len(), src.len()),
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        let tokens = lex(src)?;
        if tokens.len() == 1 {
            return Err(ParseError::new(
                "empty input",
                SourceSpan::new(0, src.len()),
            ));
        }
        Ok(Parser { tokens, pos: 0 })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError::new(
            format!("expected {expected}, found {}", t.tok.describe()),
            t.span,
        )
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    /// Errors unless the next token can legally end a polynomial.
    fn check_poly_end(&self, allowed: &[Tok]) -> Result<(), ParseError> {
        let t = self.peek();
        if allowed.contains(&t.tok) {
            return Ok(());
        }
        if t.tok == Tok::Eof && allowed.contains(&Tok::RParen) {
            return Err(ParseError::new("unbalanced '('", t.span));
        }
        if t.tok == Tok::RParen {
            return Err(ParseError::new("unbalanced ')'", t.span));
        }
        if t.tok.starts_operand() {
            return Err(ParseError::new(
                "implicit multiplication is not allowed; write '*'",
                t.span,
            ));
        }
        Err(ParseError::new(
            format!("unexpected {}", t.tok.describe()),
            t.span,
        ))
    }

    fn poly(&mut self) -> Result<(BPoly, SourceSpan), ParseError> {
        let (mut acc, mut span) = self.term()?;
        loop {
            let neg = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok((acc, span)),
            };
            self.bump();
            let (rhs, rs) = self.term()?;
            acc = if neg { &acc - &rhs } else { &acc + &rhs };
            span = span.to(rs);
        }
    }

    fn term(&mut self) -> Result<(BPoly, SourceSpan), ParseError> {
        let (mut acc, mut span) = self.unary()?;
        loop {
            let div = match self.peek().tok {
                Tok::Star => false,
                Tok::Slash => true,
                _ => return Ok((acc, span)),
            };
            self.bump();
            let (rhs, rs) = self.unary()?;
            if div {
                let c = rhs
                    .as_constant()
                    .ok_or_else(|| ParseError::new("division by a non-constant polynomial", rs))?;
                if c.is_zero() {
                    return Err(ParseError::new("division by zero", rs));
                }
                acc = acc.scale(&c.recip());
            } else {
                let d = acc.degree().unwrap_or(0) + rhs.degree().unwrap_or(0);
                if d > MAX_DEGREE {
                    return Err(ParseError::new(
                        format!("degree {d} exceeds the limit {MAX_DEGREE}"),
                        span.to(rs),
                    ));
                }
                acc = &acc * &rhs;
            }
            span = span.to(rs);
        }
    }

    fn unary(&mut self) -> Result<(BPoly, SourceSpan), ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Minus => {
                self.bump();
                let (p, s) = self.unary()?;
                Ok((-p, t.span.to(s)))
            }
            Tok::Plus => {
                self.bump();
                let (p, s) = self.unary()?;
                Ok((p, t.span.to(s)))
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<(BPoly, SourceSpan), ParseError> {
        let (base, span) = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok((base, span));
        }
        let caret = self.bump();
        let t = self.peek().clone();
        let e = match &t.tok {
            Tok::Num(n) => {
                self.bump();
                n.clone()
            }
            Tok::Minus => {
                let end = match self.tokens.get(self.pos + 1) {
                    Some(Token {
                        tok: Tok::Num(_),
                        span,
                    }) => span.end,
                    _ => t.span.end,
                };
                return Err(ParseError::new(
                    "negative exponent",
                    SourceSpan::new(t.span.start, end),
                ));
            }
            Tok::Eof => {
                return Err(ParseError::new("missing exponent after '^'", caret.span));
            }
            _ => {
                return Err(ParseError::new(
                    "exponent must be a nonnegative integer",
                    t.span,
                ));
            }
        };
        let deg = base.degree().unwrap_or(0);
        let e: u32 = match u32::try_from(&e) {
            Ok(e) if deg == 0 || e.saturating_mul(deg) <= MAX_DEGREE => e,
            _ => {
                return Err(ParseError::new(
                    format!("exponent too large (degree limit {MAX_DEGREE})"),
                    t.span,
                ))
            }
        };
        if deg == 0 && e > MAX_DEGREE {
            // constant bases: keep the integers bounded too
            return Err(ParseError::new("exponent too large for a constant", t.span));
        }
        let bits = base
            .terms()
            .map(|(_, c)| c.numer().bits() + c.denom().bits())
            .max()
            .unwrap_or(0);
        if bits.saturating_mul(u64::from(e)) > MAX_COEFF_BITS {
            return Err(ParseError::new(
                "power has coefficients that are too large",
                t.span,
            ));
        }
        Ok((base.pow(e), span.to(t.span)))
    }

    fn atom(&mut self) -> Result<(BPoly, SourceSpan), ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Num(n) => {
                self.bump();
                Ok((BPoly::constant(BigRat::from_integer(n.clone())), t.span))
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "x" => Ok((BPoly::x(), t.span)),
                    "y" => Ok((BPoly::y(), t.span)),
                    _ => Err(ParseError::new(format!("unknown symbol '{name}'"), t.span)),
                }
            }
            Tok::LParen => {
                self.bump();
                let (p, _) = self.poly()?;
                self.check_poly_end(&[Tok::RParen])?;
                let close = self.bump();
                Ok((p, t.span.to(close.span)))
            }
            Tok::RParen => Err(ParseError::new("unbalanced ')'", t.span)),
            Tok::Eof => Err(ParseError::new("unexpected end of input", t.span)),
            _ => Err(self.unexpected("a number, 'x', 'y' or '('")),
        }
    }

    fn ident(&mut self) -> Result<(String, SourceSpan), ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, t.span))
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    /// Parses `name=<poly>` pairs separated by ';' until end of input.
    fn assignments(&mut self) -> Result<Vec<(String, SourceSpan, BPoly, SourceSpan)>, ParseError> {
        let mut out = Vec::new();
        loop {
            if self.peek().tok == Tok::Eof && !out.is_empty() {
                return Ok(out);
            }
            let (name, ns) = self.ident()?;
            self.expect(Tok::Eq)?;
            let (p, ps) = self.poly()?;
            self.check_poly_end(&[Tok::Semi, Tok::Eof])?;
            out.push((name, ns, p, ps));
            if !self.eat(&Tok::Semi) {
                return Ok(out);
            }
        }
    }
}

/// Parses a polynomial in `x`, `y` and expands it to normal form.
pub fn parse_poly(text: &str) -> Result<BPoly, ParseError> {
    let mut p = Parser::new(text)?;
    let (poly, _) = p.poly()?;
    p.check_poly_end(&[Tok::Eof])?;
    Ok(poly)
}

/// Parses a polynomial that must not involve `y`.
pub fn parse_upoly(text: &str) -> Result<UPoly, ParseError> {
    let p = parse_poly(text)?;
    p.to_upoly_x()
        .ok_or_else(|| ParseError::new("y not allowed here", SourceSpan::new(0, text.len())))
}

/// Parses `dx=<poly>; dy=<poly>` or `shamsuddin a=<poly>; b=<poly>`.
pub fn parse_derivation(text: &str) -> Result<Derivation, ParseError> {
    let mut p = Parser::new(text)?;
    let shorthand = matches!(&p.peek().tok, Tok::Ident(s) if s == "shamsuddin");
    if shorthand {
        p.bump();
    }
    let assigns = p.assignments()?;
    let keys: [&str; 2] = if shorthand { ["a", "b"] } else { ["dx", "dy"] };
    let mut slots: [Option<BPoly>; 2] = [None, None];
    for (name, ns, poly, ps) in assigns {
        let Some(k) = keys.iter().position(|k| *k == name) else {
            return Err(ParseError::new(
                format!(
                    "unknown key '{name}', expected '{}' or '{}'",
                    keys[0], keys[1]
                ),
                ns,
            ));
        };
        if slots[k].is_some() {
            return Err(ParseError::new(format!("duplicate key '{name}'"), ns));
        }
        if shorthand && !poly.is_free_of(Var::Y) {
            return Err(ParseError::new(
                format!("y not allowed in shamsuddin coefficient '{name}'"),
                ps,
            ));
        }
        slots[k] = Some(poly);
    }
    let end = SourceSpan::new(text.len(), text.len());
    let [first, second] = slots;
    let first = first.ok_or_else(|| ParseError::new(format!("missing '{}'", keys[0]), end))?;
    let second = second.ok_or_else(|| ParseError::new(format!("missing '{}'", keys[1]), end))?;
    if shorthand {
        let sf = ShamsuddinForm::new(
            first.to_upoly_x().expect("checked free of y"),
            second.to_upoly_x().expect("checked free of y"),
        );
        Ok(sf.to_derivation())
    } else {
        Ok(Derivation::new(first, second))
    }
}

/// Parses `(<poly>, <poly>)`.
pub fn parse_map(text: &str) -> Result<PolyMap, ParseError> {
    let mut p = Parser::new(text)?;
    let open = p.expect(Tok::LParen)?;
    let mut parts = Vec::new();
    loop {
        let (poly, _) = p.poly()?;
        parts.push(poly);
        p.check_poly_end(&[Tok::Comma, Tok::RParen])?;
        if !p.eat(&Tok::Comma) {
            break;
        }
    }
    let close = p.bump();
    if parts.len() != 2 {
        return Err(ParseError::new(
            format!("expected two components, found {}", parts.len()),
            open.span.to(close.span),
        ));
    }
    if p.peek().tok != Tok::Eof {
        return Err(ParseError::new(
            format!("unexpected {} after map", p.peek().tok.describe()),
            p.peek().span,
        ));
    }
    let g = parts.pop().unwrap();
    let f = parts.pop().unwrap();
    Ok(PolyMap::new(f, g))
}

/// Canonical text of any printable value; the inverse of the parsers above.
pub fn format<T: fmt::Display + ?Sized>(value: &T) -> String {
    value.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{int, rat};

    #[test]
    fn reads_terms_directly() {
        let p = parse_poly("x^2*y - 3/2").unwrap();
        assert_eq!(p, BPoly::from_terms([(2, 1, int(1)), (0, 0, rat(-3, 2))]));
    }

    #[test]
    fn expands_powers() {
        let p = parse_poly("(x+y)^2").unwrap();
        assert_eq!(p, (&BPoly::x() + &BPoly::y()).pow(2));
        assert_eq!(parse_poly("-x^2").unwrap(), -BPoly::x().pow(2));
        assert_eq!(parse_poly("2^3*x").unwrap(), BPoly::x().scale(&int(8)));
        assert_eq!(
            parse_poly("x/2 + 1/3").unwrap(),
            parse_poly("1/2*x + 1/3").unwrap()
        );
    }

    #[test]
    fn errors_carry_spans() {
        let e = parse_poly("x^").unwrap_err();
        assert_eq!(e.span, SourceSpan::new(1, 2));
        let e = parse_poly("x + z").unwrap_err();
        assert_eq!(e.span, SourceSpan::new(4, 5));
        assert!(e.message.contains("unknown symbol"));
        let e = parse_poly("x^-1").unwrap_err();
        assert_eq!(e.message, "negative exponent");
        let big = parse_poly("((2^200)^200)^200").unwrap_err();
        assert!(big.message.contains("too large"));
        assert_eq!(e.span, SourceSpan::new(2, 4));
        let e = parse_poly("2x").unwrap_err();
        assert!(e.message.contains("implicit multiplication"));
        assert_eq!(e.span, SourceSpan::new(1, 2));
        assert_eq!(parse_poly("").unwrap_err().message, "empty input");
        assert_eq!(parse_poly("   ").unwrap_err().message, "empty input");
        assert!(parse_poly("(x+1")
            .unwrap_err()
            .message
            .contains("unbalanced"));
        assert!(parse_poly("x+1)").unwrap_err().message.contains("')'"));
        assert!(parse_poly("x/y")
            .unwrap_err()
            .message
            .contains("non-constant"));
        assert_eq!(parse_poly("x/0").unwrap_err().message, "division by zero");
        assert!(parse_poly("x^x")
            .unwrap_err()
            .message
            .contains("nonnegative integer"));
        assert!(parse_poly("x^1000").is_err());
        assert!(parse_poly("x * é")
            .unwrap_err()
            .message
            .contains("unknown symbol 'é'"));
    }

    #[test]
    fn derivations() {
        let d = parse_derivation("shamsuddin a=x; b=1").unwrap();
        assert_eq!(d.dx, BPoly::one());
        assert_eq!(d.dy, parse_poly("x*y + 1").unwrap());
        let d = parse_derivation("dx=1; dy=0").unwrap();
        assert_eq!(d, Derivation::new(BPoly::one(), BPoly::zero()));
        let d2 = parse_derivation("dy = 0 ; dx = 1 ;").unwrap();
        assert_eq!(d, d2);
        let e = parse_derivation("shamsuddin a=y; b=1").unwrap_err();
        assert!(e.message.contains("y not allowed"));
        assert_eq!(e.span, SourceSpan::new(13, 14));
        assert!(parse_derivation("dx=1")
            .unwrap_err()
            .message
            .contains("missing 'dy'"));
        assert!(parse_derivation("dx=1; dx=2")
            .unwrap_err()
            .message
            .contains("duplicate"));
        assert!(parse_derivation("dz=1; dy=2")
            .unwrap_err()
            .message
            .contains("unknown key"));
    }

    #[test]
    fn maps() {
        let m = parse_map("(x+y^2, y)").unwrap();
        assert_eq!(m, PolyMap::new(parse_poly("x + y^2").unwrap(), BPoly::y()));
        assert_eq!(parse_map("(x, y)").unwrap(), PolyMap::identity());
        assert!(parse_map("(x)")
            .unwrap_err()
            .message
            .contains("expected two components"));
        assert!(parse_map("(x, y, 1)")
            .unwrap_err()
            .message
            .contains("expected two components"));
        assert!(parse_map("(x, y) z").is_err());
        assert!(parse_map("x, y").is_err());
    }

    #[test]
    fn canonical_printing() {
        let p = BPoly::from_terms([(1, 1, int(1)), (0, 0, int(-1))]);
        assert_eq!(format(&p), "x*y - 1");
        assert_eq!(format(&PolyMap::identity()), "(x, y)");
        let d = Derivation::new(BPoly::one(), parse_poly("x*y+1").unwrap());
        assert_eq!(format(&d), "dx=1; dy=x*y + 1");
        assert_eq!(parse_derivation(&format(&d)).unwrap(), d);
    }
}
