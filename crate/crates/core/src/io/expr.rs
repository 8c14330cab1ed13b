//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['-' | '+'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := var | uint ['/' uint] | 'w' | '(' expr ')'
//! ```
//!
//! There is no implicit multiplication and exponents are plain integers at
//! most 64. Positions in errors are byte offsets into the input.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::MPoly;
use crate::scalars::{MinPoly, Rational, Scalar};

const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Gen,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Which symbols an expression may use.
#[derive(Clone, Debug)]
pub struct Symbols {
    pub vars: Vec<String>,
    pub field: Option<Arc<MinPoly>>,
}

impl Symbols {
    pub fn new(vars: &[&str], field: Option<Arc<MinPoly>>) -> Self {
        Symbols { vars: vars.iter().map(|v| v.to_string()).collect(), field }
    }

    /// `x0..x3`, `y0..y2`, `u0, u1, v0, v1`.
    pub fn standard(field: Option<Arc<MinPoly>>) -> Self {
        Symbols::new(&["x0", "x1", "x2", "x3", "y0", "y1", "y2", "u0", "u1", "v0", "v1"], field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap();
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character '{ch}'") });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    symbols: &'a Symbols,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> Error {
        let found = match self.peek() {
            Tok::Int(n) => format!("'{n}'"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        };
        Error::Syntax { pos: self.pos(), msg: format!("{msg}, found {found}") }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let e = u32::try_from(&n).ok().filter(|&e| e <= MAX_EXPONENT).ok_or(Error::ExponentOverflow { pos })?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(self.error("expected an integer exponent")),
        }
    }

    fn base(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if self.eat('/') {
                    let dpos = self.pos();
                    match self.peek().clone() {
                        Tok::Int(d) if !d.is_zero() => {
                            self.bump();
                            Ok(Expr::Num(Rational::new(n, d)))
                        }
                        Tok::Int(_) => Err(Error::Syntax { pos: dpos, msg: "zero denominator".into() }),
                        _ => Err(self.error("expected an integer denominator")),
                    }
                } else {
                    Ok(Expr::Num(Rational::from_integer(n)))
                }
            }
            Tok::Ident(name) => {
                self.bump();
                if name == "w" && !self.symbols.vars.iter().any(|v| v == "w") {
                    if self.symbols.field.is_none() {
                        return Err(Error::UnknownSymbol { pos, name });
                    }
                    Ok(Expr::Gen)
                } else if self.symbols.vars.contains(&name) {
                    Ok(Expr::Var(name))
                } else {
                    Err(Error::UnknownSymbol { pos, name })
                }
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

pub fn parse(text: &str, symbols: &Symbols) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, at: 0, symbols };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error("expected an operator"));
    }
    Ok(e)
}

impl Expr {
    pub fn to_poly(&self, field: Option<&Arc<MinPoly>>) -> MPoly<Scalar> {
        match self {
            Expr::Num(r) => MPoly::constant(Scalar::from(r.clone())),
            Expr::Var(v) => MPoly::var(v),
            Expr::Gen => MPoly::constant(Scalar::generator(field.expect("generator needs a field"))),
            Expr::Neg(e) => -e.to_poly(field),
            Expr::Add(a, b) => a.to_poly(field) + b.to_poly(field),
            Expr::Sub(a, b) => a.to_poly(field) - b.to_poly(field),
            Expr::Mul(a, b) => a.to_poly(field) * b.to_poly(field),
            Expr::Pow(a, e) => a.to_poly(field).pow(*e),
        }
    }
}

pub fn parse_poly(text: &str, symbols: &Symbols) -> Result<MPoly<Scalar>> {
    Ok(parse(text, symbols)?.to_poly(symbols.field.as_ref()))
}

/// A constant expression such as `-w^2` or `1/2 + 3*w`.
pub fn parse_scalar(text: &str, field: Option<&Arc<MinPoly>>) -> Result<Scalar> {
    let symbols = Symbols::new(&[], field.cloned());
    let p = parse_poly(text, &symbols)?;
    Ok(p.constant_value().unwrap_or_else(Scalar::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use proptest::prelude::*;

    fn omega() -> Arc<MinPoly> {
        Arc::new(MinPoly::omega())
    }
    fn sym() -> Symbols {
        Symbols::standard(Some(omega()))
    }

    #[test]
    fn fermat_form() {
        let p = parse_poly("x0^3 + x1^3 + x2^3 + x3^3", &sym()).unwrap();
        assert_eq!(p.num_terms(), 4);
        assert_eq!(p.to_string(), "x0^3 + x1^3 + x2^3 + x3^3");
    }

    #[test]
    fn minus_omega_squared() {
        let s = parse_scalar("-w^2", Some(&omega())).unwrap();
        let w = Scalar::generator(&omega());
        assert_eq!(s, Scalar::int(1) + w);
    }

    #[test]
    fn parenthesized_exponent_rejected() {
        assert!(matches!(parse_poly("x0^(3)", &sym()), Err(Error::Syntax { pos: 3, .. })));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_poly("x0 + z1", &sym()).unwrap_err(), Error::UnknownSymbol { pos: 5, name: "z1".into() });
        assert_eq!(parse_poly("x0^65", &sym()).unwrap_err(), Error::ExponentOverflow { pos: 3 });
        assert!(matches!(parse_poly("2 x0", &sym()), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x0 * -x1", &sym()), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse_poly("(x0 + x1", &sym()), Err(Error::Syntax { pos: 8, .. })));
        assert!(matches!(parse_poly("x0 / x1", &sym()), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("1/0", &sym()), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x0 # 1", &sym()), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("", &sym()), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_poly("x0^", &sym()), Err(Error::Syntax { pos: 3, .. })));
        assert_eq!(
            parse_poly("w*x0", &Symbols::standard(None)).unwrap_err(),
            Error::UnknownSymbol { pos: 0, name: "w".into() }
        );
    }

    #[test]
    fn fractions_and_signs() {
        let p = parse_poly("+1/2*x0 - 3/4", &sym()).unwrap();
        assert_eq!(p.to_string(), "1/2*x0 - 3/4");
        assert_eq!(parse_scalar("6/4", None).unwrap(), Scalar::from(rat(3, 2)));
    }

    #[test]
    fn canonical_rendering_of_extension_coefficients() {
        let p = parse_poly("(1 + w)*x0 - w*x1 - 1/2", &sym()).unwrap();
        assert_eq!(p.to_string(), "(1 + w)*x0 - w*x1 - 1/2");
        let q = parse_poly("-(1 + w)*x0", &sym()).unwrap();
        assert_eq!(q.to_string(), "(-1 - w)*x0");
    }

    fn arb_expr() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            (1u32..20).prop_map(|n| n.to_string()),
            (1u32..9, 2u32..9).prop_map(|(a, b)| format!("{a}/{b}")),
            Just("w".to_string()),
            prop::sample::select(vec!["x0", "x1", "x2", "x3", "y1"]).prop_map(str::to_string),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
                (inner.clone(), 0u32..4).prop_map(|(a, e)| format!("({a})^{e}")),
                inner.prop_map(|a| format!("-({a})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn render_parse_roundtrip(s in arb_expr()) {
            let p = parse_poly(&s, &sym()).unwrap();
            let rendered = p.to_string();
            let q = parse_poly(&rendered, &sym()).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(q.to_string(), rendered);
        }
    }
}
