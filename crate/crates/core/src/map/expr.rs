//! A small expression language for maps: element literals (codes), the
//! variable `x`, the field generator `g`, `+ - * ^`, parentheses and the trace
//! wrappers `Tr(..)` (absolute) and `Tr_t(..)` (onto the subfield of order p^t).
//!
//! Exponents are integer literals and may be negative; `0^e` is 0 for e < 0.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    X,
    Generator,
    Const(u64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
    /// Relative trace onto F_{p^t}; `t = 1` is the absolute trace.
    Trace(u32, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '0'..='9' => {
                let mut v: u64 = 0;
                while let Some(&d) = chars.peek() {
                    let Some(dv) = d.to_digit(10) else { break };
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(dv as u64))
                        .ok_or_else(|| Error::Parse("integer literal overflows".into()))?;
                    chars.next();
                }
                out.push(Tok::Num(v));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut id = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        id.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(id));
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                out.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                out.push(Tok::Star);
            }
            '^' => {
                chars.next();
                out.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                out.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                out.push(Tok::RParen);
            }
            other => return Err(Error::Parse(format!("unexpected character `{}`", other))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(Error::Parse(format!("expected {:?}, found {:?}", want, t))),
            None => Err(Error::Parse(format!("expected {:?}, found end of input", want))),
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let negative = if let Some(Tok::Minus) = self.peek() {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = match self.next() {
                Some(Tok::Num(v)) => i64::try_from(v)
                    .map_err(|_| Error::Parse(format!("exponent {} too large", v)))?,
                other => return Err(Error::Parse(format!("expected exponent, found {:?}", other))),
            };
            return Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(Expr::Const(v)),
            Some(Tok::LParen) => {
                let e = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(id)) => match id.as_str() {
                "x" => Ok(Expr::X),
                "g" => Ok(Expr::Generator),
                "Tr" => self.trace_arg(1),
                _ => match id.strip_prefix("Tr_") {
                    Some(t) => {
                        let t = t
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad trace degree in `{}`", id)))?;
                        self.trace_arg(t)
                    }
                    None => Err(Error::Parse(format!("unknown identifier `{}`", id))),
                },
            },
            Some(t) => Err(Error::Parse(format!("unexpected token {:?}", t))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }

    fn trace_arg(&mut self, t: u32) -> Result<Expr> {
        self.expect(Tok::LParen)?;
        let e = self.sum()?;
        self.expect(Tok::RParen)?;
        Ok(Expr::Trace(t, Box::new(e)))
    }
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr> {
        let toks = lex(s)?;
        if toks.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut p = Parser { toks, pos: 0 };
        let e = p.sum()?;
        if let Some(t) = p.peek() {
            return Err(Error::Parse(format!("trailing input at {:?}", t)));
        }
        Ok(e)
    }

    /// Checks literals against the field order and trace degrees against n.
    pub fn validate(&self, field: &FieldSpec) -> Result<()> {
        match self {
            Expr::X | Expr::Generator => Ok(()),
            Expr::Const(c) => field.check_elem(*c).map(|_| ()),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.validate(field)?;
                b.validate(field)
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.validate(field),
            Expr::Trace(t, a) => {
                if *t == 0 || !field.n().is_multiple_of(*t) {
                    return Err(Error::NotDivisor { what: "trace degree", t: *t as u64, n: field.n() as u64 });
                }
                a.validate(field)
            }
        }
    }

    /// Evaluates at `x`. The expression must have been validated for `field`.
    pub fn eval(&self, field: &FieldSpec, x: Elem) -> Elem {
        match self {
            Expr::X => x,
            Expr::Generator => field.generator(),
            Expr::Const(c) => *c as Elem,
            Expr::Add(a, b) => field.add(a.eval(field, x), b.eval(field, x)),
            Expr::Sub(a, b) => field.sub(a.eval(field, x), b.eval(field, x)),
            Expr::Mul(a, b) => field.mul(a.eval(field, x), b.eval(field, x)),
            Expr::Neg(a) => field.neg(a.eval(field, x)),
            Expr::Pow(a, e) => field.pow_signed(a.eval(field, x), *e),
            Expr::Trace(t, a) => {
                let v = a.eval(field, x);
                if *t == 1 {
                    field.trace(v)
                } else {
                    field.trace_relative(v, *t).expect("validated trace degree")
                }
            }
        }
    }
}
