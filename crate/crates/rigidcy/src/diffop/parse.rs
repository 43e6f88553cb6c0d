//! Text form of operators: parsing and printing.
//!
//! The grammar is sums of products of powers over the atoms `theta`, `z`,
//! integers, field scalars, and parenthesised subexpressions. Every value is
//! an operator; `/` divides by a factor that must have collapsed to a
//! scalar, which makes rational coefficients like `1/2` come out naturally.
//! The printer lists layers in ascending powers of z and parsing its output
//! reproduces the operator exactly.

use super::{DiffOp, OpError};
use crate::exactalg::{CycloNum, Field, ParamElem, Poly, Rat};
use std::fmt;

/// Field-specific identifiers the parser may resolve to scalars.
pub trait OpScalar: Field {
    fn parse_ident(_name: &str) -> Option<Self> {
        None
    }
}

impl OpScalar for Rat {}

impl OpScalar for ParamElem {
    fn parse_ident(name: &str) -> Option<Self> {
        match name {
            "a" => Some(ParamElem::a()),
            "b" => Some(ParamElem::b()),
            _ => None,
        }
    }
}

impl OpScalar for CycloNum {
    fn parse_ident(name: &str) -> Option<Self> {
        if name == "i" {
            return Some(CycloNum::i());
        }
        let n: u32 = name.strip_prefix('z')?.parse().ok()?;
        (n >= 1).then(|| CycloNum::zeta(n))
    }
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LPar,
    RPar,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, OpError> {
    let mut out = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                it.next();
            }
            '+' => {
                it.next();
                out.push(Tok::Plus);
            }
            '-' => {
                it.next();
                out.push(Tok::Minus);
            }
            '*' => {
                it.next();
                out.push(Tok::Star);
            }
            '/' => {
                it.next();
                out.push(Tok::Slash);
            }
            '^' => {
                it.next();
                out.push(Tok::Caret);
            }
            '(' => {
                it.next();
                out.push(Tok::LPar);
            }
            ')' => {
                it.next();
                out.push(Tok::RPar);
            }
            '0'..='9' => {
                let mut n = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                let v: i64 = n
                    .parse()
                    .map_err(|_| OpError::Parse(format!("integer out of range: {n}")))?;
                out.push(Tok::Int(v));
            }
            c if c.is_ascii_alphabetic() => {
                let mut id = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() {
                        id.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(id));
            }
            other => return Err(OpError::Parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

struct Parser<'a, F: OpScalar> {
    toks: &'a [Tok],
    pos: usize,
    _f: std::marker::PhantomData<F>,
}

impl<F: OpScalar> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += t.is_some() as usize;
        t
    }

    fn expr(&mut self) -> Result<DiffOp<F>, OpError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<DiffOp<F>, OpError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.factor()?;
                    let s = as_scalar(&rhs).ok_or_else(|| {
                        OpError::Parse("division is only defined by scalars".into())
                    })?;
                    let inv = s
                        .inv()
                        .ok_or_else(|| OpError::Parse("division by zero".into()))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<DiffOp<F>, OpError> {
        let mut base = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            self.bump();
            match self.bump() {
                Some(Tok::Int(e)) if e >= 0 => base = base.pow(e as usize),
                _ => return Err(OpError::Parse("exponent must be a nonnegative integer".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<DiffOp<F>, OpError> {
        match self.bump() {
            Some(Tok::Int(v)) => Ok(DiffOp::scalar(F::from_int(v))),
            Some(Tok::Ident(id)) => match id.as_str() {
                "theta" => Ok(DiffOp::theta()),
                "z" => Ok(DiffOp::z()),
                other => F::parse_ident(other)
                    .map(DiffOp::scalar)
                    .ok_or_else(|| OpError::Parse(format!("unknown symbol '{other}'"))),
            },
            Some(Tok::Minus) => Ok(self.atom()?.neg()),
            Some(Tok::LPar) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RPar) => Ok(inner),
                    _ => Err(OpError::Parse("missing closing parenthesis".into())),
                }
            }
            other => Err(OpError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// The scalar value of an operator that is one, if it is one.
fn as_scalar<F: Field>(l: &DiffOp<F>) -> Option<F> {
    if l.is_zero() {
        return Some(F::zero());
    }
    if l.z_deg() == 0 && l.deg() == 0 {
        Some(l.layer(0).coeff(0))
    } else {
        None
    }
}

/// Parse the text form of an operator.
pub fn parse_op<F: OpScalar>(s: &str) -> Result<DiffOp<F>, OpError> {
    let toks = tokenize(s)?;
    let mut p = Parser::<F> {
        toks: &toks,
        pos: 0,
        _f: std::marker::PhantomData,
    };
    let op = p.expr()?;
    if p.pos != toks.len() {
        return Err(OpError::Parse(format!(
            "trailing input at token {}",
            p.pos + 1
        )));
    }
    Ok(op)
}

/// One printed layer: the sign it contributes and its rendering.
fn layer_term<F: Field>(i: usize, p: &Poly<F>) -> (bool, String) {
    let neg = p.neg();
    let disp = p.display_with("theta");
    let negdisp = neg.display_with("theta");
    // print through the negation when that removes every minus sign
    let (minus, q, body) = if disp.contains('-') && !negdisp.contains('-') {
        (true, neg, negdisp)
    } else {
        (false, p.clone(), disp)
    };
    if i == 0 {
        let body = if minus { format!("-{body}") } else { body };
        return (false, body);
    }
    let base = if i == 1 {
        "z".to_string()
    } else {
        format!("z^{i}")
    };
    let body = if q == Poly::one() {
        base
    } else if body.contains(['+', '-']) {
        format!("{base}*({body})")
    } else {
        format!("{body}*{base}")
    };
    (minus, body)
}

impl<F: Field> fmt::Display for DiffOp<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, p) in self.layers().iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let (minus, body) = layer_term(i, p);
            if out.is_empty() {
                if minus {
                    out.push('-');
                }
            } else {
                out.push_str(if minus { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}
