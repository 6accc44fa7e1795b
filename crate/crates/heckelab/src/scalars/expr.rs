//! The textual scalar grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! exponent := int | '-' int | '(' '-'? int ('/' int)? ')'
//! atom   := int | 'q' | 'z' | 'w' | 'zeta(' int ')' | '(' expr ')'
//! ```
//!
//! Rational exponents are accepted on `q`, `z`, `w` when the denominator
//! divides the context's root denominator `D`.

use super::{FieldContext, FieldOps, Laurent, Mono, Param, Scalar, ScalarError, ONE_MONO, VAR_U, VAR_W, VAR_Z};
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ScalarError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let v: i64 = text[start..i].parse().map_err(|_| ScalarError::Parse {
                pos: start,
                msg: "integer literal too large".into(),
            })?;
            out.push((start, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ScalarError::Parse { pos: i, msg: format!("unexpected character `{}`", c) });
        }
    }
    Ok(out)
}

enum Atom {
    Gen(usize),
    Value(Scalar),
}

struct Parser<'a> {
    ctx: &'a FieldContext,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ScalarError> {
        Err(ScalarError::Parse { pos: self.offset(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ScalarError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected `{}`", c))
        }
    }

    fn int(&mut self) -> Result<i64, ScalarError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => self.err("expected integer"),
        }
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.ctx.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.ctx.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let t = self.unary()?;
                acc = self.ctx.mul(&acc, &t);
            } else if self.eat('/') {
                let t = self.unary()?;
                if t.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                acc = self.ctx.div(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(self.ctx.neg(&v));
        }
        self.power()
    }

    /// Exponent as a reduced fraction `(num, den)`.
    fn exponent(&mut self) -> Result<(i64, i64), ScalarError> {
        if self.eat('(') {
            let neg = self.eat('-');
            let a = self.int()?;
            let b = if self.eat('/') { self.int()? } else { 1 };
            self.expect(')')?;
            if b == 0 {
                return Err(ScalarError::DivisionByZero);
            }
            let g = a.gcd(&b);
            let a = if neg { -a } else { a };
            return Ok((a / g, b / g));
        }
        let neg = self.eat('-');
        let a = self.int()?;
        Ok((if neg { -a } else { a }, 1))
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let atom = self.atom()?;
        let (a, b) = if self.eat('^') { self.exponent()? } else { (1, 1) };
        match atom {
            Atom::Gen(var) => {
                let d = self.ctx.root_denominator() as i64;
                if (d * a) % b != 0 {
                    return Err(ScalarError::ExponentDenominator(b, d));
                }
                let mut m: Mono = ONE_MONO;
                m[var] = (d * a / b) as i32;
                Ok(self.ctx.monomial(m))
            }
            Atom::Value(v) => {
                if b != 1 {
                    return self.err("rational exponents are only allowed on q, z, w");
                }
                if a < 0 && v.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(self.ctx.pow(&v, a))
            }
        }
    }

    fn atom(&mut self) -> Result<Atom, ScalarError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Atom::Value(self.ctx.from_int(v)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(Atom::Value(v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "q" => Ok(Atom::Gen(VAR_U)),
                    "z" if self.ctx.has_param(Param::Z) => Ok(Atom::Gen(VAR_Z)),
                    "w" if self.ctx.has_param(Param::W) => Ok(Atom::Gen(VAR_W)),
                    "zeta" => {
                        self.expect('(')?;
                        let k = self.int()?;
                        self.expect(')')?;
                        if k <= 0 {
                            return self.err("zeta order must be positive");
                        }
                        Ok(Atom::Value(self.ctx.zeta_of_order(k as usize)?))
                    }
                    _ => Err(ScalarError::UnknownSymbol(name)),
                }
            }
            _ => self.err("expected a value"),
        }
    }
}

pub(super) fn parse(ctx: &FieldContext, text: &str) -> Result<Scalar, ScalarError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ScalarError::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { ctx, toks, pos: 0, len: text.len() };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

fn exponent_text(e: i32, d: i32) -> String {
    let g = (e as i64).gcd(&(d as i64)) as i32;
    let (a, b) = (e / g, d / g);
    if b == 1 {
        if a == 1 {
            String::new()
        } else {
            format!("^{}", a)
        }
    } else {
        format!("^({}/{})", a, b)
    }
}

fn mono_text(ctx: &FieldContext, m: &Mono) -> Vec<String> {
    let d = ctx.root_denominator();
    let mut parts = Vec::new();
    for (var, name) in [(VAR_U, "q"), (VAR_Z, "z"), (VAR_W, "w")] {
        if m[var] != 0 {
            parts.push(format!("{}{}", name, exponent_text(m[var], d)));
        }
    }
    parts
}

fn term_text(ctx: &FieldContext, m: &Mono, c: &super::Cyc) -> (bool, String) {
    let field = ctx.field();
    let mono = mono_text(ctx, m);
    let coeffs = c.coefficients();
    let nonzero: Vec<usize> = (0..coeffs.len()).filter(|&j| !coeffs[j].0.is_zero()).collect();
    let (neg, coef) = if nonzero.len() == 1 {
        let j = nonzero[0];
        let neg = coeffs[j].0.is_negative();
        let shown = if neg { field.to_expr(&field.neg(c)) } else { field.to_expr(c) };
        (neg, shown)
    } else {
        (false, format!("({})", field.to_expr(c)))
    };
    let body = if mono.is_empty() {
        coef
    } else if coef == "1" {
        mono.join("*")
    } else {
        format!("{}*{}", coef, mono.join("*"))
    };
    (neg, body)
}

fn poly_text(ctx: &FieldContext, p: &Laurent) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().rev().enumerate() {
        let (neg, body) = term_text(ctx, m, c);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

pub(super) fn render(ctx: &FieldContext, a: &Scalar) -> String {
    let num = poly_text(ctx, a.numerator());
    if a.denominator().is_one(ctx.field()) {
        num
    } else {
        format!("({})/({})", num, poly_text(ctx, a.denominator()))
    }
}
