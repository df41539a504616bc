//! Recursive-descent parser for inequalities in one complex unknown `Z`.
//!
//! ```text
//! problem    := inequality ('&&' inequality)*
//! inequality := expr ('>=' | '<=') expr
//! expr       := term (('+' | '-') term)*
//! term       := unary (('*' | '/') unary)*
//! unary      := '-' unary | factor
//! factor     := primary ('^' INT)?
//! primary    := NUMBER | NUMBER 'i' | 'i' | 'Z' | '(' expr ')'
//! ```
//!
//! Unary minus binds looser than `^`, so `-Z^2` is `-(Z^2)`.
//!
//! Literals are folded as they are parsed: `-3` becomes the literal `-3`
//! and a real literal followed by `+`/`-` and an imaginary literal becomes
//! one complex literal, so `1+2i` and `(1+2i)` both produce
//! `Literal(1+2i)`. [`fmt::Display`] prints trees back in a form that
//! re-parses to the same tree.

use std::fmt;

use crate::lexorder::{Complex, LexError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("expression mixes variable `{name}` (byte {offset}) with Z; only Z is allowed")]
    MultipleVariables { offset: usize, name: String },
    #[error("unknown variable `{name}` at byte {offset}; the unknown must be named Z")]
    UnknownVariable { offset: usize, name: String },
    #[error("exponent at byte {offset} must be a positive integer literal")]
    NonIntegerExponent { offset: usize },
    #[error("expected a constant but found the variable Z")]
    NotConstant,
    #[error("constant expression divides by zero")]
    DivisionByZero,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Literal(Complex),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn eval(&self, z: Complex) -> Result<Complex, LexError> {
        Ok(match self {
            Expr::Literal(c) => *c,
            Expr::Var => z,
            Expr::Neg(e) => -e.eval(z)?,
            Expr::Add(l, r) => l.eval(z)? + r.eval(z)?,
            Expr::Sub(l, r) => l.eval(z)? - r.eval(z)?,
            Expr::Mul(l, r) => l.eval(z)? * r.eval(z)?,
            Expr::Div(l, r) => l.eval(z)?.checked_div(r.eval(z)?)?,
            Expr::Pow(b, n) => b.eval(z)?.powu(*n),
        })
    }

    pub fn has_var(&self) -> bool {
        match self {
            Expr::Literal(_) => false,
            Expr::Var => true,
            Expr::Neg(e) | Expr::Pow(e, _) => e.has_var(),
            Expr::Add(l, r) | Expr::Sub(l, r) | Expr::Mul(l, r) | Expr::Div(l, r) => l.has_var() || r.has_var(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Literal(c) if literal_prints_negative(*c) => 3,
            Expr::Literal(_) | Expr::Var => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            f.write_str("(")?;
            self.write_bare(f)?;
            f.write_str(")")
        } else {
            self.write_bare(f)
        }
    }

    fn write_bare(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Literal(c) => write_literal(f, *c),
            Expr::Var => f.write_str("Z"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.write_at(f, 3)
            }
            Expr::Add(l, r) => binary(f, l, " + ", r, 1, 2),
            Expr::Sub(l, r) => binary(f, l, " - ", r, 1, 2),
            Expr::Mul(l, r) => binary(f, l, " * ", r, 2, 3),
            Expr::Div(l, r) => binary(f, l, " / ", r, 2, 3),
            Expr::Pow(b, n) => {
                b.write_at(f, 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

fn binary(f: &mut fmt::Formatter<'_>, l: &Expr, op: &str, r: &Expr, lp: u8, rp: u8) -> fmt::Result {
    l.write_at(f, lp)?;
    f.write_str(op)?;
    r.write_at(f, rp)
}

fn literal_prints_negative(c: Complex) -> bool {
    match (c.re == 0.0, c.im == 0.0) {
        (_, true) => c.re.is_sign_negative(),
        (true, false) => c.im < 0.0,
        (false, false) => false,
    }
}

fn write_literal(f: &mut fmt::Formatter<'_>, c: Complex) -> fmt::Result {
    match (c.re == 0.0, c.im == 0.0) {
        (_, true) => write!(f, "{}", c.re),
        (true, false) if c.im == 1.0 => f.write_str("i"),
        (true, false) if c.im == -1.0 => f.write_str("-i"),
        (true, false) => write!(f, "{}i", c.im),
        (false, false) => write!(f, "({c})"),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
}

/// One inequality, stored as `lhs >= rhs` whatever the written relation.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub lhs: Expr,
    pub rhs: Expr,
    pub written: Relation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SourceExpr {
    pub text: String,
    pub constraints: Vec<Constraint>,
}

impl SourceExpr {
    /// Structural equality of the parsed constraints, ignoring source text
    /// and which relation was written.
    pub fn same_ast(&self, other: &SourceExpr) -> bool {
        self.constraints.len() == other.constraints.len()
            && self.constraints.iter().zip(&other.constraints).all(|(a, b)| a.lhs == b.lhs && a.rhs == b.rhs)
    }
}

impl fmt::Display for SourceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.constraints.iter().enumerate() {
            if i > 0 {
                f.write_str(" && ")?;
            }
            write!(f, "{} >= {}", c.lhs, c.rhs)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    /// Numeric literal; the flag records an integer spelling (no `.`/`e`).
    Num(f64, bool),
    Imag(f64),
    Unit,
    Var,
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Ge,
    Le,
    And,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { offset, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        let simple = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, offset: start });
            i += 1;
            continue;
        }
        let two = bytes.get(i..i + 2);
        let pair = match two {
            Some(b">=") => Some(Tok::Ge),
            Some(b"<=") => Some(Tok::Le),
            Some(b"&&") => Some(Tok::And),
            _ => None,
        };
        if let Some(tok) = pair {
            out.push(Token { tok, offset: start });
            i += 2;
            continue;
        }
        if b.is_ascii_digit() || b == b'.' {
            let (value, integral, end) = lex_number(text, i)?;
            i = end;
            let imag = bytes.get(i) == Some(&b'i') && !bytes.get(i + 1).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_');
            let tok = if imag {
                i += 1;
                Tok::Imag(value)
            } else {
                Tok::Num(value, integral)
            };
            if bytes.get(i).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_' || *c == b'.') {
                return Err(syntax(i, "a number must be followed by an operator; write `2*Z`, not `2Z`"));
            }
            out.push(Token { tok, offset: start });
            continue;
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            let tok = match word {
                "i" => Tok::Unit,
                "z" | "Z" => Tok::Var,
                _ => Tok::Ident(word.to_string()),
            };
            out.push(Token { tok, offset: start });
            continue;
        }
        let ch = text[i..].chars().next().unwrap_or('?');
        let message = match ch {
            '>' | '<' => "strict inequalities are not supported; use >= or <=".to_string(),
            _ => format!("unexpected character `{ch}`"),
        };
        return Err(syntax(start, message));
    }
    out.push(Token { tok: Tok::End, offset: text.len() });
    Ok(out)
}

fn lex_number(text: &str, start: usize) -> Result<(f64, bool, usize), ParseError> {
    let bytes = text.as_bytes();
    let mut i = start;
    let mut integral = true;
    let digits = |i: &mut usize| {
        let s = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        *i - s
    };
    let mut count = digits(&mut i);
    if bytes.get(i) == Some(&b'.') {
        integral = false;
        i += 1;
        count += digits(&mut i);
    }
    if count == 0 {
        return Err(syntax(start, "expected digits"));
    }
    if matches!(bytes.get(i), Some(b'e' | b'E')) {
        let mut j = i + 1;
        if matches!(bytes.get(j), Some(b'+' | b'-')) {
            j += 1;
        }
        if bytes.get(j).is_some_and(u8::is_ascii_digit) {
            integral = false;
            i = j;
            digits(&mut i);
        }
    }
    let value: f64 = text[start..i].parse().map_err(|_| syntax(start, "malformed number"))?;
    if !value.is_finite() {
        return Err(syntax(start, "number out of range"));
    }
    Ok((value, integral, i))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    saw_var: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].offset
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn problem(&mut self) -> Result<Vec<Constraint>, ParseError> {
        let mut constraints = vec![self.inequality()?];
        while *self.peek() == Tok::And {
            self.bump();
            constraints.push(self.inequality()?);
        }
        self.expect_end()?;
        Ok(constraints)
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            t => Err(syntax(self.offset(), format!("unexpected {}", describe(t)))),
        }
    }

    fn inequality(&mut self) -> Result<Constraint, ParseError> {
        let left = self.expr()?;
        let rel = match self.peek() {
            Tok::Ge => Relation::Ge,
            Tok::Le => Relation::Le,
            t => return Err(syntax(self.offset(), format!("expected `>=` or `<=`, found {}", describe(t)))),
        };
        self.bump();
        let right = self.expr()?;
        Ok(match rel {
            Relation::Ge => Constraint { lhs: left, rhs: right, written: rel },
            Relation::Le => Constraint { lhs: right, rhs: left, written: rel },
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let sub = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = fold_sum(lhs, rhs, sub);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let div = match self.peek() {
                Tok::Star => false,
                Tok::Slash => true,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = if div {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            };
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(match self.unary()? {
                Expr::Literal(c) => Expr::Literal(-c),
                e => Expr::Neg(Box::new(e)),
            });
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump().tok {
            Tok::Num(v, true) if v >= 1.0 && v <= f64::from(u32::MAX) => Ok(Expr::Pow(Box::new(base), v as u32)),
            Tok::Num(..) | Tok::Minus | Tok::Imag(_) | Tok::LParen => Err(ParseError::NonIntegerExponent { offset: at }),
            t => Err(syntax(at, format!("expected exponent, found {}", describe(&t)))),
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.bump().tok {
            Tok::Num(v, _) => Ok(Expr::Literal(Complex::real(v))),
            Tok::Imag(v) => Ok(Expr::Literal(Complex::new(0.0, v))),
            Tok::Unit => Ok(Expr::Literal(Complex::I)),
            Tok::Var => {
                self.saw_var = true;
                Ok(Expr::Var)
            }
            Tok::Ident(name) => {
                let z_anywhere = self.saw_var || self.tokens.iter().any(|t| t.tok == Tok::Var);
                Err(if z_anywhere {
                    ParseError::MultipleVariables { offset: at, name }
                } else {
                    ParseError::UnknownVariable { offset: at, name }
                })
            }
            Tok::LParen => {
                let inner = self.expr()?;
                match self.peek() {
                    Tok::RParen => {
                        self.bump();
                        Ok(inner)
                    }
                    t => Err(syntax(self.offset(), format!("expected `)`, found {}", describe(t)))),
                }
            }
            t => Err(syntax(at, format!("expected a number, `i`, `Z` or `(`, found {}", describe(&t)))),
        }
    }
}

// `a ± bi` with a real literal on the left and an imaginary one on the
// right is a single complex literal.
fn fold_sum(lhs: Expr, rhs: Expr, sub: bool) -> Expr {
    match (&lhs, &rhs) {
        (Expr::Literal(a), Expr::Literal(b)) if a.im == 0.0 && b.re == 0.0 => {
            let im = if sub { -b.im } else { b.im };
            Expr::Literal(Complex::new(a.re, im))
        }
        _ if sub => Expr::Sub(Box::new(lhs), Box::new(rhs)),
        _ => Expr::Add(Box::new(lhs), Box::new(rhs)),
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(v, _) => format!("number `{v}`"),
        Tok::Imag(v) => format!("number `{v}i`"),
        Tok::Unit => "`i`".into(),
        Tok::Var => "`Z`".into(),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Ge => "`>=`".into(),
        Tok::Le => "`<=`".into(),
        Tok::And => "`&&`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses one or more inequalities joined by `&&`.
pub fn parse(text: &str) -> Result<SourceExpr, ParseError> {
    let mut p = Parser { tokens: lex(text)?, pos: 0, saw_var: false };
    let constraints = p.problem()?;
    Ok(SourceExpr { text: text.to_string(), constraints })
}

/// Parses a bare expression (no relation).
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { tokens: lex(text)?, pos: 0, saw_var: false };
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses and evaluates a constant such as `1-2i`, `i` or `(3+4i)/5`.
pub fn parse_complex(text: &str) -> Result<Complex, ParseError> {
    let e = parse_expr(text)?;
    if e.has_var() {
        return Err(ParseError::NotConstant);
    }
    e.eval(Complex::ZERO).map_err(|_| ParseError::DivisionByZero)
}
