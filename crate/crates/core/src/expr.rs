//! Text grammar, parser, printer, and evaluator for q-series expressions,
//! so identities and congruence targets can be supplied on the command line
//! or in corpus files.
//!
//! Grammar (standard precedence, `^` > unary `-` > `*` `/` > `+` `-`,
//! left-associative binaries):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] digits)?
//! atom   := digits | 'q' | 'f_' digits | name '(' ['-'] 'q' ['^' digits] ')'
//!         | 'g3' '(' digits ',' digits ')' | '(' expr ')'
//! name   := 'phi' | 'psi' | 'omega' | 'nu' | 'xi' | 'mtf' | 'F'
//! ```
//!
//! Implicit multiplication is rejected; `f_12` is `f` at scale twelve.

use std::fmt;

use thiserror::Error;

use crate::factory::{self, FactoryError};
use crate::series::{Ring, Series, SeriesError, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Factory(#[from] FactoryError),
}

/// Named series callable from the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesName {
    Phi,
    Psi,
    Omega,
    Nu,
    Xi,
    /// Ramanujan's third-order mock theta function `f(q)`.
    Mtf,
    /// The theta quotient `F(q)`.
    CapF,
}

impl SeriesName {
    fn as_str(self) -> &'static str {
        match self {
            SeriesName::Phi => "phi",
            SeriesName::Psi => "psi",
            SeriesName::Omega => "omega",
            SeriesName::Nu => "nu",
            SeriesName::Xi => "xi",
            SeriesName::Mtf => "mtf",
            SeriesName::CapF => "F",
        }
    }
}

/// Abstract syntax tree of a q-series expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Q,
    /// `f_k`
    Eta(usize),
    /// `name(sign * q^power)`
    Call {
        name: SeriesName,
        sign: Sign,
        power: usize,
    },
    /// `g3(alpha, beta)`
    G3 { alpha: usize, beta: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Q,
    Eta(usize),
    Name(SeriesName),
    G3,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset,
            message: message.into(),
        })
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            let start = self.pos;
            match c {
                b' ' | b'\t' => {
                    self.pos += 1;
                }
                b'+' => self.push(&mut out, Tok::Plus),
                b'-' => self.push(&mut out, Tok::Minus),
                b'*' => self.push(&mut out, Tok::Star),
                b'/' => self.push(&mut out, Tok::Slash),
                b'^' => self.push(&mut out, Tok::Caret),
                b'(' => self.push(&mut out, Tok::LParen),
                b')' => self.push(&mut out, Tok::RParen),
                b',' => self.push(&mut out, Tok::Comma),
                b'0'..=b'9' => {
                    let n = self.read_number()?;
                    out.push((start, Tok::Int(n)));
                }
                c if c.is_ascii_alphabetic() => {
                    let tok = self.read_word()?;
                    out.push((start, tok));
                }
                other => {
                    return self.err(start, format!("unexpected character '{}'", other as char))
                }
            }
        }
        Ok(out)
    }

    fn push(&mut self, out: &mut Vec<(usize, Tok)>, tok: Tok) {
        out.push((self.pos, tok));
        self.pos += 1;
    }

    fn read_number(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse()
            .map_err(|_| ParseError {
                offset: start,
                message: format!("integer literal '{text}' out of range"),
            })
    }

    fn read_word(&mut self) -> Result<Tok, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        // `f_<digits>` is a single eta-symbol token.
        if word == "f" && self.pos < self.src.len() && self.src[self.pos] == b'_' {
            self.pos += 1;
            if self.pos >= self.src.len() || !self.src[self.pos].is_ascii_digit() {
                return self.err(self.pos, "expected digits after 'f_'");
            }
            let k = self.read_number()?;
            if k == 0 {
                return self.err(start, "invalid eta scale: f_0");
            }
            return Ok(Tok::Eta(k as usize));
        }
        match word {
            "q" => Ok(Tok::Q),
            "phi" => Ok(Tok::Name(SeriesName::Phi)),
            "psi" => Ok(Tok::Name(SeriesName::Psi)),
            "omega" => Ok(Tok::Name(SeriesName::Omega)),
            "nu" => Ok(Tok::Name(SeriesName::Nu)),
            "xi" => Ok(Tok::Name(SeriesName::Xi)),
            "mtf" => Ok(Tok::Name(SeriesName::Mtf)),
            "F" => Ok(Tok::Name(SeriesName::CapF)),
            "g3" => Ok(Tok::G3),
            other => self.err(start, format!("unknown name '{other}'")),
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let negative = matches!(self.peek(), Some(Tok::Minus));
            if negative {
                self.pos += 1;
            }
            let e = match self.next() {
                Some(Tok::Int(n)) => n as i64,
                _ => return self.err("expected integer exponent after '^'"),
            };
            return Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Q) => Ok(Expr::Q),
            Some(Tok::Eta(k)) => Ok(Expr::Eta(k)),
            Some(Tok::Name(name)) => self.call_args(name),
            Some(Tok::G3) => {
                self.expect(Tok::LParen, "'(' after g3")?;
                let alpha = match self.next() {
                    Some(Tok::Int(n)) => n as usize,
                    _ => return self.err("expected integer alpha in g3(alpha,beta)"),
                };
                self.expect(Tok::Comma, "',' in g3(alpha,beta)")?;
                let beta = match self.next() {
                    Some(Tok::Int(n)) => n as usize,
                    _ => return self.err("expected integer beta in g3(alpha,beta)"),
                };
                self.expect(Tok::RParen, "')'")?;
                if alpha == 0 || alpha >= beta {
                    self.pos -= 1; // point at the closing paren
                    return self.err(format!("g3 requires 0 < alpha < beta, got ({alpha},{beta})"));
                }
                Ok(Expr::G3 { alpha, beta })
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => self.err("expected an expression"),
        }
    }

    fn call_args(&mut self, name: SeriesName) -> Result<Expr, ParseError> {
        self.expect(Tok::LParen, "'(' after series name")?;
        let sign = if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            Sign::Minus
        } else {
            Sign::Plus
        };
        self.expect(Tok::Q, "argument of the form q, -q, q^k, or -q^k")?;
        let power = if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Int(n)) if n >= 1 => n as usize,
                _ => return self.err("expected positive integer power in series argument"),
            }
        } else {
            1
        };
        self.expect(Tok::RParen, "')'")?;
        Ok(Expr::Call { name, sign, power })
    }
}

/// Parse an expression string.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = Lexer {
        src: text.as_bytes(),
        pos: 0,
    }
    .tokens()?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input after expression");
    }
    Ok(e)
}

// Precedence levels used by the canonical printer.
const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => PREC_ADD,
        Expr::Mul(..) | Expr::Div(..) => PREC_MUL,
        Expr::Neg(..) => PREC_NEG,
        Expr::Pow(..) => PREC_POW,
        _ => PREC_ATOM,
    }
}

fn print_into(e: &Expr, min_prec: u8, out: &mut String) {
    let needs_parens = prec(e) < min_prec;
    if needs_parens {
        out.push('(');
    }
    match e {
        Expr::Int(n) => out.push_str(&n.to_string()),
        Expr::Q => out.push('q'),
        Expr::Eta(k) => {
            out.push_str("f_");
            out.push_str(&k.to_string());
        }
        Expr::Call { name, sign, power } => {
            out.push_str(name.as_str());
            out.push('(');
            if *sign == Sign::Minus {
                out.push('-');
            }
            out.push('q');
            if *power > 1 {
                out.push('^');
                out.push_str(&power.to_string());
            }
            out.push(')');
        }
        Expr::G3 { alpha, beta } => {
            out.push_str(&format!("g3({alpha},{beta})"));
        }
        Expr::Neg(inner) => {
            out.push('-');
            print_into(inner, PREC_NEG, out);
        }
        Expr::Add(a, b) => {
            print_into(a, PREC_ADD, out);
            out.push_str(" + ");
            print_into(b, PREC_ADD + 1, out);
        }
        Expr::Sub(a, b) => {
            print_into(a, PREC_ADD, out);
            out.push_str(" - ");
            print_into(b, PREC_ADD + 1, out);
        }
        Expr::Mul(a, b) => {
            print_into(a, PREC_MUL, out);
            out.push('*');
            print_into(b, PREC_MUL + 1, out);
        }
        Expr::Div(a, b) => {
            print_into(a, PREC_MUL, out);
            out.push('/');
            print_into(b, PREC_MUL + 1, out);
        }
        Expr::Pow(base, e) => {
            print_into(base, PREC_ATOM, out);
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
    if needs_parens {
        out.push(')');
    }
}

/// Canonical text form; `parse(print(e))` returns a structurally equal tree.
pub fn print(e: &Expr) -> String {
    let mut out = String::new();
    print_into(e, 0, &mut out);
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

/// Evaluate an expression to a truncated series of order `n` over `ring`.
pub fn evaluate<R: Ring>(ring: &R, e: &Expr, n: usize) -> Result<Series<R>, EvalError> {
    match e {
        Expr::Int(v) => {
            let mut s = Series::zero(ring, n);
            *s.coeff_mut(0) = ring.from_i64(*v as i64);
            Ok(s)
        }
        Expr::Q => Ok(Series::monomial(ring, n, 1, 1)),
        Expr::Eta(k) => Ok(factory::euler_product(ring, *k, n)),
        Expr::Call { name, sign, power } => {
            let base_order = n / power;
            let base = match name {
                SeriesName::Phi => factory::phi(ring, base_order),
                SeriesName::Psi => factory::psi(ring, base_order),
                SeriesName::Omega => factory::mock_omega(ring, base_order),
                SeriesName::Nu => factory::mock_nu(ring, base_order),
                SeriesName::Xi => factory::pxi(ring, base_order),
                SeriesName::Mtf => factory::mock_f3(ring, base_order),
                SeriesName::CapF => factory::capital_f(ring, base_order),
            };
            Ok(base.upsample(*power, *sign, n))
        }
        Expr::G3 { alpha, beta } => Ok(factory::g3(ring, *alpha, *beta, n)?),
        Expr::Neg(inner) => Ok(evaluate(ring, inner, n)?.neg()),
        Expr::Add(a, b) => Ok(evaluate(ring, a, n)?.add(&evaluate(ring, b, n)?)?),
        Expr::Sub(a, b) => Ok(evaluate(ring, a, n)?.sub(&evaluate(ring, b, n)?)?),
        Expr::Mul(a, b) => Ok(evaluate(ring, a, n)?.mul(&evaluate(ring, b, n)?)?),
        Expr::Div(a, b) => {
            let denom = evaluate(ring, b, n)?.invert()?;
            Ok(evaluate(ring, a, n)?.mul(&denom)?)
        }
        Expr::Pow(base, exp) => Ok(evaluate(ring, base, n)?.pow(*exp)?),
    }
}

/// One corpus check: `LHS == RHS [order N] [mod m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusCheck {
    pub lhs: Expr,
    pub rhs: Expr,
    pub order: Option<usize>,
    pub modulus: Option<u64>,
}

/// Parse one corpus line; returns `None` for blank lines and `#` comments.
pub fn parse_corpus_line(line: &str) -> Result<Option<CorpusCheck>, ParseError> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let eq_at = trimmed.find("==").ok_or_else(|| ParseError {
        offset: 0,
        message: "corpus line must contain '=='".into(),
    })?;
    let lhs_text = &trimmed[..eq_at];
    let mut rest = trimmed[eq_at + 2..].trim();

    let mut order = None;
    let mut modulus = None;
    while let Some(open) = rest.rfind('[') {
        let clause = rest[open..].trim();
        let inner = clause
            .strip_prefix('[')
            .and_then(|c| c.strip_suffix(']'))
            .ok_or_else(|| ParseError {
                offset: open,
                message: "malformed '[...]' clause".into(),
            })?;
        let mut parts = inner.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some("order"), Some(v), None) => {
                order = Some(v.parse().map_err(|_| ParseError {
                    offset: open,
                    message: format!("bad order '{v}'"),
                })?);
            }
            (Some("mod"), Some(v), None) => {
                modulus = Some(v.parse().map_err(|_| ParseError {
                    offset: open,
                    message: format!("bad modulus '{v}'"),
                })?);
            }
            _ => {
                return Err(ParseError {
                    offset: open,
                    message: format!("unrecognized clause '[{inner}]'"),
                })
            }
        }
        rest = rest[..open].trim_end();
    }

    Ok(Some(CorpusCheck {
        lhs: parse(lhs_text)?,
        rhs: parse(rest)?,
        order,
        modulus,
    }))
}
