//! Polynomial expression parser, system files, and canonical rendering.
//!
//! Expressions use integers, rationals `p/q`, variable names and
//! `+ - * ^ ( )`. A `*` is required between factors, except next to a
//! parenthesised group: `2(z+1)` and `(z+1)(z-1)` are fine, `2z` and `x y`
//! are not.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::mpoly::{MPoly, Monomial, MonomialOrder, OrderKind};
use crate::upoly::Rational;

const MAX_EXPONENT: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str, line0: usize, col0: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (line0, col0);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, cl) = (line, col);
        let err = |msg: String| ParseError {
            line: l,
            col: cl,
            message: msg,
        };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned {
                tok,
                line: l,
                col: cl,
            });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            let mut value = Rational::from_integer(num.parse::<BigInt>().expect("digits"));
            if i < chars.len() && chars[i] == '/' {
                let dstart = i + 1;
                let mut j = dstart;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == dstart {
                    return Err(ParseError {
                        line: l,
                        col: cl + (i - start) + 1,
                        message: "expected a denominator after '/'".into(),
                    });
                }
                let den: BigInt = chars[dstart..j]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .expect("digits");
                if den.is_zero() {
                    return Err(err("zero denominator".into()));
                }
                value /= Rational::from_integer(den);
                i = j;
            }
            if i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') {
                return Err(ParseError {
                    line: l,
                    col: cl + (i - start),
                    message: "missing '*' between number and variable".into(),
                });
            }
            col += i - start;
            out.push(Spanned {
                tok: Tok::Num(value),
                line: l,
                col: cl,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l,
                col: cl,
            });
            continue;
        }
        return Err(err(format!("unexpected character '{c}'")));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a [String],
    order: &'a MonomialOrder,
    end: (usize, usize),
}

type PResult<T> = Result<T, ParseError>;

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .unwrap_or(self.end)
    }

    fn error<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let (line, col) = self.here();
        Err(ParseError {
            line,
            col,
            message: msg.into(),
        })
    }

    fn expr(&mut self) -> PResult<MPoly<Rational>> {
        let mut acc = MPoly::zero(self.order);
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> PResult<MPoly<Rational>> {
        let (mut acc, mut closed) = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let (f, c) = self.factor()?;
                    acc = acc.mul(&f);
                    closed = c;
                }
                Some(Tok::LParen) => {
                    let (f, c) = self.factor()?;
                    acc = acc.mul(&f);
                    closed = c;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) if closed => {
                    let (f, c) = self.factor()?;
                    acc = acc.mul(&f);
                    closed = c;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) => {
                    return self.error("missing '*' between factors");
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Returns the factor and whether it ended with a closing parenthesis
    /// (which permits juxtaposition with the next factor).
    fn factor(&mut self) -> PResult<(MPoly<Rational>, bool)> {
        let (base, closed) = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) if n.is_integer() => {
                    let e = n.to_integer();
                    if e > BigInt::from(MAX_EXPONENT) {
                        return self.error(format!("exponent larger than {MAX_EXPONENT}"));
                    }
                    self.pos += 1;
                    let e: u32 = e.try_into().expect("bounded exponent");
                    let mut acc = MPoly::constant(self.order, Rational::one());
                    for _ in 0..e {
                        acc = acc.mul(&base);
                    }
                    Ok((acc, false))
                }
                Some(Tok::Minus) => self.error("negative exponent"),
                _ => self.error("expected a non-negative integer exponent"),
            }
        } else {
            Ok((base, closed))
        }
    }

    fn atom(&mut self) -> PResult<(MPoly<Rational>, bool)> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok((MPoly::constant(self.order, n), false))
            }
            Some(Tok::Ident(name)) => {
                let Some(i) = self.vars.iter().position(|v| *v == name) else {
                    return self.error(format!("unknown variable '{name}'"));
                };
                self.pos += 1;
                Ok((
                    MPoly::term(
                        self.order,
                        Rational::one(),
                        Monomial::var(self.vars.len(), i),
                    ),
                    false,
                ))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.error("expected ')'");
                }
                self.pos += 1;
                Ok((e, true))
            }
            Some(Tok::Minus) => {
                // allow a sign right after '*' or '(' juxtaposition, e.g. 2*-x
                self.pos += 1;
                let (a, c) = self.factor()?;
                Ok((a.neg(), c))
            }
            Some(_) => self.error("expected a number, variable or '('"),
            None => self.error("unexpected end of expression"),
        }
    }
}

fn parse_at(
    text: &str,
    vars: &[String],
    order: &MonomialOrder,
    line: usize,
    col: usize,
) -> Result<MPoly<Rational>, ParseError> {
    let toks = lex(text, line, col)?;
    let end = end_position(text, line, col);
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        order,
        end,
    };
    if p.peek().is_none() {
        return p.error("empty expression");
    }
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

fn end_position(text: &str, line: usize, col: usize) -> (usize, usize) {
    let (mut l, mut c) = (line, col);
    for ch in text.chars() {
        if ch == '\n' {
            l += 1;
            c = 1;
        } else {
            c += 1;
        }
    }
    (l, c)
}

/// Parse a polynomial over the given variables (index order = `vars` order).
pub fn parse_poly(
    text: &str,
    vars: &[String],
    order: &MonomialOrder,
) -> Result<MPoly<Rational>, ParseError> {
    assert_eq!(vars.len(), order.nvars());
    parse_at(text, vars, order, 1, 1)
}

/// Canonical text: terms in decreasing order, `coeff*x^a*y^b`.
pub fn render(f: &MPoly<Rational>, vars: &[String]) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (m, c) in f.terms() {
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = render_monomial(m, vars);
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    out
}

pub fn render_monomial(m: &Monomial, vars: &[String]) -> String {
    let parts: Vec<String> = m
        .exps()
        .iter()
        .zip(vars)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| {
            if *e == 1 {
                v.clone()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

/// Scale to coprime integer coefficients with a positive leading coefficient.
pub fn integer_normalize(f: &MPoly<Rational>) -> MPoly<Rational> {
    let Some(lc) = f.lc() else {
        return f.clone();
    };
    let den = f
        .terms()
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let num = f.terms().iter().fold(BigInt::zero(), |acc, (_, c)| {
        acc.gcd(&(c.numer() * &den / c.denom()))
    });
    let mut s = Rational::new(den, num);
    if lc.is_negative() {
        s = -s;
    }
    f.map_coeffs(|c| c * &s)
}

/// A parsed polynomial system.
#[derive(Debug, Clone)]
pub struct SystemFile {
    /// Variables from largest to smallest; the last one is the eliminant variable.
    pub variables: Vec<String>,
    pub eliminant: String,
    pub order: OrderKind,
    pub generator_text: Vec<String>,
    pub generators: Vec<MPoly<Rational>>,
}

impl SystemFile {
    /// Lex/grlex/grevlex order over all variables with the given kind.
    pub fn full_order(&self) -> MonomialOrder {
        MonomialOrder::new(self.order, self.variables.len())
    }

    pub fn tilde_order(&self) -> MonomialOrder {
        MonomialOrder::new(self.order, self.variables.len() - 1)
    }

    pub fn with_order(&self, kind: OrderKind) -> SystemFile {
        let order = MonomialOrder::new(kind, self.variables.len());
        SystemFile {
            order: kind,
            generators: self
                .generators
                .iter()
                .map(|g| g.with_order(&order))
                .collect(),
            ..self.clone()
        }
    }
}

/// Parse the system file format (see `docs/system-format.md`).
pub fn parse_system(text: &str) -> Result<SystemFile, ParseError> {
    let mut variables: Option<Vec<String>> = None;
    let mut eliminant: Option<(String, usize, usize)> = None;
    let mut order = OrderKind::Lex;
    let mut gen_start: Option<(usize, usize)> = None;

    let lines: Vec<&str> = text.lines().collect();
    let err = |line: usize, col: usize, m: &str| ParseError {
        line,
        col,
        message: m.to_string(),
    };
    for (idx, raw) in lines.iter().enumerate() {
        let ln = idx + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(err(ln, 1, "expected 'key: value'"));
        };
        let vcol = key.len() + 2;
        match key.trim() {
            "variables" => {
                let vs: Vec<String> = value.split(',').map(|s| s.trim().to_string()).collect();
                for v in &vs {
                    if v.is_empty()
                        || !v
                            .chars()
                            .next()
                            .is_some_and(|c| c.is_alphabetic() || c == '_')
                        || !v.chars().all(|c| c.is_alphanumeric() || c == '_')
                    {
                        return Err(err(ln, vcol, &format!("bad variable name '{v}'")));
                    }
                }
                for (i, v) in vs.iter().enumerate() {
                    if vs[..i].contains(v) {
                        return Err(err(ln, vcol, &format!("duplicate variable '{v}'")));
                    }
                }
                variables = Some(vs);
            }
            "eliminate" => eliminant = Some((value.trim().to_string(), ln, vcol)),
            "order" => {
                order = OrderKind::parse(value.trim())
                    .ok_or_else(|| err(ln, vcol, "order must be lex, grlex or grevlex"))?;
            }
            "generators" => {
                gen_start = Some((ln, vcol));
                break;
            }
            other => return Err(err(ln, 1, &format!("unknown key '{other}'"))),
        }
    }
    // a missing header is reported where the header section ends
    let (hl, hc) = gen_start.unwrap_or((lines.len().max(1), 1));
    let variables = variables.ok_or_else(|| err(hl, hc, "missing 'variables:' line"))?;
    let (eliminant, el, ec) = eliminant.ok_or_else(|| err(hl, hc, "missing 'eliminate:' line"))?;
    match variables.iter().position(|v| *v == eliminant) {
        None => {
            return Err(err(
                el,
                ec,
                &format!("eliminant variable '{eliminant}' is not declared"),
            ))
        }
        Some(i) if i + 1 != variables.len() => {
            return Err(err(
                el,
                ec,
                "the eliminant variable must be listed last (least)",
            ))
        }
        _ => {}
    }
    let (gl, gcol) =
        gen_start.ok_or_else(|| err(lines.len().max(1), 1, "missing 'generators:' section"))?;
    let full = MonomialOrder::new(order, variables.len());

    // Everything after "generators:" is a ';'-separated list; comments stripped
    // in place so that columns stay meaningful.
    let mut body = String::new();
    let first = lines[gl - 1];
    let after = &first[first.find(':').expect("checked") + 1..];
    body.push_str(&strip_comment(after));
    for raw in &lines[gl..] {
        body.push('\n');
        body.push_str(&strip_comment(raw));
    }
    let mut generator_text = Vec::new();
    let mut generators = Vec::new();
    let (mut line, mut col) = (gl, gcol);
    for chunk in body.split(';') {
        if !chunk.trim().is_empty() {
            let p = parse_at(chunk, &variables, &full, line, col)?;
            generator_text.push(chunk.trim().to_string());
            generators.push(p);
        }
        let (l, c) = end_position(chunk, line, col);
        line = l;
        col = c + 1;
    }
    if generators.is_empty() {
        return Err(err(gl, gcol, "at least one generator is required"));
    }
    Ok(SystemFile {
        variables,
        eliminant,
        order,
        generator_text,
        generators,
    })
}

fn strip_comment(line: &str) -> String {
    match line.find('#') {
        Some(i) => format!("{}{}", &line[..i], " ".repeat(line[i..].chars().count())),
        None => line.to_string(),
    }
}
