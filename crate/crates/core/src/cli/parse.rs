//! Expression parser for polynomials, differential forms and vector fields.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr    := ["+"|"-"] term (("+"|"-") term)*
//! term    := factor (("*"|"/") factor)*
//! factor  := "-" factor | atom ("^" rhs)*
//! rhs     := integer            when the left operand is a scalar (power)
//!          | atom               when the left operand is a differential form (wedge)
//! atom    := integer | variable | "d" variable | "(" expr ")"
//! field   := "[" expr ("," expr)* "]"
//! ```
//!
//! `^` is exponentiation after a scalar and the wedge product after a form:
//! the meaning is decided by the kind of the left operand. Division is only
//! by nonzero constants, so `3/4*x0` is a rational coefficient.
//!
//! Variables are the declared names. When the declared names are exactly
//! `x y z`, the indexed names `x0 x1 x2` are accepted as synonyms; a single
//! text may not mix the two spellings.

use std::fmt;

use crate::exterior::{DiffForm, VectorField};
use crate::polyring::{Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnexpectedToken(String),
    UnknownVariable(String),
    MixedAliases,
    DivisionByNonConstant,
    DivisionByZero,
    BadExponent(String),
    FormTimesForm,
    KindMismatch(String),
    NotAOneForm(usize),
    NotAPolynomial,
    WrongComponentCount { expected: usize, got: usize },
    DuplicateVariable(String),
    InvalidVariableName(String),
}

/// A parse failure located at a byte offset (and line/column, 1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => format!("syntax error: unexpected character {c:?}"),
            ParseErrorKind::UnexpectedEnd => "syntax error: unexpected end of input".to_string(),
            ParseErrorKind::UnexpectedToken(t) => format!("syntax error: unexpected {t}"),
            ParseErrorKind::UnknownVariable(v) => format!("unknown variable {v:?}"),
            ParseErrorKind::MixedAliases => "mixed aliases: x,y,z and indexed names in one expression".to_string(),
            ParseErrorKind::DivisionByNonConstant => "division is only allowed by nonzero constants".to_string(),
            ParseErrorKind::DivisionByZero => "division by zero".to_string(),
            ParseErrorKind::BadExponent(t) => format!("exponent must be a nonnegative integer, got {t}"),
            ParseErrorKind::FormTimesForm => "product of two forms: use ^ for the wedge product".to_string(),
            ParseErrorKind::KindMismatch(t) => format!("type error: {t}"),
            ParseErrorKind::NotAOneForm(p) => format!("expected a 1-form, got a {p}-form"),
            ParseErrorKind::NotAPolynomial => "expected a polynomial, got a differential form".to_string(),
            ParseErrorKind::WrongComponentCount { expected, got } => {
                format!("expected {expected} components, got {got}")
            }
            ParseErrorKind::DuplicateVariable(v) => format!("duplicate variable name {v:?}"),
            ParseErrorKind::InvalidVariableName(v) => format!("invalid variable name {v:?}"),
        };
        write!(f, "{what} at line {}, column {} (offset {})", self.line, self.column, self.offset)
    }
}

impl std::error::Error for ParseError {}

fn located(text: &str, offset: usize, kind: ParseErrorKind) -> ParseError {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    ParseError { kind, offset, line, column }
}

/// Declared variable names of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vars {
    names: Vec<String>,
    xyz_aliases: bool,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Vars, ParseError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (k, v) in names.iter().enumerate() {
            if !valid_name(v) {
                return Err(ParseError { kind: ParseErrorKind::InvalidVariableName(v.clone()), offset: 0, line: 1, column: 1 });
            }
            if names[..k].contains(v) {
                return Err(ParseError { kind: ParseErrorKind::DuplicateVariable(v.clone()), offset: 0, line: 1, column: 1 });
            }
        }
        let xyz_aliases = names == ["x", "y", "z"];
        Ok(Vars { names, xyz_aliases })
    }

    /// `x0, …, x{n-1}`.
    pub fn indexed(n: usize) -> Vars {
        Vars { names: (0..n).map(|i| format!("x{i}")).collect(), xyz_aliases: false }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Index of a variable, and whether the spelling was an indexed synonym.
    fn lookup(&self, name: &str) -> Option<(usize, bool)> {
        if let Some(i) = self.names.iter().position(|v| v == name) {
            return Some((i, false));
        }
        if self.xyz_aliases {
            if let Some(i) = ["x0", "x1", "x2"].iter().position(|v| *v == name) {
                return Some((i, true));
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(s) => format!("number {s}"),
            Tok::Ident(s) => format!("identifier {s}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Comma => "','".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut k = 0;
    while k < bytes.len() {
        let (off, c) = bytes[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' | '·' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' | '∧' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, off));
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < bytes.len() && bytes[k].1.is_ascii_digit() {
                k += 1;
            }
            let s: String = bytes[start..k].iter().map(|(_, c)| c).collect();
            out.push((Tok::Num(s), off));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < bytes.len() && (bytes[k].1.is_ascii_alphanumeric() || bytes[k].1 == '_') {
                k += 1;
            }
            let s: String = bytes[start..k].iter().map(|(_, c)| c).collect();
            out.push((Tok::Ident(s), off));
            continue;
        }
        return Err(located(text, off, ParseErrorKind::UnexpectedChar(c)));
    }
    Ok(out)
}

/// Scalar or differential-form value during parsing.
#[derive(Clone, Debug)]
enum Val {
    Scalar(Polynomial),
    Form(DiffForm),
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a Vars,
    /// Spelling used so far: `Some(true)` for indexed synonyms.
    spelling: Option<bool>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &'a Vars) -> Result<Self, ParseError> {
        Ok(Parser { text, toks: tokenize(text)?, pos: 0, vars, spelling: None })
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.text.len(), |(_, o)| *o)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        located(self.text, self.offset(), kind)
    }

    fn err_at(&self, offset: usize, kind: ParseErrorKind) -> ParseError {
        located(self.text, offset, kind)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if *x == t => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.err(ParseErrorKind::UnexpectedToken(x.describe()))),
            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(ParseErrorKind::UnexpectedToken(t.describe()))),
        }
    }

    fn add(&self, a: Val, b: Val, negate: bool, at: usize) -> Result<Val, ParseError> {
        let b = if negate { neg(b) } else { b };
        match (a, b) {
            (Val::Scalar(x), Val::Scalar(y)) => Ok(Val::Scalar(&x + &y)),
            (Val::Form(x), Val::Form(y)) => x
                .add(&y)
                .map(Val::Form)
                .map_err(|_| self.err_at(at, ParseErrorKind::KindMismatch("sum of forms of different degrees".into()))),
            (Val::Scalar(x), Val::Form(y)) | (Val::Form(y), Val::Scalar(x)) => {
                if x.is_zero() {
                    Ok(Val::Form(y))
                } else {
                    Err(self.err_at(at, ParseErrorKind::KindMismatch("sum of a polynomial and a form".into())))
                }
            }
        }
    }

    fn expr(&mut self) -> Result<Val, ParseError> {
        let mut negate_first = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                negate_first = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate_first { neg(first) } else { first };
        loop {
            let at = self.offset();
            let negate = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            acc = self.add(acc, rhs, negate, at)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.factor()?;
        loop {
            let at = self.offset();
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = match (acc, rhs) {
                        (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(&x * &y),
                        (Val::Scalar(x), Val::Form(w)) | (Val::Form(w), Val::Scalar(x)) => Val::Form(w.mul_poly(&x)),
                        (Val::Form(_), Val::Form(_)) => return Err(self.err_at(at, ParseErrorKind::FormTimesForm)),
                    };
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs_at = self.offset();
                    let rhs = self.factor()?;
                    let c = match rhs {
                        Val::Scalar(p) if p.is_constant() => {
                            if p.is_zero() {
                                return Err(self.err_at(rhs_at, ParseErrorKind::DivisionByZero));
                            }
                            p.terms()[0].1.recip()
                        }
                        _ => return Err(self.err_at(rhs_at, ParseErrorKind::DivisionByNonConstant)),
                    };
                    acc = match acc {
                        Val::Scalar(x) => Val::Scalar(x.scale(&c)),
                        Val::Form(w) => Val::Form(w.scale(&c)),
                    };
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Val, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(neg(self.factor()?));
        }
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            let at = self.offset();
            self.pos += 1;
            acc = match acc {
                Val::Scalar(x) => {
                    let e_at = self.offset();
                    match self.next() {
                        Some(Tok::Num(s)) => {
                            let e: u32 = s.parse().map_err(|_| self.err_at(e_at, ParseErrorKind::BadExponent(s.clone())))?;
                            Val::Scalar(x.pow(e))
                        }
                        Some(t) => return Err(self.err_at(e_at, ParseErrorKind::BadExponent(t.describe()))),
                        None => return Err(self.err_at(e_at, ParseErrorKind::UnexpectedEnd)),
                    }
                }
                Val::Form(w) => {
                    let rhs = self.atom()?;
                    match rhs {
                        Val::Form(v) => Val::Form(w.wedge(&v).expect("same ring")),
                        Val::Scalar(_) => {
                            return Err(self.err_at(at, ParseErrorKind::KindMismatch(
                                "'^' after a form is the wedge product and needs a form on the right".into(),
                            )))
                        }
                    }
                }
            };
        }
        Ok(acc)
    }

    fn variable(&mut self, name: &str, at: usize) -> Result<usize, ParseError> {
        let (i, indexed) = self
            .vars
            .lookup(name)
            .ok_or_else(|| self.err_at(at, ParseErrorKind::UnknownVariable(name.to_string())))?;
        if self.vars.xyz_aliases {
            match self.spelling {
                None => self.spelling = Some(indexed),
                Some(s) if s != indexed => return Err(self.err_at(at, ParseErrorKind::MixedAliases)),
                _ => {}
            }
        }
        Ok(i)
    }

    fn atom(&mut self) -> Result<Val, ParseError> {
        let at = self.offset();
        match self.next() {
            None => Err(self.err_at(at, ParseErrorKind::UnexpectedEnd)),
            Some(Tok::Num(s)) => {
                let v = Rational::from_bigints(s.parse().expect("digits"), 1.into());
                Ok(Val::Scalar(Polynomial::constant(self.n(), v)))
            }
            Some(Tok::Ident(s)) => {
                if self.vars.lookup(&s).is_some() {
                    let i = self.variable(&s, at)?;
                    return Ok(Val::Scalar(Polynomial::var(self.n(), i)));
                }
                if let Some(rest) = s.strip_prefix('d') {
                    if self.vars.lookup(rest).is_some() {
                        let i = self.variable(rest, at)?;
                        return Ok(Val::Form(DiffForm::dx(self.n(), i)));
                    }
                }
                Err(self.err_at(at, ParseErrorKind::UnknownVariable(s)))
            }
            Some(Tok::LParen) => {
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Some(t) => Err(self.err_at(at, ParseErrorKind::UnexpectedToken(t.describe()))),
        }
    }
}

fn neg(v: Val) -> Val {
    let m1 = Rational::from_int(-1);
    match v {
        Val::Scalar(x) => Val::Scalar(x.scale(&m1)),
        Val::Form(w) => Val::Form(w.scale(&m1)),
    }
}

/// Parse a differential form of any degree (a polynomial is a 0-form).
pub fn parse_any_form(text: &str, vars: &Vars) -> Result<DiffForm, ParseError> {
    let mut p = Parser::new(text, vars)?;
    let v = p.expr()?;
    p.finish()?;
    Ok(match v {
        Val::Scalar(f) => DiffForm::function(f),
        Val::Form(w) => w,
    })
}

/// Parse a 1-form; the literal `0` is the zero 1-form.
pub fn parse_form(text: &str, vars: &Vars) -> Result<DiffForm, ParseError> {
    let mut p = Parser::new(text, vars)?;
    let v = p.expr()?;
    p.finish()?;
    match v {
        Val::Form(w) if w.degree() == 1 => Ok(w),
        Val::Form(w) if w.is_zero() => Ok(DiffForm::zero(vars.len(), 1)),
        Val::Form(w) => Err(located(text, 0, ParseErrorKind::NotAOneForm(w.degree()))),
        Val::Scalar(f) if f.is_zero() => Ok(DiffForm::zero(vars.len(), 1)),
        Val::Scalar(_) => Err(located(text, 0, ParseErrorKind::NotAOneForm(0))),
    }
}

/// Parse a polynomial.
pub fn parse_polynomial(text: &str, vars: &Vars) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(text, vars)?;
    let v = p.expr()?;
    p.finish()?;
    match v {
        Val::Scalar(f) => Ok(f),
        Val::Form(w) if w.is_zero() => Ok(Polynomial::zero(vars.len())),
        Val::Form(_) => Err(located(text, 0, ParseErrorKind::NotAPolynomial)),
    }
}

/// Parse a bracketed, comma-separated list of polynomials.
pub fn parse_polynomial_list(text: &str, vars: &Vars) -> Result<Vec<Polynomial>, ParseError> {
    let mut p = Parser::new(text, vars)?;
    p.expect(Tok::LBracket)?;
    let mut out = Vec::new();
    if p.peek() == Some(&Tok::RBracket) {
        p.pos += 1;
        p.finish()?;
        return Ok(out);
    }
    loop {
        let at = p.offset();
        match p.expr()? {
            Val::Scalar(f) => out.push(f),
            Val::Form(_) => return Err(p.err_at(at, ParseErrorKind::NotAPolynomial)),
        }
        match p.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::RBracket) => break,
            Some(t) => {
                p.pos -= 1;
                return Err(p.err(ParseErrorKind::UnexpectedToken(t.describe())));
            }
            None => return Err(p.err(ParseErrorKind::UnexpectedEnd)),
        }
    }
    p.finish()?;
    Ok(out)
}

/// Parse a vector field `[X_0, …, X_n]` of components in front of `∂/∂x_i`.
pub fn parse_vector_field(text: &str, vars: &Vars) -> Result<VectorField, ParseError> {
    let comps = parse_polynomial_list(text, vars)?;
    if comps.len() != vars.len() {
        return Err(located(text, 0, ParseErrorKind::WrongComponentCount { expected: vars.len(), got: comps.len() }));
    }
    Ok(VectorField::new(comps).expect("components share the ring"))
}
