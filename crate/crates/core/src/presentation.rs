//! Presentation documents and the expression grammar for scalars, polynomials
//! and tensors.
//!
//! A document is line oriented:
//!
//! ```text
//! field rationals            # or: Fp p=<prime> | cyclotomic n=<int>
//! grading dim=2
//! letter a degree=(1,0)
//! letter b degree=(0,1)
//! bicharacter rows=[[1, 1/2], [2, 1]]   # or: trivial
//! relation b*a - 2*a*b
//! comult b = (1) ox (b) + (b) ox (1)
//! max_degree 10
//! ```
//!
//! In a cyclotomic field the identifier `z` denotes the primitive root of unity.
//! Lines starting with `report` carry computed results and are skipped.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::braiding::Bicharacter;
use crate::coalg::Comultiplication;
use crate::freealg::{Polynomial, TensorPolynomial};
use crate::scalar::{Field, FieldSpec, Scalar};
use crate::words::{Alphabet, Degree, Word};

/// Default truncation when a document has no `max_degree` line.
pub const DEFAULT_MAX_DEGREE: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Validation { line: Option<usize>, message: String },
}

/// An expression error at a 1-based column within the expression text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

fn expr_err<T>(column: usize, message: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError {
        column,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
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
    Ox,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((if s == "ox" { Tok::Ox } else { Tok::Ident(s) }, col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '⊗' => Tok::Ox,
            _ => return expr_err(col, format!("unexpected character `{c}`")),
        };
        out.push((t, col));
        i += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Value {
    Poly(Polynomial),
    Tensor(TensorPolynomial),
}

/// The scalar of a constant polynomial.
fn as_constant(p: &Polynomial) -> Option<Scalar> {
    if p.words().all(|w| w.is_empty()) {
        Some(p.coefficient(&Word::empty()))
    } else {
        None
    }
}

struct ExprParser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    field: &'a Field,
    alphabet: &'a Arc<Alphabet>,
}

impl<'a> ExprParser<'a> {
    fn new(text: &str, field: &'a Field, alphabet: &'a Arc<Alphabet>) -> Result<Self, ExprError> {
        Ok(ExprParser {
            toks: tokenize(text)?,
            pos: 0,
            end: text.chars().count() + 1,
            field,
            alphabet,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn finish(mut self) -> Result<Value, ExprError> {
        if self.toks.is_empty() {
            return expr_err(1, "empty expression");
        }
        let v = self.expr()?;
        if self.pos < self.toks.len() {
            return expr_err(self.column(), "unexpected token");
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<Value, ExprError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                negate = true;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = self.scale(acc, &self.field.one().neg());
        }
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => self.field.one(),
                Some(Tok::Minus) => self.field.one().neg(),
                _ => break,
            };
            self.pos += 1;
            let col = self.column();
            let rhs = self.term()?;
            acc = self.add(acc, self.scale(rhs, &sign), col)?;
        }
        Ok(acc)
    }

    fn scale(&self, v: Value, c: &Scalar) -> Value {
        match v {
            Value::Poly(p) => Value::Poly(p.scale(c)),
            Value::Tensor(t) => Value::Tensor(t.scale(c)),
        }
    }

    fn add(&self, a: Value, b: Value, col: usize) -> Result<Value, ExprError> {
        match (a, b) {
            (Value::Poly(x), Value::Poly(y)) => Ok(Value::Poly(&x + &y)),
            (Value::Tensor(mut x), Value::Tensor(y)) => {
                x.add_scaled(&y, &self.field.one());
                Ok(Value::Tensor(x))
            }
            _ => expr_err(col, "cannot add a polynomial and a tensor"),
        }
    }

    fn term(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.tensor_factor()?;
        loop {
            let divide = match self.peek() {
                Some(Tok::Star) => false,
                Some(Tok::Slash) => true,
                _ => break,
            };
            self.pos += 1;
            let col = self.column();
            let rhs = self.tensor_factor()?;
            acc = if divide {
                let c = match &rhs {
                    Value::Poly(p) => as_constant(p),
                    Value::Tensor(_) => None,
                };
                match c {
                    Some(c) if !c.is_zero() => self.scale(acc, &c.inv().expect("nonzero")),
                    Some(_) => return expr_err(col, "division by zero"),
                    None => return expr_err(col, "can only divide by a nonzero scalar"),
                }
            } else {
                self.mul(acc, rhs, col)?
            };
        }
        Ok(acc)
    }

    fn mul(&self, a: Value, b: Value, col: usize) -> Result<Value, ExprError> {
        match (a, b) {
            (Value::Poly(x), Value::Poly(y)) => Ok(Value::Poly(&x * &y)),
            (Value::Poly(x), Value::Tensor(t)) | (Value::Tensor(t), Value::Poly(x)) => match as_constant(&x) {
                Some(c) => Ok(Value::Tensor(t.scale(&c))),
                None => expr_err(col, "a tensor can only be multiplied by a scalar; parenthesize tensor legs"),
            },
            (Value::Tensor(_), Value::Tensor(_)) => {
                expr_err(col, "products of tensors need a bicharacter and are not part of the grammar")
            }
        }
    }

    fn tensor_factor(&mut self) -> Result<Value, ExprError> {
        let left = self.power()?;
        if self.peek() != Some(&Tok::Ox) {
            return Ok(left);
        }
        self.pos += 1;
        let col = self.column();
        let right = self.power()?;
        match (left, right) {
            (Value::Poly(l), Value::Poly(r)) => Ok(Value::Tensor(TensorPolynomial::tensor(&l, &r))),
            _ => expr_err(col, "tensor legs must be polynomials"),
        }
    }

    fn power(&mut self) -> Result<Value, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.column();
        let n = match self.bump() {
            Some((Tok::Num(n), _)) => n,
            _ => return expr_err(col, "expected a nonnegative integer exponent"),
        };
        let n: u32 = match n.try_into() {
            Ok(n) if n <= 4096 => n,
            _ => return expr_err(col, "exponent too large"),
        };
        match base {
            Value::Poly(p) => {
                let mut acc = Polynomial::one(self.field, self.alphabet);
                for _ in 0..n {
                    acc = &acc * &p;
                }
                Ok(Value::Poly(acc))
            }
            Value::Tensor(_) => expr_err(col, "cannot raise a tensor to a power"),
        }
    }

    fn atom(&mut self) -> Result<Value, ExprError> {
        let col = self.column();
        match self.bump() {
            Some((Tok::Num(n), _)) => {
                let c = self.field.from_bigint(&n);
                Ok(Value::Poly(Polynomial::monomial(self.field, self.alphabet, c, Word::empty())))
            }
            Some((Tok::Ident(name), _)) => self.identifier(&name, col).map(Value::Poly),
            Some((Tok::LParen, _)) => {
                let v = self.expr()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(v),
                    _ => expr_err(self.column().min(self.end), "expected `)`"),
                }
            }
            Some(_) => expr_err(col, "expected a number, a letter or `(`"),
            None => expr_err(col, "unexpected end of expression"),
        }
    }

    fn identifier(&self, name: &str, col: usize) -> Result<Polynomial, ExprError> {
        if let FieldSpec::Cyclotomic(_) = self.field.spec() {
            if name == "z" {
                let z = self.field.zeta().expect("cyclotomic field has z");
                return Ok(Polynomial::monomial(self.field, self.alphabet, z, Word::empty()));
            }
        }
        if let Some(x) = self.alphabet.index_of(name) {
            return Ok(Polynomial::word(self.field, self.alphabet, Word::letter(x)));
        }
        // Juxtaposed letters such as `bba`, split greedily by longest name.
        let mut letters = Vec::new();
        let mut rest = name;
        while !rest.is_empty() {
            let best = self
                .alphabet
                .names()
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .max_by_key(|(_, n)| n.len());
            match best {
                Some((i, n)) => {
                    letters.push(i as u8);
                    rest = &rest[n.len()..];
                }
                None => return expr_err(col, format!("unknown letter in `{name}`")),
            }
        }
        Ok(Polynomial::word(self.field, self.alphabet, Word::from_letters(&letters)))
    }
}

/// Parses a polynomial expression such as `b*a - 3/2*a*b + (z + 1)*a^2`.
pub fn parse_polynomial(text: &str, field: &Field, alphabet: &Arc<Alphabet>) -> Result<Polynomial, ExprError> {
    match ExprParser::new(text, field, alphabet)?.finish()? {
        Value::Poly(p) => Ok(p),
        Value::Tensor(_) => expr_err(1, "expected a polynomial, found a tensor"),
    }
}

/// Parses a tensor expression such as `(1) ox (b) + (b) ox (1) + 2*(a) ox (a)`.
pub fn parse_tensor(text: &str, field: &Field, alphabet: &Arc<Alphabet>) -> Result<TensorPolynomial, ExprError> {
    match ExprParser::new(text, field, alphabet)?.finish()? {
        Value::Tensor(t) => Ok(t),
        Value::Poly(p) if p.is_zero() => Ok(TensorPolynomial::zero(field, alphabet)),
        Value::Poly(_) => expr_err(1, "expected a tensor expression"),
    }
}

/// Parses a scalar expression such as `-3/2` or `z^2 + 1`.
pub fn parse_scalar(text: &str, field: &Field, alphabet: &Arc<Alphabet>) -> Result<Scalar, ExprError> {
    let p = parse_polynomial(text, field, alphabet)?;
    as_constant(&p).map_or_else(|| expr_err(1, "expected a scalar"), Ok)
}

/// A validated presentation: field, graded alphabet, bicharacter, relations,
/// optional comultiplication images and the truncation degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub field: Field,
    pub alphabet: Arc<Alphabet>,
    pub bicharacter: Bicharacter,
    pub relations: Vec<Polynomial>,
    /// Letter images given in the document; letters without one map to 1⊗x + x⊗1.
    pub comult: BTreeMap<u8, TensorPolynomial>,
    pub max_degree: u32,
}

struct Line<'a> {
    number: usize,
    key: &'a str,
    rest: &'a str,
    /// 1-based column where `rest` starts.
    rest_column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn validation(line: Option<usize>, message: impl Into<String>) -> ParseError {
    ParseError::Validation {
        line,
        message: message.into(),
    }
}

fn lift(line: &Line<'_>, offset: usize, e: ExprError) -> ParseError {
    syntax(line.number, line.rest_column + offset + e.column - 1, e.message)
}

/// Reads `name=value` from a line remainder.
fn key_value<'a>(line: &Line<'a>, name: &str) -> Result<&'a str, ParseError> {
    let rest = line.rest.trim();
    let prefix = format!("{name}=");
    rest.strip_prefix(&prefix)
        .map(str::trim)
        .ok_or_else(|| syntax(line.number, line.rest_column, format!("expected `{name}=...`")))
}

fn parse_u64(line: &Line<'_>, s: &str) -> Result<u64, ParseError> {
    s.trim()
        .parse()
        .map_err(|_| syntax(line.number, line.rest_column, format!("expected a nonnegative integer, found `{}`", s.trim())))
}

fn parse_field(line: &Line<'_>) -> Result<Field, ParseError> {
    let rest = line.rest.trim();
    let (kind, args) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let inner = Line {
        number: line.number,
        key: line.key,
        rest: args,
        rest_column: line.rest_column + kind.len() + 1,
    };
    let field = match kind {
        "rationals" => Ok(Field::rationals()),
        "Fp" => Field::prime(parse_u64(&inner, key_value(&inner, "p")?)?),
        "cyclotomic" => {
            let n = parse_u64(&inner, key_value(&inner, "n")?)?;
            let n = u32::try_from(n).map_err(|_| validation(Some(line.number), "cyclotomic order too large"))?;
            Field::cyclotomic(n)
        }
        _ => {
            return Err(syntax(
                line.number,
                line.rest_column,
                "expected `rationals`, `Fp p=<prime>` or `cyclotomic n=<int>`",
            ))
        }
    };
    field.map_err(|e| validation(Some(line.number), e.to_string()))
}

/// Splits `[[a, b], [c, d]]` into rows of (entry text, offset within `text`).
fn split_rows(text: &str) -> Option<Vec<Vec<(String, usize)>>> {
    let mut rows = Vec::new();
    let mut depth = 0;
    let mut current: Vec<(String, usize)> = Vec::new();
    let mut entry = String::new();
    let mut entry_start = 0;
    let mut paren = 0;
    for (i, c) in text.chars().enumerate() {
        match c {
            '[' if paren == 0 => {
                depth += 1;
                if depth > 2 {
                    return None;
                }
                entry.clear();
                entry_start = i + 1;
            }
            ']' if paren == 0 => {
                if depth == 2 {
                    current.push((std::mem::take(&mut entry), entry_start));
                    rows.push(std::mem::take(&mut current));
                }
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 2 && paren == 0 => {
                current.push((std::mem::take(&mut entry), entry_start));
                entry_start = i + 1;
            }
            ',' if depth == 1 => {}
            _ if depth == 2 => {
                if c == '(' {
                    paren += 1;
                } else if c == ')' {
                    paren -= 1;
                }
                entry.push(c);
            }
            c if c.is_whitespace() => {}
            _ => return None,
        }
    }
    (depth == 0).then_some(rows)
}

/// Parses a presentation document.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (key, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed.trim_end(), ""));
        let rest_column = raw[..indent + key.len()].chars().count() + 2;
        lines.push(Line {
            number: i + 1,
            key,
            rest,
            rest_column,
        });
    }
    let find_one = |key: &str| -> Result<Option<&Line<'_>>, ParseError> {
        let mut found = lines.iter().filter(|l| l.key == key);
        let first = found.next();
        if let Some(dup) = found.next() {
            return Err(validation(Some(dup.number), format!("duplicate `{key}` line")));
        }
        Ok(first)
    };
    for l in &lines {
        if !matches!(
            l.key,
            "field" | "grading" | "letter" | "bicharacter" | "relation" | "comult" | "max_degree" | "report"
        ) {
            return Err(syntax(l.number, l.rest_column - l.key.chars().count() - 1, format!("unknown key `{}`", l.key)));
        }
    }
    let field = match find_one("field")? {
        Some(l) => parse_field(l)?,
        None => return Err(validation(None, "missing `field` line")),
    };
    let theta = match find_one("grading")? {
        Some(l) => parse_u64(l, key_value(l, "dim")?)? as usize,
        None => return Err(validation(None, "missing `grading` line")),
    };
    if theta == 0 {
        return Err(validation(None, "grading dimension must be positive"));
    }
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    for l in lines.iter().filter(|l| l.key == "letter") {
        let rest = l.rest.trim();
        let (name, deg) = rest
            .split_once(char::is_whitespace)
            .ok_or_else(|| syntax(l.number, l.rest_column, "expected `letter <name> degree=(...)`"))?;
        let ok_name = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok_name || name == "ox" {
            return Err(syntax(l.number, l.rest_column, format!("invalid letter name `{name}`")));
        }
        if name == "z" && matches!(field.spec(), FieldSpec::Cyclotomic(_)) {
            return Err(validation(Some(l.number), "`z` names the root of unity in a cyclotomic field"));
        }
        let inner = Line {
            number: l.number,
            key: l.key,
            rest: deg,
            rest_column: l.rest_column + name.len() + 1,
        };
        let tuple = key_value(&inner, "degree")?;
        let body = tuple
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| syntax(l.number, inner.rest_column, "expected `degree=(g1,...,gθ)`"))?;
        let comps = body
            .split(',')
            .map(|c| parse_u64(&inner, c).and_then(|v| u32::try_from(v).map_err(|_| validation(Some(l.number), "degree too large"))))
            .collect::<Result<Vec<u32>, _>>()?;
        names.push(name.to_string());
        degrees.push(Degree::from_slice(&comps));
    }
    let first_letter_line = lines.iter().find(|l| l.key == "letter").map(|l| l.number);
    let alphabet = Arc::new(
        Alphabet::new(names, degrees, theta).map_err(|e| validation(first_letter_line, e.to_string()))?,
    );
    let bicharacter = match find_one("bicharacter")? {
        None => Bicharacter::trivial(&field, theta),
        Some(l) if l.rest.trim() == "trivial" => Bicharacter::trivial(&field, theta),
        Some(l) => {
            let rows_text = key_value(l, "rows")?;
            let offset = l.rest.len() - l.rest.trim_start().len() + "rows=".len();
            let rows = split_rows(rows_text)
                .ok_or_else(|| syntax(l.number, l.rest_column + offset, "expected `rows=[[..], ..]`"))?;
            let mut matrix = Vec::new();
            for row in rows {
                let mut out = Vec::new();
                for (entry, at) in row {
                    let s = parse_scalar(&entry, &field, &alphabet).map_err(|e| lift(l, offset + at, e))?;
                    out.push(s);
                }
                matrix.push(out);
            }
            Bicharacter::new(&field, matrix).map_err(|e| validation(Some(l.number), e.to_string()))?
        }
    };
    if bicharacter.theta() != theta {
        return Err(validation(None, "bicharacter size does not match the grading dimension"));
    }
    let max_degree = match find_one("max_degree")? {
        Some(l) => {
            let v = parse_u64(l, l.rest)?;
            u32::try_from(v).map_err(|_| validation(Some(l.number), "max_degree too large"))?
        }
        None => DEFAULT_MAX_DEGREE,
    };
    let mut relations = Vec::new();
    for l in lines.iter().filter(|l| l.key == "relation") {
        let p = parse_polynomial(l.rest, &field, &alphabet).map_err(|e| lift(l, 0, e))?;
        if p.is_zero() {
            return Err(validation(Some(l.number), "relation is zero"));
        }
        if !p.is_homogeneous() {
            return Err(validation(Some(l.number), format!("relation `{}` is not homogeneous", p.to_expr())));
        }
        if p.max_total_degree() > max_degree {
            return Err(validation(
                Some(l.number),
                format!("relation degree {} exceeds max_degree {max_degree}", p.max_total_degree()),
            ));
        }
        relations.push(p);
    }
    let mut comult = BTreeMap::new();
    for l in lines.iter().filter(|l| l.key == "comult") {
        let (name, expr) = l
            .rest
            .split_once('=')
            .ok_or_else(|| syntax(l.number, l.rest_column, "expected `comult <letter> = <tensor>`"))?;
        let x = alphabet
            .index_of(name.trim())
            .ok_or_else(|| validation(Some(l.number), format!("unknown letter `{}`", name.trim())))?;
        let t = parse_tensor(expr, &field, &alphabet).map_err(|e| lift(l, name.len() + 1, e))?;
        if comult.insert(x, t).is_some() {
            return Err(validation(Some(l.number), format!("duplicate comult for `{}`", name.trim())));
        }
    }
    let p = Presentation {
        field,
        alphabet,
        bicharacter,
        relations,
        comult,
        max_degree,
    };
    if !p.comult.is_empty() {
        p.comultiplication().map_err(|e| validation(None, e.to_string()))?;
    }
    Ok(p)
}

impl Presentation {
    /// The document's comultiplication (Δ_s where no image is given).
    pub fn comultiplication(&self) -> Result<Comultiplication, crate::coalg::CoalgError> {
        let standard = Comultiplication::standard(&self.field, &self.alphabet, self.bicharacter.clone());
        if self.comult.is_empty() {
            return Ok(standard);
        }
        let images = (0..self.alphabet.size() as u8)
            .map(|x| {
                self.comult
                    .get(&x)
                    .cloned()
                    .unwrap_or_else(|| standard.images()[x as usize].clone())
            })
            .collect();
        Comultiplication::make(&self.field, &self.alphabet, self.bicharacter.clone(), images)
    }

    /// Same presentation with a different truncation degree.
    pub fn with_max_degree(&self, d: u32) -> Result<Presentation, ParseError> {
        if let Some(r) = self.relations.iter().find(|r| r.max_total_degree() > d) {
            return Err(validation(
                None,
                format!("relation `{}` has degree above max_degree {d}", r.to_expr()),
            ));
        }
        Ok(Presentation {
            max_degree: d,
            ..self.clone()
        })
    }

    /// The canonical document text; parsing it gives back an equal presentation.
    pub fn to_document(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field.spec())?;
        writeln!(f, "grading dim={}", self.alphabet.theta())?;
        for (i, name) in self.alphabet.names().iter().enumerate() {
            let d = self.alphabet.letter_degree(i as u8);
            let comps: Vec<String> = d.components().iter().map(u32::to_string).collect();
            writeln!(f, "letter {name} degree=({})", comps.join(","))?;
        }
        if self.bicharacter.is_trivial() {
            writeln!(f, "bicharacter trivial")?;
        } else {
            let rows: Vec<String> = self
                .bicharacter
                .matrix()
                .iter()
                .map(|r| format!("[{}]", r.iter().map(Scalar::to_string).collect::<Vec<_>>().join(", ")))
                .collect();
            writeln!(f, "bicharacter rows=[{}]", rows.join(", "))?;
        }
        for r in &self.relations {
            writeln!(f, "relation {}", r.to_expr())?;
        }
        for (x, t) in &self.comult {
            writeln!(f, "comult {} = {}", self.alphabet.name(*x), t.to_expr())?;
        }
        writeln!(f, "max_degree {}", self.max_degree)
    }
}

/// Converts a rational to a scalar of `field`, for callers building presentations in code.
pub fn rational(field: &Field, n: i64, d: i64) -> Scalar {
    field
        .from_rational(&BigRational::new(n.into(), d.into()))
        .expect("denominator invertible in the field")
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUANTUM_PLANE: &str = "\
field rationals
grading dim=2
letter a degree=(1,0)
letter b degree=(0,1)
bicharacter rows=[[1, 1/2], [2, 1]]
relation b*a - 2*a*b
max_degree 10
";

    #[test]
    fn parses_and_round_trips() {
        let p = parse_presentation(QUANTUM_PLANE).unwrap();
        assert_eq!(p.alphabet.size(), 2);
        assert_eq!(p.max_degree, 10);
        assert_eq!(p.relations[0].to_expr(), "b*a - 2*a*b");
        assert_eq!(p.to_document(), QUANTUM_PLANE);
        assert_eq!(parse_presentation(&p.to_document()).unwrap(), p);
    }

    #[test]
    fn expression_forms() {
        let f = Field::cyclotomic(3).unwrap();
        let a = Arc::new(Alphabet::standard(&["a", "b"]));
        let p = parse_polynomial("(z + 1)*a^2 - 3/2*ba + bba", &f, &a).unwrap();
        assert_eq!(p.len(), 3);
        let again = parse_polynomial(&p.to_expr(), &f, &a).unwrap();
        assert_eq!(p, again);
        let t = parse_tensor("(1) ox (b) + (b) ⊗ (1) + 2*(a) ox (a)", &f, &a).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(parse_tensor(&t.to_expr(), &f, &a).unwrap(), t);
        let e = parse_polynomial("a + c", &f, &a).unwrap_err();
        assert_eq!(e.column, 5);
    }

    #[test]
    fn validation_errors() {
        let zero_degree = QUANTUM_PLANE.replace("degree=(1,0)", "degree=(0,0)");
        assert!(matches!(parse_presentation(&zero_degree), Err(ParseError::Validation { .. })));
        let inhomogeneous = QUANTUM_PLANE.replace("relation b*a - 2*a*b", "relation b*a - a");
        assert!(matches!(
            parse_presentation(&inhomogeneous),
            Err(ParseError::Validation { line: Some(6), .. })
        ));
        let bad = QUANTUM_PLANE.replace("relation b*a - 2*a*b", "relation b*a - 2*a*");
        match parse_presentation(&bad) {
            Err(ParseError::Syntax { line, column, .. }) => {
                assert_eq!(line, 6);
                assert_eq!(column, 20);
            }
            other => panic!("{other:?}"),
        }
    }
}
