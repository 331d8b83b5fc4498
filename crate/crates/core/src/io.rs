//! Text formats for matrices, truncations and set families.
//!
//! All files are line oriented; `#` starts a comment and blank lines are
//! skipped. A matrix file is a header of keyword lines followed by the
//! entry rows:
//!
//! ```text
//! field 2^3             # Q | p | p^l
//! modulus 1 1 0 1       # extensions only; canonical when omitted
//! rows 2
//! cols 3
//! degree_bound 3        # polynomial matrices only
//! labels a b c          # optional ground-set names
//! <rows of whitespace-separated entries>
//! ```
//!
//! Entry syntax: an integer for prime fields, `a/b` (or a plain integer)
//! for the rationals, and `a0;a1;...` coefficient lists for extension
//! fields. Polynomial entries are comma-separated coefficient lists,
//! constant term first, with extension coefficients nesting inside each
//! comma slot. A truncation file prefixes the polynomial matrix with
//! `method classical|folded` and, for the folded method, `alpha <element>`.
//!
//! A family file holds one set per line as space-separated element labels,
//! optionally ending in `w=<weight>`.
//!
//! Writers emit fields in a fixed order so identical values serialize to
//! identical bytes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::Error;
use crate::field::{Element, Field};
use crate::fxmatrix::{FMatrix, PolyMatrix};
use crate::poly::Poly;
use crate::repset::SetFamily;
use crate::truncation::{TruncationMethod, TruncationResult};

/// A parse failure with its 1-based source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

/// Field named in a header, before any modulus is attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FieldDecl {
    Rational,
    Finite { p: u64, l: usize },
}

/// Parse a field spec token: `Q`, a prime `p`, or `p^l`.
fn parse_field_decl(token: &str, line: usize) -> ParseResult<FieldDecl> {
    if token == "Q" {
        return Ok(FieldDecl::Rational);
    }
    let (p_str, l_str) = match token.split_once('^') {
        Some((p, l)) => (p, Some(l)),
        None => (token, None),
    };
    let p: u64 = p_str
        .parse()
        .map_err(|_| ParseError::new(line, format!("invalid field spec `{token}`")))?;
    let l: usize = match l_str {
        Some(l) => l
            .parse()
            .map_err(|_| ParseError::new(line, format!("invalid extension degree in `{token}`")))?,
        None => 1,
    };
    if l == 0 {
        return Err(ParseError::new(line, "extension degree must be positive"));
    }
    Ok(FieldDecl::Finite { p, l })
}

/// Parse a field spec such as `Q`, `7`, or `2^3` into a field with its
/// canonical modulus.
pub fn parse_field_spec(token: &str) -> ParseResult<Field> {
    match parse_field_decl(token, 0)? {
        FieldDecl::Rational => Ok(Field::rational()),
        FieldDecl::Finite { p, l } => {
            Field::galois(p, l).map_err(|e| ParseError::new(0, e.to_string()))
        }
    }
}

/// Parse one element token against a field.
pub fn parse_element(token: &str, field: &Field, line: usize) -> ParseResult<Element> {
    let bad = |msg: String| ParseError::new(line, msg);
    if field.is_finite() {
        if field.extension_degree() > 1 && token.contains(';') {
            let comps: Vec<i64> = token
                .split(';')
                .map(|c| {
                    c.parse::<i64>()
                        .map_err(|_| bad(format!("invalid coefficient `{c}` in `{token}`")))
                })
                .collect::<ParseResult<_>>()?;
            if comps.len() > field.extension_degree() {
                return Err(bad(format!(
                    "{} coefficients exceed extension degree {}",
                    comps.len(),
                    field.extension_degree()
                )));
            }
            let p = field.characteristic() as i64;
            let coeffs: Vec<u64> = comps.iter().map(|c| c.rem_euclid(p) as u64).collect();
            return field.from_coeffs(&coeffs).map_err(|e| bad(e.to_string()));
        }
        let v: i64 = token
            .parse()
            .map_err(|_| bad(format!("invalid element `{token}`")))?;
        Ok(field.integer(v))
    } else {
        let (num_str, den_str) = match token.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (token, None),
        };
        let num =
            BigInt::from_str(num_str).map_err(|_| bad(format!("invalid rational `{token}`")))?;
        let den = match den_str {
            Some(d) => {
                BigInt::from_str(d).map_err(|_| bad(format!("invalid rational `{token}`")))?
            }
            None => BigInt::from(1),
        };
        field.fraction_big(num, den).map_err(|e| bad(e.to_string()))
    }
}

/// Parse a polynomial entry: comma-separated element tokens, constant first.
pub fn parse_poly(token: &str, field: &Field, line: usize) -> ParseResult<Poly> {
    let coeffs: Vec<Element> = token
        .split(',')
        .map(|c| parse_element(c, field, line))
        .collect::<ParseResult<_>>()?;
    Ok(Poly::from_vector(field, coeffs))
}

/// Parsed header plus remaining entry lines.
struct Header {
    field: Option<(FieldDecl, usize)>,
    modulus: Option<(Vec<u64>, usize)>,
    rows: Option<usize>,
    cols: Option<usize>,
    degree_bound: Option<usize>,
    labels: Option<Vec<String>>,
    method: Option<(String, usize)>,
    alpha: Option<(String, usize)>,
    entries: Vec<(usize, Vec<String>)>,
    end_line: usize,
}

fn content_lines(src: &str) -> Vec<(usize, Vec<String>)> {
    src.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let stripped = match raw.split_once('#') {
                Some((before, _)) => before,
                None => raw,
            };
            let tokens: Vec<String> = stripped.split_whitespace().map(str::to_string).collect();
            if tokens.is_empty() {
                None
            } else {
                Some((i + 1, tokens))
            }
        })
        .collect()
}

fn parse_usize(tokens: &[String], line: usize, what: &str) -> ParseResult<usize> {
    if tokens.len() != 2 {
        return Err(ParseError::new(line, format!("`{what}` expects one value")));
    }
    tokens[1]
        .parse()
        .map_err(|_| ParseError::new(line, format!("invalid {what} `{}`", tokens[1])))
}

fn parse_header(src: &str) -> ParseResult<Header> {
    let mut header = Header {
        field: None,
        modulus: None,
        rows: None,
        cols: None,
        degree_bound: None,
        labels: None,
        method: None,
        alpha: None,
        entries: Vec::new(),
        end_line: src.lines().count() + 1,
    };
    let mut in_header = true;
    for (line, tokens) in content_lines(src) {
        if in_header {
            match tokens[0].as_str() {
                "field" => {
                    if tokens.len() != 2 {
                        return Err(ParseError::new(line, "`field` expects one spec"));
                    }
                    header.field = Some((parse_field_decl(&tokens[1], line)?, line));
                    continue;
                }
                "modulus" => {
                    let coeffs: Vec<u64> = tokens[1..]
                        .iter()
                        .map(|t| {
                            t.parse::<u64>().map_err(|_| {
                                ParseError::new(line, format!("invalid modulus coefficient `{t}`"))
                            })
                        })
                        .collect::<ParseResult<_>>()?;
                    header.modulus = Some((coeffs, line));
                    continue;
                }
                "rows" => {
                    header.rows = Some(parse_usize(&tokens, line, "rows")?);
                    continue;
                }
                "cols" => {
                    header.cols = Some(parse_usize(&tokens, line, "cols")?);
                    continue;
                }
                "degree_bound" => {
                    header.degree_bound = Some(parse_usize(&tokens, line, "degree_bound")?);
                    continue;
                }
                "labels" => {
                    header.labels = Some(tokens[1..].to_vec());
                    continue;
                }
                "method" => {
                    if tokens.len() != 2 {
                        return Err(ParseError::new(line, "`method` expects one value"));
                    }
                    header.method = Some((tokens[1].clone(), line));
                    continue;
                }
                "alpha" => {
                    if tokens.len() != 2 {
                        return Err(ParseError::new(line, "`alpha` expects one element"));
                    }
                    header.alpha = Some((tokens[1].clone(), line));
                    continue;
                }
                _ => in_header = false,
            }
        }
        header.entries.push((line, tokens));
    }
    Ok(header)
}

impl Header {
    fn realize_field(&self, field_override: Option<&Field>) -> ParseResult<Field> {
        if let Some(f) = field_override {
            return Ok(f.clone());
        }
        let (decl, line) = self
            .field
            .ok_or_else(|| ParseError::new(self.end_line, "missing `field` line"))?;
        match decl {
            FieldDecl::Rational => {
                if self.modulus.is_some() {
                    return Err(ParseError::new(line, "modulus given for the rationals"));
                }
                Ok(Field::rational())
            }
            FieldDecl::Finite { p, l } => match &self.modulus {
                None => Field::galois(p, l).map_err(|e| ParseError::new(line, e.to_string())),
                Some((coeffs, mod_line)) => {
                    if l == 1 {
                        return Err(ParseError::new(
                            *mod_line,
                            "modulus given for a prime field",
                        ));
                    }
                    if coeffs.len() != l + 1 {
                        return Err(ParseError::new(
                            *mod_line,
                            format!(
                                "modulus needs {} coefficients, found {}",
                                l + 1,
                                coeffs.len()
                            ),
                        ));
                    }
                    Field::extension(p, coeffs.clone())
                        .map_err(|e| ParseError::new(*mod_line, e.to_string()))
                }
            },
        }
    }

    fn dimensions(&self) -> ParseResult<(usize, usize)> {
        let rows = self
            .rows
            .ok_or_else(|| ParseError::new(self.end_line, "missing `rows` line"))?;
        let cols = self
            .cols
            .ok_or_else(|| ParseError::new(self.end_line, "missing `cols` line"))?;
        Ok((rows, cols))
    }

    fn check_labels(&self, cols: usize) -> ParseResult<()> {
        if let Some(labels) = &self.labels {
            if labels.len() != cols {
                return Err(ParseError::new(
                    self.end_line,
                    format!("{} labels for {cols} columns", labels.len()),
                ));
            }
        }
        Ok(())
    }

    fn entry_grid(&self, rows: usize, cols: usize) -> ParseResult<Vec<(usize, &str)>> {
        let mut out = Vec::with_capacity(rows * cols);
        if self.entries.len() != rows {
            return Err(ParseError::new(
                self.end_line,
                format!("expected {rows} entry rows, found {}", self.entries.len()),
            ));
        }
        for (line, tokens) in &self.entries {
            if tokens.len() != cols {
                return Err(ParseError::new(
                    *line,
                    format!("expected {cols} entries, found {}", tokens.len()),
                ));
            }
            for t in tokens {
                out.push((*line, t.as_str()));
            }
        }
        Ok(out)
    }
}

/// Parse a plain matrix file; returns the matrix and any `labels` line.
pub fn parse_fmatrix(
    src: &str,
    field_override: Option<&Field>,
) -> ParseResult<(FMatrix, Option<Vec<String>>)> {
    let header = parse_header(src)?;
    let field = header.realize_field(field_override)?;
    let (rows, cols) = header.dimensions()?;
    header.check_labels(cols)?;
    let mut data = Vec::with_capacity(rows * cols);
    for (line, token) in header.entry_grid(rows, cols)? {
        data.push(parse_element(token, &field, line)?);
    }
    let matrix = FMatrix::new(field, rows, cols, data)
        .map_err(|e| ParseError::new(header.end_line, e.to_string()))?;
    Ok((matrix, header.labels))
}

/// Parse a polynomial matrix file (requires a `degree_bound` line).
pub fn parse_polymatrix(
    src: &str,
    field_override: Option<&Field>,
) -> ParseResult<(PolyMatrix, Option<Vec<String>>)> {
    let header = parse_header(src)?;
    let field = header.realize_field(field_override)?;
    let (rows, cols) = header.dimensions()?;
    header.check_labels(cols)?;
    let degree_bound = header
        .degree_bound
        .ok_or_else(|| ParseError::new(header.end_line, "missing `degree_bound` line"))?;
    let mut data = Vec::with_capacity(rows * cols);
    for (line, token) in header.entry_grid(rows, cols)? {
        data.push(parse_poly(token, &field, line)?);
    }
    let matrix = PolyMatrix::new(field, rows, cols, degree_bound, data)
        .map_err(|e| ParseError::new(header.end_line, e.to_string()))?;
    Ok((matrix, header.labels))
}

/// Parse a serialized truncation: a `method` line, an `alpha` line for the
/// folded method, then a polynomial matrix.
pub fn parse_truncation(src: &str) -> ParseResult<TruncationResult> {
    let header = parse_header(src)?;
    let (method, method_line) = header
        .method
        .as_ref()
        .ok_or_else(|| ParseError::new(header.end_line, "missing `method` line"))?;
    let method = match method.as_str() {
        "classical" => TruncationMethod::Classical,
        "folded" => TruncationMethod::Folded,
        other => {
            return Err(ParseError::new(
                *method_line,
                format!("unknown method `{other}`"),
            ))
        }
    };
    let (matrix, _) = parse_polymatrix(src, None)?;
    let alpha = match (&method, &header.alpha) {
        (TruncationMethod::Folded, Some((token, line))) => {
            Some(parse_element(token, matrix.field(), *line)?)
        }
        (TruncationMethod::Folded, None) => {
            return Err(ParseError::new(
                *method_line,
                "folded truncation requires an `alpha` line",
            ))
        }
        (TruncationMethod::Classical, Some((_, line))) => {
            return Err(ParseError::new(*line, "alpha given for classical method"))
        }
        (TruncationMethod::Classical, None) => None,
    };
    let source_field = matrix.field().clone();
    Ok(TruncationResult {
        k: matrix.rows(),
        n: matrix.degree_bound(),
        m: matrix.cols(),
        matrix,
        method,
        alpha,
        source_field,
    })
}

/// Parse a family file against ground-set labels; returns the family with
/// 0-based element indices. Weights default to 1 when only some lines carry
/// a `w=` marker.
pub fn parse_family(src: &str, labels: &[String]) -> ParseResult<SetFamily> {
    let index: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut sets = Vec::new();
    let mut weights = Vec::new();
    let mut any_weight = false;
    for (line, tokens) in content_lines(src) {
        let mut set = Vec::new();
        let mut weight = 1.0f64;
        for token in &tokens {
            if let Some(w) = token.strip_prefix("w=") {
                weight = w
                    .parse()
                    .map_err(|_| ParseError::new(line, format!("invalid weight `{w}`")))?;
                if !weight.is_finite() || weight < 0.0 {
                    return Err(ParseError::new(line, "weight must be nonnegative"));
                }
                any_weight = true;
                continue;
            }
            let e = index
                .get(token.as_str())
                .ok_or_else(|| ParseError::new(line, format!("unknown element `{token}`")))?;
            set.push(*e);
        }
        sets.push(set);
        weights.push(weight);
    }
    let total = sets.len();
    let family = SetFamily::new(sets).map_err(|e| ParseError::new(total, e.to_string()))?;
    if any_weight {
        family
            .with_weights(weights)
            .map_err(|e| ParseError::new(total, e.to_string()))
    } else {
        Ok(family)
    }
}

fn field_header(field: &Field, out: &mut String) {
    out.push_str(&format!("field {field}\n"));
    if let Some(modulus) = field.modulus() {
        let coeffs: Vec<String> = modulus.iter().map(u64::to_string).collect();
        out.push_str(&format!("modulus {}\n", coeffs.join(" ")));
    }
}

fn labels_line(labels: Option<&[String]>, out: &mut String) {
    if let Some(labels) = labels {
        out.push_str(&format!("labels {}\n", labels.join(" ")));
    }
}

/// Serialize a plain matrix (with optional ground-set labels).
pub fn write_fmatrix(m: &FMatrix, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    field_header(m.field(), &mut out);
    out.push_str(&format!("rows {}\ncols {}\n", m.rows(), m.cols()));
    labels_line(labels, &mut out);
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Serialize a polynomial matrix (with optional ground-set labels).
pub fn write_polymatrix(m: &PolyMatrix, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    field_header(m.field(), &mut out);
    out.push_str(&format!(
        "rows {}\ncols {}\ndegree_bound {}\n",
        m.rows(),
        m.cols(),
        m.degree_bound()
    ));
    labels_line(labels, &mut out);
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Serialize a truncation result.
pub fn write_truncation(t: &TruncationResult) -> String {
    let mut out = String::new();
    match t.method {
        TruncationMethod::Classical => out.push_str("method classical\n"),
        TruncationMethod::Folded => out.push_str("method folded\n"),
    }
    if let Some(alpha) = &t.alpha {
        out.push_str(&format!("alpha {alpha}\n"));
    }
    out.push_str(&write_polymatrix(&t.matrix, None));
    out
}

/// Serialize a family using the given ground-set labels.
pub fn write_family(family: &SetFamily, labels: &[String]) -> String {
    let mut out = String::new();
    for (i, set) in family.sets().iter().enumerate() {
        let names: Vec<String> = set.iter().map(|&e| labels[e].clone()).collect();
        out.push_str(&names.join(" "));
        if let Some(weights) = family.weights() {
            out.push_str(&format!(" w={}", weights[i]));
        }
        out.push('\n');
    }
    out
}

impl From<Error> for ParseError {
    fn from(e: Error) -> ParseError {
        ParseError::new(0, e.to_string())
    }
}
