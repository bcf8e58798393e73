//! Line-oriented text formats for matrices, representations and polynomials.
//!
//! Matrix block:
//!
//! ```text
//! # comment
//! field Fp2:3
//! dim 2          (or `dim <rows> <cols>`)
//! 1 0
//! 0 1
//! ```
//!
//! Representation: `rep <fieldspec> <n> <num_generators>` followed by that many
//! matrix blocks. Polynomial: `poly <fieldspec> <n_vars> <degree>` followed by
//! one `<coeff> : e1 e2 ... en` line per monomial.

use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};
use crate::forms::{FormError, HermitianForm};
use crate::isotropy::{HomogeneousPoly, IsotropyError};
use crate::linalg::{LinalgError, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Field { line: usize, source: FieldError },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Poly(#[from] IsotropyError),
}

fn syntax(line: usize, message: impl Into<String>) -> TextError {
    TextError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Lines {
            inner: it.peekable(),
            last: 0,
        }
    }

    fn next_line(&mut self, what: &str) -> Result<(usize, &'a str), TextError> {
        match self.inner.next() {
            Some((n, l)) => {
                self.last = n;
                Ok((n, l))
            }
            None => Err(syntax(
                self.last + 1,
                format!("unexpected end of input, expected {what}"),
            )),
        }
    }

    fn expect_end(&mut self) -> Result<(), TextError> {
        match self.inner.next() {
            Some((n, l)) => Err(syntax(n, format!("unexpected trailing line `{l}`"))),
            None => Ok(()),
        }
    }
}

fn parse_usize(line: usize, tok: Option<&str>, what: &str) -> Result<usize, TextError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("bad {what} `{tok}`")))
}

fn parse_field(line: usize, tok: Option<&str>) -> Result<FieldSpec, TextError> {
    let tok = tok.ok_or_else(|| syntax(line, "missing field spec"))?;
    tok.parse()
        .map_err(|source| TextError::Field { line, source })
}

fn parse_elem(line: usize, field: FieldSpec, tok: &str) -> Result<FieldElement, TextError> {
    field
        .parse(tok)
        .map_err(|source| TextError::Field { line, source })
}

fn read_matrix(lines: &mut Lines<'_>) -> Result<Matrix, TextError> {
    let (n, l) = lines.next_line("`field <spec>`")?;
    let mut toks = l.split_whitespace();
    if toks.next() != Some("field") {
        return Err(syntax(n, format!("expected `field <spec>`, found `{l}`")));
    }
    let field = parse_field(n, toks.next())?;
    if toks.next().is_some() {
        return Err(syntax(n, "trailing tokens after field spec"));
    }
    let (n, l) = lines.next_line("`dim <n>`")?;
    let mut toks = l.split_whitespace();
    if toks.next() != Some("dim") {
        return Err(syntax(n, format!("expected `dim <n>`, found `{l}`")));
    }
    let rows = parse_usize(n, toks.next(), "dimension")?;
    let cols = match toks.next() {
        Some(t) => parse_usize(n, Some(t), "column count")?,
        None => rows,
    };
    if toks.next().is_some() {
        return Err(syntax(n, "trailing tokens after dimensions"));
    }
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..rows {
        let (n, l) = lines.next_line(&format!("matrix row {}", i + 1))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != cols {
            return Err(syntax(
                n,
                format!("expected {cols} entries, found {}", toks.len()),
            ));
        }
        for (j, t) in toks.into_iter().enumerate() {
            m[(i, j)] = parse_elem(n, field, t)?;
        }
    }
    Ok(m)
}

pub fn parse_matrix(text: &str) -> Result<Matrix, TextError> {
    let mut lines = Lines::new(text);
    let m = read_matrix(&mut lines)?;
    lines.expect_end()?;
    Ok(m)
}

pub fn parse_form(text: &str) -> Result<HermitianForm, TextError> {
    Ok(HermitianForm::new(parse_matrix(text)?)?)
}

/// Writes `m` as a matrix block (no trailing newline).
pub fn format_matrix(m: &Matrix) -> String {
    let mut out = format!("field {}\n", m.field());
    if m.is_square() {
        out.push_str(&format!("dim {}", m.rows()));
    } else {
        out.push_str(&format!("dim {} {}", m.rows(), m.cols()));
    }
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        out.push('\n');
        out.push_str(&row.join(" "));
    }
    out
}

/// Parsed representation file: field, dimension and generators.
#[derive(Clone, Debug)]
pub struct RepFile {
    pub field: FieldSpec,
    pub dim: usize,
    pub generators: Vec<Matrix>,
}

pub fn parse_rep(text: &str) -> Result<RepFile, TextError> {
    let mut lines = Lines::new(text);
    let (n, l) = lines.next_line("`rep <field> <n> <num_generators>`")?;
    let mut toks = l.split_whitespace();
    if toks.next() != Some("rep") {
        return Err(syntax(
            n,
            format!("expected `rep <field> <n> <k>`, found `{l}`"),
        ));
    }
    let field = parse_field(n, toks.next())?;
    let dim = parse_usize(n, toks.next(), "dimension")?;
    let count = parse_usize(n, toks.next(), "generator count")?;
    if toks.next().is_some() {
        return Err(syntax(n, "trailing tokens in rep header"));
    }
    let mut generators = Vec::with_capacity(count);
    for _ in 0..count {
        let start = lines.last + 1;
        let g = read_matrix(&mut lines)?;
        if g.field() != field {
            return Err(syntax(
                start,
                format!("generator over {} in a rep over {field}", g.field()),
            ));
        }
        if g.rows() != dim || g.cols() != dim {
            return Err(syntax(
                start,
                format!(
                    "generator is {}x{}, expected {dim}x{dim}",
                    g.rows(),
                    g.cols()
                ),
            ));
        }
        generators.push(g);
    }
    lines.expect_end()?;
    Ok(RepFile {
        field,
        dim,
        generators,
    })
}

pub fn parse_poly(text: &str) -> Result<HomogeneousPoly, TextError> {
    let mut lines = Lines::new(text);
    let (n, l) = lines.next_line("`poly <field> <n_vars> <degree>`")?;
    let mut toks = l.split_whitespace();
    if toks.next() != Some("poly") {
        return Err(syntax(
            n,
            format!("expected `poly <field> <n_vars> <degree>`, found `{l}`"),
        ));
    }
    let field = parse_field(n, toks.next())?;
    let n_vars = parse_usize(n, toks.next(), "variable count")?;
    let degree = parse_usize(n, toks.next(), "degree")? as u32;
    if toks.next().is_some() {
        return Err(syntax(n, "trailing tokens in poly header"));
    }
    let mut terms = Vec::new();
    for (n, l) in lines.inner.by_ref() {
        lines.last = n;
        let (coeff, exps) = l
            .split_once(':')
            .ok_or_else(|| syntax(n, "expected `<coeff> : e1 ... en`"))?;
        let coeff = parse_elem(n, field, coeff.trim())?;
        let exps = exps
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| syntax(n, format!("bad exponent `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if exps.len() != n_vars {
            return Err(syntax(
                n,
                format!("expected {n_vars} exponents, found {}", exps.len()),
            ));
        }
        if exps.iter().sum::<u32>() != degree {
            return Err(syntax(n, format!("monomial is not of degree {degree}")));
        }
        terms.push((coeff, exps));
    }
    Ok(HomogeneousPoly::new(field, n_vars, degree, terms)?)
}

/// Writes a polynomial in the `poly` file format (no trailing newline).
pub fn format_poly(f: &HomogeneousPoly) -> String {
    let mut out = format!("poly {} {} {}", f.field(), f.n_vars(), f.degree());
    for (c, e) in f.monomials() {
        let exps: Vec<String> = e.iter().map(ToString::to_string).collect();
        out.push_str(&format!("\n{c} : {}", exps.join(" ")));
    }
    out
}
