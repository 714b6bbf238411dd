//! Line-oriented text formats for matrices and GRS specs.
//!
//! ```text
//! field p=11 s=1 mod=0,1
//! matrix 3 8
//! 1 1 1 1 1 1 1 1
//! ...
//! ```
//!
//! A spec file has the same first line followed by `alpha:`, `v:` and `k:`
//! lines. Blank lines and lines starting with `#` are ignored on input.

use std::sync::Arc;

use itertools::Itertools;
use thiserror::Error;

use crate::codes::{CodeError, GrsSpec};
use crate::gf::{FieldError, FieldSpec, Fq, ProjElem};
use crate::linalg::{LinalgError, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input, expected {0}")]
    Truncated(&'static str),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// `field p=<p> s=<s> mod=<c0,...,cs>`
pub fn field_header(field: &FieldSpec) -> String {
    format!("field p={} s={} mod={}", field.p(), field.s(), field.modulus().iter().join(","))
}

pub fn write_matrix(m: &Matrix) -> String {
    let mut out = field_header(m.field());
    out.push_str(&format!("\nmatrix {} {}\n", m.rows(), m.cols()));
    for i in 0..m.rows() {
        out.push_str(&m.row(i).iter().join(" "));
        out.push('\n');
    }
    out
}

pub fn write_spec(field: &FieldSpec, spec: &GrsSpec) -> String {
    format!(
        "{}\nalpha: {}\nv: {}\nk: {}\n",
        field_header(field),
        spec.alpha().iter().join(" "),
        spec.v().iter().join(" "),
        spec.k()
    )
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate() }
    }

    fn next(&mut self, what: &'static str) -> Result<(usize, &'a str), FormatError> {
        for (i, l) in self.inner.by_ref() {
            let l = l.trim();
            if !l.is_empty() && !l.starts_with('#') {
                return Ok((i + 1, l));
            }
        }
        Err(FormatError::Truncated(what))
    }

    fn finish(&mut self) -> Result<(), FormatError> {
        match self.next("") {
            Ok((line, _)) => Err(syntax(line, "trailing content")),
            Err(_) => Ok(()),
        }
    }
}

fn number<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T, FormatError> {
    tok.parse().map_err(|_| syntax(line, format!("bad number {tok:?}")))
}

fn parse_header(line: usize, text: &str) -> Result<Arc<FieldSpec>, FormatError> {
    let mut toks = text.split_whitespace();
    if toks.next() != Some("field") {
        return Err(syntax(line, "expected `field p=.. s=.. mod=..`"));
    }
    let (mut p, mut s, mut modulus) = (None, None, None);
    for tok in toks {
        let (key, val) = tok.split_once('=').ok_or_else(|| syntax(line, format!("bad token {tok:?}")))?;
        match key {
            "p" => p = Some(number::<u32>(line, val)?),
            "s" => s = Some(number::<u32>(line, val)?),
            "mod" => modulus = Some(val.split(',').map(|c| number::<u32>(line, c)).collect::<Result<Vec<_>, _>>()?),
            _ => return Err(syntax(line, format!("unknown key {key:?}"))),
        }
    }
    let p = p.ok_or_else(|| syntax(line, "missing p="))?;
    let s = s.unwrap_or(1);
    Ok(Arc::new(FieldSpec::new(p, s, modulus.as_deref())?))
}

fn elem(field: &FieldSpec, line: usize, tok: &str) -> Result<Fq, FormatError> {
    let e: u32 = number(line, tok)?;
    field.elem(e).map_err(|_| syntax(line, format!("{e} is not an element of GF({})", field.q())))
}

pub fn parse_matrix(text: &str) -> Result<Matrix, FormatError> {
    let mut lines = Lines::new(text);
    let (l, h) = lines.next("field header")?;
    let field = parse_header(l, h)?;
    let (l, dims) = lines.next("matrix dimensions")?;
    let toks: Vec<&str> = dims.split_whitespace().collect();
    let [kw, k, n] = toks.as_slice() else {
        return Err(syntax(l, "expected `matrix <k> <n>`"));
    };
    if *kw != "matrix" {
        return Err(syntax(l, "expected `matrix <k> <n>`"));
    }
    let (k, n): (usize, usize) = (number(l, k)?, number(l, n)?);
    let mut data = Vec::with_capacity(k * n);
    for _ in 0..k {
        let (l, row) = lines.next("matrix row")?;
        let before = data.len();
        for tok in row.split_whitespace() {
            data.push(elem(&field, l, tok)?);
        }
        if data.len() - before != n {
            return Err(syntax(l, format!("expected {n} entries, found {}", data.len() - before)));
        }
    }
    lines.finish()?;
    Ok(Matrix::new(field, k, n, data)?)
}

fn keyed<'a>(lines: &mut Lines<'a>, key: &'static str) -> Result<(usize, &'a str), FormatError> {
    let (l, text) = lines.next(key)?;
    let rest = text
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| syntax(l, format!("expected `{key}:`")))?;
    Ok((l, rest))
}

pub fn parse_spec(text: &str) -> Result<(Arc<FieldSpec>, GrsSpec), FormatError> {
    let mut lines = Lines::new(text);
    let (l, h) = lines.next("field header")?;
    let field = parse_header(l, h)?;
    let (l, a) = keyed(&mut lines, "alpha")?;
    let alpha = a
        .split_whitespace()
        .map(|tok| {
            let x: ProjElem = tok.parse().map_err(|_| syntax(l, format!("bad point {tok:?}")))?;
            if field.contains_proj(x) {
                Ok(x)
            } else {
                Err(syntax(l, format!("{x} is not in GF({}) or inf", field.q())))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let (l, vs) = keyed(&mut lines, "v")?;
    let v = vs.split_whitespace().map(|t| elem(&field, l, t)).collect::<Result<Vec<_>, _>>()?;
    let (l, k) = keyed(&mut lines, "k")?;
    let k: usize = number(l, k.trim())?;
    lines.finish()?;
    let spec = GrsSpec::new(alpha, v, k)?;
    Ok((field, spec))
}
