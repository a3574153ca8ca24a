//! Text formats for matrices, complexes, filtrations and barcodes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::barcode::{Bar, Barcode, Chain, Interval};
use crate::matrix::Matrix;
use crate::rings::{EuclideanDomain, Field};
use crate::simplicial::Orientation;

/// A parse error; `line` is 1-based, 0 when no single line is to blame.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

/// Coefficient ring named on the command line or in a matrix header:
/// `z`, `q`, `z<p>`, `qx`, `z<p>x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Z,
    Q,
    Zp(u64),
    Qx,
    Zpx(u64),
}

impl RingSpec {
    pub fn is_field(&self) -> bool {
        matches!(self, RingSpec::Q | RingSpec::Zp(_))
    }
}

impl FromStr for RingSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let lower = s.trim().to_ascii_lowercase();
        let prime = |digits: &str| -> Result<u64, String> {
            let p: u64 = digits.parse().map_err(|_| format!("unknown ring {s:?}"))?;
            crate::rings::PrimeField::new(p).map_err(|e| e.to_string())?;
            Ok(p)
        };
        match lower.as_str() {
            "z" => Ok(RingSpec::Z),
            "q" => Ok(RingSpec::Q),
            "qx" => Ok(RingSpec::Qx),
            _ => match lower.strip_prefix('z') {
                Some(rest) => match rest.strip_suffix('x') {
                    Some(digits) => Ok(RingSpec::Zpx(prime(digits)?)),
                    None => Ok(RingSpec::Zp(prime(rest)?)),
                },
                None => Err(format!("unknown ring {s:?}; expected z, q, z<p>, qx or z<p>x")),
            },
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Z => write!(f, "z"),
            RingSpec::Q => write!(f, "q"),
            RingSpec::Zp(p) => write!(f, "z{p}"),
            RingSpec::Qx => write!(f, "qx"),
            RingSpec::Zpx(p) => write!(f, "z{p}x"),
        }
    }
}

/// Meaningful lines with their 1-based numbers: comments after `#` and
/// blank lines are dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// A matrix file before its entries are interpreted in a ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixText {
    pub ring: RingSpec,
    pub rows: usize,
    pub cols: usize,
    /// `(line, tokens)` per matrix row.
    pub entries: Vec<(usize, Vec<String>)>,
    pub row_degrees: Option<Vec<usize>>,
    pub col_degrees: Option<Vec<usize>>,
}

fn parse_degrees(line: usize, tokens: &[&str], expected: usize, what: &str) -> Result<Vec<usize>, FormatError> {
    if tokens.len() != expected {
        return err(line, format!("{what} lists {} degrees, expected {expected}", tokens.len()));
    }
    tokens
        .iter()
        .map(|t| t.parse().or_else(|_| err(line, format!("bad degree {t:?}"))))
        .collect()
}

pub fn parse_matrix_text(text: &str) -> Result<MatrixText, FormatError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return err(0, "empty matrix file");
    };
    let h: Vec<&str> = header.split_whitespace().collect();
    let [m, n, ring] = h[..] else {
        return err(hl, "header must be `rows cols ring`");
    };
    let rows: usize = m.parse().or_else(|_| err(hl, format!("bad row count {m:?}")))?;
    let cols: usize = n.parse().or_else(|_| err(hl, format!("bad column count {n:?}")))?;
    let ring: RingSpec = ring.parse().or_else(|e: String| err(hl, e))?;
    let mut out = MatrixText {
        ring,
        rows,
        cols,
        entries: Vec::new(),
        row_degrees: None,
        col_degrees: None,
    };
    for (ln, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "rowdeg" => out.row_degrees = Some(parse_degrees(ln, &tokens[1..], rows, "rowdeg")?),
            "coldeg" => out.col_degrees = Some(parse_degrees(ln, &tokens[1..], cols, "coldeg")?),
            _ => {
                if out.entries.len() == rows {
                    return err(ln, format!("more than {rows} matrix rows"));
                }
                if tokens.len() != cols {
                    return err(ln, format!("row has {} entries, expected {cols}", tokens.len()));
                }
                out.entries.push((ln, tokens.iter().map(|t| t.to_string()).collect()));
            }
        }
    }
    if out.entries.len() != rows {
        return err(0, format!("found {} matrix rows, expected {rows}", out.entries.len()));
    }
    if out.row_degrees.is_some() != out.col_degrees.is_some() {
        return err(0, "graded matrices need both rowdeg and coldeg");
    }
    Ok(out)
}

impl MatrixText {
    pub fn matrix<R: EuclideanDomain>(&self, ring: &R) -> Result<Matrix<R::Elem>, FormatError> {
        let rows = self
            .entries
            .iter()
            .map(|(ln, tokens)| {
                tokens
                    .iter()
                    .map(|t| ring.parse_elem(t).or_else(|e| err(*ln, e.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if self.rows == 0 || self.cols == 0 {
            return Ok(Matrix::zeros(ring, self.rows, self.cols));
        }
        Matrix::from_rows(rows).or_else(|e| err(0, e.to_string()))
    }
}

/// Optional `@order` header followed by one simplex per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexText {
    pub order: Option<Vec<String>>,
    pub simplices: Vec<(usize, Vec<String>)>,
}

fn order_line(line: usize, rest: &str) -> Result<Vec<String>, FormatError> {
    let order: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
    if order.is_empty() {
        return err(line, "@order lists no vertices");
    }
    Ok(order)
}

pub fn parse_complex_text(text: &str) -> Result<ComplexText, FormatError> {
    let mut out = ComplexText {
        order: None,
        simplices: Vec::new(),
    };
    for (ln, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("@order") {
            if out.order.is_some() || !out.simplices.is_empty() {
                return err(ln, "@order must come once, before any simplex");
            }
            out.order = Some(order_line(ln, rest)?);
        } else if line.starts_with('@') {
            return err(ln, format!("unknown directive {line:?}"));
        } else {
            out.simplices.push((ln, line.split_whitespace().map(str::to_string).collect()));
        }
    }
    Ok(out)
}

/// Optional `@order` header followed by lines `t v0 v1 ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationText {
    pub order: Option<Vec<String>>,
    pub events: Vec<(usize, Vec<String>)>,
    pub lines: Vec<usize>,
}

pub fn parse_filtration_text(text: &str) -> Result<FiltrationText, FormatError> {
    let complex = parse_complex_text(text)?;
    let mut out = FiltrationText {
        order: complex.order,
        events: Vec::new(),
        lines: Vec::new(),
    };
    for (ln, mut tokens) in complex.simplices {
        let t = tokens.remove(0);
        let t: usize = t
            .parse()
            .or_else(|_| err(ln, format!("birth time {t:?} is not a natural number")))?;
        if tokens.is_empty() {
            return err(ln, "line has a birth time but no vertices");
        }
        out.events.push((t, tokens));
        out.lines.push(ln);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct BarcodeJson {
    field: String,
    max_dim: Option<usize>,
    bars: Vec<BarJson>,
}

#[derive(Serialize, Deserialize)]
struct BarJson {
    dim: usize,
    birth: usize,
    death: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rep: Option<Vec<(String, String)>>,
}

/// Barcode as JSON. Representatives list `[coefficient, simplex]` pairs with
/// the simplex as space-separated vertex names.
pub fn barcode_to_json<F: Field>(field: &F, orientation: &Orientation, bc: &Barcode<F::Elem>) -> String {
    let doc = BarcodeJson {
        field: bc.field.clone(),
        max_dim: bc.dims.len().checked_sub(1),
        bars: bc
            .iter()
            .map(|b| BarJson {
                dim: b.dim,
                birth: b.interval.birth(),
                death: b.interval.death(),
                rep: b.representative.as_ref().map(|c| {
                    c.terms()
                        .iter()
                        .map(|(s, e)| (field.format_elem(e), orientation.tokens(s)))
                        .collect()
                }),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("barcode serializes")
}

pub fn barcode_from_json<F: Field>(
    field: &F,
    orientation: &Orientation,
    text: &str,
) -> Result<Barcode<F::Elem>, FormatError> {
    let doc: BarcodeJson =
        serde_json::from_str(text).or_else(|e| err(e.line(), e.to_string()))?;
    let top = doc.bars.iter().map(|b| b.dim).max();
    let len = match (doc.max_dim, top) {
        (Some(m), Some(t)) if t > m => return err(0, format!("bar of dim {t} exceeds max_dim {m}")),
        (Some(m), _) => m + 1,
        (None, Some(t)) => t + 1,
        (None, None) => 0,
    };
    let mut dims: Vec<Vec<Bar<F::Elem>>> = vec![Vec::new(); len];
    for b in doc.bars {
        let interval = Interval::new(b.birth, b.death)
            .ok_or_else(|| FormatError {
                line: 0,
                message: format!("empty interval [{}, {:?})", b.birth, b.death),
            })?;
        let representative = match b.rep {
            None => None,
            Some(terms) => {
                let mut parsed = Vec::new();
                for (coef, simplex) in terms {
                    let tokens: Vec<&str> = simplex.split_whitespace().collect();
                    let (s, sign) = orientation.canonicalize(&tokens).or_else(|e| err(0, e.to_string()))?;
                    let c = field.parse_elem(&coef).or_else(|e| err(0, e.to_string()))?;
                    parsed.push((s, if sign > 0 { c } else { field.neg(&c) }));
                }
                Some(Chain::new(field, parsed))
            }
        };
        dims[b.dim].push(Bar {
            dim: b.dim,
            interval,
            representative,
        });
    }
    Ok(Barcode { field: doc.field, dims })
}

/// One `dim n: [b, d)` line per bar, `inf` for an infinite death.
pub fn barcode_to_text<T>(bc: &Barcode<T>) -> String {
    bc.iter()
        .map(|b| format!("dim {}: {}\n", b.dim, b.interval))
        .collect()
}
