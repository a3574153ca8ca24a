//! Textual element syntax: integers `-?[0-9]+`, rationals `p/q`, polynomials
//! as sums of `c x^d` terms (`3x^2+1`, `-x`, `1/2x^3-4`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub(super) fn integer(text: &str) -> Result<BigInt, String> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err("expected an integer".into());
    }
    text.parse::<BigInt>().map_err(|e| e.to_string())
}

pub(super) fn rational(text: &str) -> Result<BigRational, String> {
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(integer(text)?)),
        Some((n, d)) => {
            let n = integer(n)?;
            let d = integer(d)?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// A parsed polynomial term: sign, coefficient text (empty when implicit), degree.
pub(super) struct Term<'a> {
    pub negative: bool,
    pub coef: &'a str,
    pub degree: usize,
}

pub(super) fn poly_terms(text: &str) -> Result<Vec<Term<'_>>, String> {
    if text.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut pieces = Vec::new();
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        if (ch == '+' || ch == '-') && i > start {
            pieces.push(&text[start..i]);
            start = i;
        }
    }
    pieces.push(&text[start..]);

    pieces
        .into_iter()
        .map(|piece| {
            let (negative, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece),
            };
            if body.is_empty() {
                return Err(format!("dangling sign in {text:?}"));
            }
            match body.split_once('x') {
                None => Ok(Term { negative, coef: body, degree: 0 }),
                Some((coef, rest)) => {
                    let coef = coef.strip_suffix('*').unwrap_or(coef);
                    let degree = if rest.is_empty() {
                        1
                    } else {
                        let exp = rest
                            .strip_prefix('^')
                            .ok_or_else(|| format!("unexpected {rest:?} after x"))?;
                        if exp.is_empty() || !exp.bytes().all(|b| b.is_ascii_digit()) {
                            return Err(format!("bad exponent {exp:?}"));
                        }
                        exp.parse::<usize>().map_err(|e| e.to_string())?
                    };
                    Ok(Term { negative, coef, degree })
                }
            }
        })
        .collect()
}
