//! Text grammar for golden rationals.
//!
//! Accepted forms (whitespace ignored):
//!
//! * `INT[/INT]` — a rational, e.g. `3`, `-4/3`
//! * `INT[/INT](+|-)INT[/INT]t` — e.g. `2-1t`, `1/2+1/2 t`
//! * `[INT[/INT]]t` — e.g. `t`, `-t`, `3/2t`
//! * `tau^k` (or `t^k`), `tau`, `sigma`, optionally with a rational coefficient
//!
//! More generally any signed sum of rational and `t` terms is accepted.

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::golden::{Golden, GoldenInt};
use crate::error::{Error, Result};

fn err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

pub fn parse_golden<T: GoldenInt>(input: &str) -> Result<Golden<T>> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.replace("tau", "t");
    if s.is_empty() {
        return Err(err(input, "empty input"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'/' | b'+' | b'-' | b'^' | b'(') {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);

    let mut acc = Golden::<T>::zero();
    for term in terms {
        acc += &parse_term(input, term)?;
    }
    Ok(acc)
}

fn parse_term<T: GoldenInt>(input: &str, term: &str) -> Result<Golden<T>> {
    let (neg, body) = match term.as_bytes().first() {
        Some(b'+') => (false, &term[1..]),
        Some(b'-') => (true, &term[1..]),
        _ => (false, term),
    };
    if body.is_empty() {
        return Err(err(input, "dangling sign"));
    }
    let (coeff_text, unit) = split_unit(input, body)?;
    let mut coeff: Ratio<T> = if coeff_text.is_empty() {
        Ratio::one()
    } else {
        parse_ratio(input, coeff_text)?
    };
    if neg {
        coeff = -coeff;
    }
    Ok(unit.scale(&coeff))
}

/// Splits a term body into its rational coefficient text and the golden
/// factor it multiplies (`1`, `t`, `t^k` or `sigma`).
fn split_unit<'a, T: GoldenInt>(input: &str, body: &'a str) -> Result<(&'a str, Golden<T>)> {
    if let Some(c) = body.strip_suffix("sigma") {
        return Ok((c.trim_end_matches('*'), Golden::sigma()));
    }
    if let Some(pos) = body.find("t^") {
        let exp = body[pos + 2..].trim_start_matches('(').trim_end_matches(')');
        let k: i64 = exp.parse().map_err(|_| err(input, format!("bad exponent `{exp}`")))?;
        return Ok((body[..pos].trim_end_matches('*'), Golden::tau_pow(k)));
    }
    Ok(match body.strip_suffix('t') {
        Some(c) => (c.trim_end_matches('*'), Golden::tau()),
        None => (body, Golden::one()),
    })
}

fn parse_ratio<T: GoldenInt>(input: &str, text: &str) -> Result<Ratio<T>> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer: T = n.parse().map_err(|_| err(input, format!("bad integer `{n}`")))?;
    let denom: T = match d {
        Some(d) => d.parse().map_err(|_| err(input, format!("bad integer `{d}`")))?,
        None => T::one(),
    };
    if denom.is_zero() {
        return Err(err(input, "zero denominator"));
    }
    Ok(Ratio::new(numer, denom))
}

/// Parses a plain rational `p[/q]`.
pub fn parse_rational<T: GoldenInt>(input: &str) -> Result<Ratio<T>> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, s.trim_start_matches('+').to_string()),
    };
    let r = parse_ratio(input, &body)?;
    Ok(if neg { -r } else { r })
}
