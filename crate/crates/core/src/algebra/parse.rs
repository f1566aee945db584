//! `"3/2*e12 - e21 + (1+sqrt)*(1,e11)"` style element strings.

use super::{GSkewfield, GradedElement};
use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElementParseError {
    #[error("empty term in {0:?}")]
    EmptyTerm(String),
    #[error("unknown basis element {0:?}")]
    UnknownBasis(String),
    #[error("bad coefficient in term {term:?}: {source}")]
    Coefficient { term: String, source: ScalarError },
    #[error("unbalanced parentheses in {0:?}")]
    Unbalanced(String),
}

/// Splits at top-level `+`/`-` that are not part of an exponent-like
/// operator sequence (`*-`, `/-`).
fn split_terms(s: &str) -> Result<Vec<&str>, ElementParseError> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut start = 0;
    for i in 0..bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(ElementParseError::Unbalanced(s.to_string()));
                }
            }
            b'+' | b'-' if depth == 0 && i > start => {
                let prev = s[..i].trim_end().as_bytes().last().copied();
                if !matches!(prev, Some(b'*') | Some(b'/') | Some(b'+') | Some(b'-')) {
                    out.push(&s[start..i]);
                    start = i;
                }
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(ElementParseError::Unbalanced(s.to_string()));
    }
    out.push(&s[start..]);
    Ok(out)
}

fn last_top_level_star(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    let mut pos = None;
    for (i, b) in s.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'*' if depth == 0 => pos = Some(i),
            _ => {}
        }
    }
    pos
}

pub(super) fn parse_element(q: &GSkewfield, s: &str) -> Result<GradedElement, ElementParseError> {
    let s = s.trim();
    let mut x = GradedElement::zero();
    if s == "0" {
        return Ok(x);
    }
    let field = q.field();
    let grp = q.groupoid();
    for raw in split_terms(s)? {
        let term = raw.trim();
        let (neg, body) = match term.as_bytes().first() {
            Some(b'-') => (true, term[1..].trim()),
            Some(b'+') => (false, term[1..].trim()),
            Some(_) => (false, term),
            None => return Err(ElementParseError::EmptyTerm(s.to_string())),
        };
        if body.is_empty() {
            return Err(ElementParseError::EmptyTerm(s.to_string()));
        }
        let (coeff, basis) = match last_top_level_star(body) {
            Some(i) => (body[..i].trim(), body[i + 1..].trim()),
            None => ("1", body),
        };
        let g = grp
            .lookup(basis)
            .map_err(|_| ElementParseError::UnknownBasis(basis.to_string()))?;
        let mut c = field.parse(coeff).map_err(|source| ElementParseError::Coefficient {
            term: term.to_string(),
            source,
        })?;
        if neg {
            c = -c;
        }
        x.add_term(g, c);
    }
    Ok(x)
}

pub(super) fn format_element(q: &GSkewfield, x: &GradedElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (g, c)) in x.terms().enumerate() {
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            // only strip the sign when the remainder is a single factor
            Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
            _ => (false, text),
        };
        if i > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        let name = q.groupoid().name(g);
        if mag == "1" {
            out.push_str(name);
        } else if mag.contains(['+', '-']) {
            out.push_str(&format!("({mag})*{name}"));
        } else {
            out.push_str(&format!("{mag}*{name}"));
        }
    }
    out
}
