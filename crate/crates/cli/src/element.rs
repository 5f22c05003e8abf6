//! Linear combinations of basis labels: `2*e11 - 1/2*e12 + e21`, and
//! crossed-product elements `t@1 + u@g`.

use pact_core::crossed::CrossedProduct;
use pact_core::field::{Field, Scalar};
use pact_core::group::Group;
use pact_core::linalg::{add, axpy, Vector};

use crate::ast::{Pos, Text};
use crate::error::{CliError, Result};

/// A signed term with its character offset inside the expression.
struct Term<'a> {
    negative: bool,
    body: &'a str,
    offset: usize,
}

fn split_terms(text: &str) -> Vec<Term<'_>> {
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '+' | '-' if depth == 0 => {
                let prev = text[..i].trim_end();
                // a sign directly after `*` or `/` belongs to the coefficient
                if prev.ends_with('*') || prev.ends_with('/') {
                    continue;
                }
                if !text[start..i].trim().is_empty() {
                    terms.push(Term { negative, body: &text[start..i], offset: start });
                }
                negative = ch == '-';
                start = i + 1;
            }
            _ => {}
        }
    }
    terms.push(Term { negative, body: &text[start..], offset: start });
    terms
}

fn at(base: Pos, text: &str, offset: usize) -> Pos {
    let skipped = text[offset..].len() - text[offset..].trim_start().len();
    Pos { line: base.line, col: base.col + text[..offset + skipped].chars().count() }
}

fn scalar(field: Field, text: &str, pos: Pos) -> Result<Scalar> {
    field.parse(text.trim()).map_err(|e| CliError::semantic(pos, format!("bad coefficient `{}`: {e}", text.trim())))
}

/// `(coefficient, name)` for each term; a bare number is a coefficient of `None`.
/// A term equal to one of `labels` is a basis element even if it reads as a number.
fn terms(field: Field, labels: &[String], expr: &Text) -> Result<Vec<(Scalar, Option<String>, Pos)>> {
    let text = expr.as_str();
    let mut out = Vec::new();
    for term in split_terms(text) {
        let pos = at(expr.pos, text, term.offset);
        let body = term.body.trim();
        if body.is_empty() {
            return Err(CliError::semantic(pos, "empty term"));
        }
        let (coeff, name) = match body.split_once('*') {
            Some((c, n)) => (scalar(field, c, pos)?, Some(n.trim().to_string())),
            None if !labels.iter().any(|l| l == body) && field.parse(body).is_ok() => (scalar(field, body, pos)?, None),
            None => (field.one(), Some(body.to_string())),
        };
        let coeff = if term.negative { -&coeff } else { coeff };
        out.push((coeff, name, pos));
    }
    Ok(out)
}

/// Vector of an expression over the basis `labels`; `0` is the zero vector.
pub fn combination(field: Field, labels: &[String], expr: &Text) -> Result<Vector> {
    let mut v = vec![field.zero(); labels.len()];
    for (coeff, name, pos) in terms(field, labels, expr)? {
        match name {
            None if coeff.is_zero() => {}
            None => return Err(CliError::semantic(pos, "a nonzero constant needs a basis element, as in `2*e1`")),
            Some(name) => {
                let k = labels.iter().position(|l| *l == name).ok_or_else(|| {
                    CliError::semantic(pos, format!("unknown basis element `{name}`; the basis is {}", labels.join(", ")))
                })?;
                v[k] = &v[k] + &coeff;
            }
        }
    }
    Ok(v)
}

/// `Σ c a@g` read as `Σ c a δ_g`, with `a` a base-algebra combination.
pub fn crossed_element(cp: &CrossedProduct, expr: &Text) -> Result<Vector> {
    let action = cp.action();
    let base = action.base();
    let group: &Group = action.group();
    let field = cp.field();
    let mut parts = vec![vec![field.zero(); base.dim()]; group.order()];
    for (coeff, name, pos) in terms(field, &[], expr)? {
        let Some(name) = name else {
            if coeff.is_zero() {
                continue;
            }
            return Err(CliError::semantic(pos, "a crossed-product term reads `a@g`"));
        };
        let (a, g) = name
            .rsplit_once('@')
            .ok_or_else(|| CliError::semantic(pos, format!("`{name}` lacks `@<group element>`")))?;
        let gi = group
            .index_of(g.trim())
            .ok_or_else(|| CliError::semantic(pos, format!("unknown group element `{}`", g.trim())))?;
        let k = base
            .label_index(a.trim())
            .ok_or_else(|| CliError::semantic(pos, format!("unknown basis element `{}`", a.trim())))?;
        axpy(&mut parts[gi], &coeff, &base.basis(k));
    }
    let mut out = cp.zero();
    for g in group.elements() {
        let x = cp.element(g, &parts[g]).ok_or_else(|| {
            CliError::semantic(expr.pos, format!("{} does not lie in D_{}", base.format(&parts[g]), group.label(g)))
        })?;
        out = add(&out, &x);
    }
    Ok(out)
}
