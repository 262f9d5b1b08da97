//! Monomial-coefficient polynomial helpers over GF(2^m).
//!
//! Ascending order: `p[i]` is the coefficient of x^i. Used by the generic
//! modular-approach solver (which works in the monomial basis), the classic
//! baseline decoder and a number of test oracles. All arithmetic is counted
//! through the [`Field`] handle.

use crate::gf::{Field, FieldElement};

/// Degree of `p`, ignoring trailing zeros; `None` for the zero polynomial.
pub fn degree(p: &[FieldElement]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn trim(mut p: Vec<FieldElement>) -> Vec<FieldElement> {
    while p.len() > 1 && p.last() == Some(&FieldElement::ZERO) {
        p.pop();
    }
    p
}

pub fn add(gf: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let len = a.len().max(b.len());
    let mut out = vec![FieldElement::ZERO; len];
    for (i, &c) in a.iter().enumerate() {
        out[i] = c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = gf.add(out[i], c);
    }
    out
}

pub fn mul(gf: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return vec![FieldElement::ZERO];
    }
    let mut out = vec![FieldElement::ZERO; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = gf.add(out[i + j], gf.mul(ai, bj));
        }
    }
    out
}

pub fn scale(gf: &Field, p: &[FieldElement], s: FieldElement) -> Vec<FieldElement> {
    p.iter().map(|&c| gf.mul(c, s)).collect()
}

/// Horner evaluation over every coefficient slot (the leading multiply with
/// a zero accumulator is executed and counted).
pub fn eval(gf: &Field, p: &[FieldElement], x: FieldElement) -> FieldElement {
    let mut acc = FieldElement::ZERO;
    for &c in p.iter().rev() {
        acc = gf.add(gf.mul(acc, x), c);
    }
    acc
}

/// Multiply by the linear factor (x + r); in characteristic 2, (x - r) is
/// the same thing.
pub fn mul_linear(gf: &Field, p: &[FieldElement], r: FieldElement) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::ZERO; p.len() + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i + 1] = gf.add(out[i + 1], c);
        out[i] = gf.add(out[i], gf.mul(r, c));
    }
    out
}

/// Formal derivative: in characteristic 2 only the odd-degree terms survive.
pub fn derivative(p: &[FieldElement]) -> Vec<FieldElement> {
    if p.len() <= 1 {
        return vec![FieldElement::ZERO];
    }
    let mut d = vec![FieldElement::ZERO; p.len() - 1];
    for i in (1..p.len()).step_by(2) {
        d[i - 1] = p[i];
    }
    d
}
