//! Sum-of-terms expression syntax shared by [`GradedPoly`] and
//! [`BasePoly`](super::BasePoly): `3/2*x1^2*alpha1 - a2 + 7`.

use std::sync::Arc;

use num_traits::One;

use super::poly::GradedPoly;
use super::rational::{parse_rational, Rational};
use super::table::{is_identifier, GeneratorTable};
use super::KernelError;

pub(crate) type Term = (Rational, Vec<(String, u32)>);

/// Splits an expression into signed terms of `coefficient * factor^exp * ...`.
pub(crate) fn parse_terms(input: &str) -> Result<Vec<Term>, KernelError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(KernelError::Parse("empty expression".into()));
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('^') {
            pieces.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            negative = ch == '-';
        } else {
            current.push(ch);
        }
    }
    pieces.push((negative, current));

    let mut terms = Vec::new();
    for (negative, body) in pieces {
        if body.is_empty() {
            return Err(KernelError::Parse(format!("dangling sign in `{input}`")));
        }
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(KernelError::Parse(format!("empty factor in `{input}`")));
            }
            let first = factor.chars().next().unwrap();
            if first.is_ascii_digit() {
                coeff *= parse_rational(factor)?;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: u32 = e
                        .parse()
                        .map_err(|_| KernelError::Parse(format!("bad exponent in `{factor}`")))?;
                    (n, e)
                }
                None => (factor, 1),
            };
            if !is_identifier(name) {
                return Err(KernelError::Parse(format!("bad factor `{factor}`")));
            }
            factors.push((name.to_string(), exp));
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((coeff, factors));
    }
    Ok(terms)
}

impl GradedPoly {
    /// Parses the [`Display`](std::fmt::Display) syntax. Factors are
    /// multiplied in the written order, so `alpha2*alpha1` parses to
    /// `-alpha1*alpha2`.
    pub fn parse(table: &Arc<GeneratorTable>, input: &str) -> Result<GradedPoly, KernelError> {
        let mut out = GradedPoly::zero(table);
        for (c, factors) in parse_terms(input)? {
            let mut term = GradedPoly::constant(table, c);
            for (name, e) in factors {
                let g = GradedPoly::var(table, &name)?;
                for _ in 0..e {
                    term = &term * &g;
                }
            }
            out += &term;
        }
        Ok(out)
    }
}
