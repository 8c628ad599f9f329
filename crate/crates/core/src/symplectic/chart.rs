use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::SymplecticError;
use crate::exterior::{mask_indices, Wedge};
use crate::kernel::{BasePoly, GeneratorTable, GradedPoly, KernelError, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    X,
    Alpha,
    A,
    P,
}

/// Darboux chart of `T*[k]A[1]`: generators `x1..xm` (degree 0),
/// `alpha1..alphan` (1), `a1..an` (k-1), `p1..pm` (k), in that table order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotangentChart {
    k: u32,
    m: usize,
    n: usize,
    table: Arc<GeneratorTable>,
}

impl CotangentChart {
    pub fn new(k: u32, m: usize, n: usize) -> Result<Self, SymplecticError> {
        if k < 3 {
            return Err(SymplecticError::InvalidChart(format!(
                "k must be at least 3, got {k}"
            )));
        }
        if n > 30 {
            return Err(SymplecticError::InvalidChart(format!(
                "rank {n} exceeds 30"
            )));
        }
        let gens = (1..=m)
            .map(|i| (format!("x{i}"), 0))
            .chain((1..=n).map(|j| (format!("alpha{j}"), 1)))
            .chain((1..=n).map(|j| (format!("a{j}"), k - 1)))
            .chain((1..=m).map(|i| (format!("p{i}"), k)));
        let table = GeneratorTable::new(gens)?;
        Ok(CotangentChart { k, m, n, table })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Base dimension.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Fiber rank.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn x_pos(&self, i: usize) -> usize {
        i
    }

    pub fn alpha_pos(&self, j: usize) -> usize {
        self.m + j
    }

    pub fn a_pos(&self, j: usize) -> usize {
        self.m + self.n + j
    }

    pub fn p_pos(&self, i: usize) -> usize {
        self.m + 2 * self.n + i
    }

    /// Kind and 0-based index of the generator at a table position.
    pub fn kind(&self, pos: usize) -> (GeneratorKind, usize) {
        let (m, n) = (self.m, self.n);
        if pos < m {
            (GeneratorKind::X, pos)
        } else if pos < m + n {
            (GeneratorKind::Alpha, pos - m)
        } else if pos < m + 2 * n {
            (GeneratorKind::A, pos - m - n)
        } else {
            (GeneratorKind::P, pos - m - 2 * n)
        }
    }

    pub fn x(&self, i: usize) -> GradedPoly {
        GradedPoly::generator(&self.table, self.x_pos(i))
    }

    pub fn alpha(&self, j: usize) -> GradedPoly {
        GradedPoly::generator(&self.table, self.alpha_pos(j))
    }

    pub fn a(&self, j: usize) -> GradedPoly {
        GradedPoly::generator(&self.table, self.a_pos(j))
    }

    pub fn p(&self, i: usize) -> GradedPoly {
        GradedPoly::generator(&self.table, self.p_pos(i))
    }

    pub fn x_positions(&self) -> Vec<usize> {
        (0..self.m).collect()
    }

    pub fn a_positions(&self) -> Vec<usize> {
        (0..self.n).map(|j| self.a_pos(j)).collect()
    }

    pub fn p_positions(&self) -> Vec<usize> {
        (0..self.m).map(|i| self.p_pos(i)).collect()
    }

    /// Positions of the momentum-type generators `a` and `p`.
    pub fn fiber_positions(&self) -> Vec<usize> {
        let mut v = self.a_positions();
        v.extend(self.p_positions());
        v
    }

    pub fn parse(&self, s: &str) -> Result<GradedPoly, SymplecticError> {
        Ok(GradedPoly::parse(&self.table, s)?)
    }

    pub fn embed_base(&self, f: &BasePoly) -> Result<GradedPoly, SymplecticError> {
        if f.num_vars() > self.m {
            return Err(KernelError::UnknownGenerator(format!(
                "{f} uses more than {} coordinates",
                self.m
            ))
            .into());
        }
        Ok(f.to_graded(&self.table, &self.x_positions())?)
    }

    /// True when the element involves only `x` and `alpha`.
    pub fn is_form(&self, f: &GradedPoly) -> bool {
        f.avoids(&self.fiber_positions())
    }

    /// Embeds a form written in the `alpha` frame.
    pub fn form_to_poly(&self, w: &Wedge) -> Result<GradedPoly, SymplecticError> {
        let mut out = GradedPoly::zero(&self.table);
        for (mask, c) in w.terms() {
            let mut term = self.embed_base(c)?;
            for j in mask_indices(*mask) {
                if j >= self.n {
                    return Err(SymplecticError::InvalidChart(format!(
                        "form index {} exceeds rank {}",
                        j + 1,
                        self.n
                    )));
                }
                term = &term * &self.alpha(j);
            }
            out += &term;
        }
        Ok(out)
    }

    /// Reads a pure form back into the `alpha` frame.
    pub fn poly_to_form(&self, f: &GradedPoly) -> Result<Wedge, SymplecticError> {
        if !self.is_form(f) {
            return Err(SymplecticError::MalformedSection(format!(
                "{f} is not a form"
            )));
        }
        let mut out = Wedge::zero(self.n);
        for (m, c) in f.terms() {
            let (mask, coeff) = self.split_monomial(m, c);
            out.add_term(mask, coeff);
        }
        Ok(out)
    }

    /// Reads an element with only `x` generators as a base polynomial.
    pub fn poly_to_base(&self, f: &GradedPoly) -> Result<BasePoly, SymplecticError> {
        let mut terms = Vec::new();
        for (m, c) in f.terms() {
            if m.exponents()[self.m..].iter().any(|&e| e > 0) {
                return Err(SymplecticError::MalformedSection(format!(
                    "{f} is not a base function"
                )));
            }
            terms.push((m.exponents()[..self.m].to_vec(), c.clone()));
        }
        Ok(BasePoly::from_terms(terms))
    }

    fn split_monomial(&self, m: &Monomial, c: &crate::kernel::Rational) -> (u32, BasePoly) {
        let e = m.exponents();
        let mut mask = 0u32;
        for j in 0..self.n {
            if e[self.alpha_pos(j)] > 0 {
                mask |= 1 << j;
            }
        }
        let base = BasePoly::from_terms([(e[..self.m].to_vec(), c.clone())]);
        (mask, base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_layout() {
        let c = CotangentChart::new(4, 2, 3).unwrap();
        let t = c.table();
        assert_eq!(t.len(), 2 + 3 + 3 + 2);
        assert_eq!(t.name(c.a_pos(1)), "a2");
        assert_eq!(t.degree(c.a_pos(0)), 3);
        assert_eq!(t.degree(c.p_pos(1)), 4);
        assert_eq!(c.kind(c.p_pos(1)), (GeneratorKind::P, 1));
    }

    #[test]
    fn rejects_small_k() {
        assert!(CotangentChart::new(2, 1, 1).is_err());
    }

    #[test]
    fn form_round_trip() {
        let c = CotangentChart::new(3, 2, 3).unwrap();
        let f = c
            .parse("x1*alpha1*alpha3 - 2*alpha2*alpha3 + x2^2*alpha1*alpha2")
            .unwrap();
        let w = c.poly_to_form(&f).unwrap();
        assert_eq!(c.form_to_poly(&w).unwrap(), f);
        assert!(c.poly_to_form(&c.parse("a1").unwrap()).is_err());
    }
}
