use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::expr::parse_terms;
use super::poly::{GradedPoly, Monomial};
use super::rational::{format_rational, int, is_negative, Rational};
use super::table::GeneratorTable;
use super::KernelError;

/// Polynomial in the base coordinates `x1, x2, ...` with rational
/// coefficients. Exponent vectors are stored without trailing zeros, so the
/// number of variables does not need to be known in advance.
#[derive(Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct BasePoly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl BasePoly {
    pub fn zero() -> Self {
        BasePoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = BasePoly::default();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    /// The coordinate `x_{i+1}`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        let mut p = BasePoly::default();
        p.terms.insert(e, Rational::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = BasePoly::default();
        for (e, c) in terms {
            p.add_term(trim(e), c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Number of variables actually used (highest index + 1).
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return BasePoly::default();
        }
        BasePoly {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Partial derivative with respect to `x_{i+1}`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = BasePoly::default();
        for (e, c) in &self.terms {
            if e.len() > i && e[i] > 0 {
                let mut e2 = e.clone();
                let k = e2[i];
                e2[i] -= 1;
                out.add_term(trim(e2), c * int(k as i64));
            }
        }
        out
    }

    /// Evaluates at a point; missing coordinates are taken to be zero.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let xi = point.get(i).cloned().unwrap_or_else(Rational::zero);
                for _ in 0..k {
                    t *= &xi;
                }
            }
            acc += t;
        }
        acc
    }

    /// Embeds into a graded table; `positions[i]` is the degree-0 generator
    /// standing for `x_{i+1}`.
    pub fn to_graded(
        &self,
        table: &Arc<GeneratorTable>,
        positions: &[usize],
    ) -> Result<GradedPoly, KernelError> {
        let mut out = GradedPoly::zero(table);
        for (e, c) in &self.terms {
            let mut exps = vec![0u32; table.len()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pos = *positions.get(i).ok_or_else(|| {
                    KernelError::UnknownGenerator(format!(
                        "x{} (base has {} coordinates)",
                        i + 1,
                        positions.len()
                    ))
                })?;
                exps[pos] = k;
            }
            out += &GradedPoly::from_term(table, Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Parses an expression in the variables `x1, x2, ...`.
    pub fn parse(s: &str) -> Result<Self, KernelError> {
        let mut out = BasePoly::default();
        for (c, factors) in parse_terms(s)? {
            let mut e: Vec<u32> = Vec::new();
            for (name, k) in factors {
                let idx = name
                    .strip_prefix('x')
                    .and_then(|r| r.parse::<usize>().ok())
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| KernelError::UnknownGenerator(name.clone()))?;
                if e.len() < idx {
                    e.resize(idx, 0);
                }
                e[idx - 1] += k;
            }
            out.add_term(trim(e), c);
        }
        Ok(out)
    }
}

impl Zero for BasePoly {
    fn zero() -> Self {
        BasePoly::default()
    }
    fn is_zero(&self) -> bool {
        BasePoly::is_zero(self)
    }
}

impl One for BasePoly {
    fn one() -> Self {
        BasePoly::int(1)
    }
}

impl fmt::Debug for BasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasePoly({self})")
    }
}

impl fmt::Display for BasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let negative = is_negative(c);
            let abs = if negative { -c.clone() } else { c.clone() };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, k)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add<&BasePoly> for &BasePoly {
    type Output = BasePoly;
    fn add(self, rhs: &BasePoly) -> BasePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub<&BasePoly> for &BasePoly {
    type Output = BasePoly;
    fn sub(self, rhs: &BasePoly) -> BasePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&BasePoly> for &BasePoly {
    type Output = BasePoly;
    fn mul(self, rhs: &BasePoly) -> BasePoly {
        let mut out = BasePoly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let n = e1.len().max(e2.len());
                let e: Vec<u32> = (0..n)
                    .map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &BasePoly {
    type Output = BasePoly;
    fn neg(self) -> BasePoly {
        self.scale(&int(-1))
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<BasePoly> for BasePoly {
            type Output = BasePoly;
            fn $m(self, rhs: BasePoly) -> BasePoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for BasePoly {
    type Output = BasePoly;
    fn neg(self) -> BasePoly {
        (&self).neg()
    }
}
