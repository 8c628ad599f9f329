use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::{format_rational, int, is_negative, Rational};
use super::table::{same_table, GeneratorTable};
use super::KernelError;

/// Exponent vector in table order. Odd generators carry exponent 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self, table: &GeneratorTable) -> u32 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, e)| e * table.degree(i))
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of two normal-form monomials. Returns `None` when an odd
    /// generator would appear twice, otherwise the product together with the
    /// Koszul sign (`true` = negative) picked up while sorting the word
    /// `self · other` into table order.
    pub fn mul(&self, other: &Monomial, table: &GeneratorTable) -> Option<(Monomial, bool)> {
        let n = self.0.len();
        let mut odd_left_above = 0u32;
        let mut swaps = 0u32;
        let mut out = vec![0u32; n];
        for j in (0..n).rev() {
            let odd = table.is_odd(j);
            if odd && other.0[j] > 0 {
                if self.0[j] > 0 {
                    return None;
                }
                swaps += odd_left_above;
            }
            if odd && self.0[j] > 0 {
                odd_left_above += 1;
            }
            out[j] = self.0[j] + other.0[j];
        }
        Some((Monomial(out), swaps % 2 == 1))
    }

    /// Parity of the sub-monomial made of the factors strictly before `pos`.
    pub(crate) fn prefix_parity(&self, pos: usize, table: &GeneratorTable) -> bool {
        let mut odd = false;
        for i in 0..pos {
            if table.is_odd(i) && self.0[i] % 2 == 1 {
                odd = !odd;
            }
        }
        odd
    }
}

/// Element of the graded commutative algebra generated by a
/// [`GeneratorTable`], with exact rational coefficients.
#[derive(Clone)]
pub struct GradedPoly {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, Rational>,
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoly({self})")
    }
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for GradedPoly {}

impl GradedPoly {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        GradedPoly {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn constant(table: &Arc<GeneratorTable>, c: Rational) -> Self {
        Self::from_term(table, Monomial::one(table.len()), c)
    }

    pub fn generator(table: &Arc<GeneratorTable>, i: usize) -> Self {
        let mut exps = vec![0; table.len()];
        exps[i] = 1;
        Self::from_term(table, Monomial(exps), Rational::one())
    }

    /// The generator with the given name.
    pub fn var(table: &Arc<GeneratorTable>, name: &str) -> Result<Self, KernelError> {
        let i = table
            .position(name)
            .ok_or_else(|| KernelError::UnknownGenerator(name.to_string()))?;
        Ok(Self::generator(table, i))
    }

    /// A single term; odd generators with exponent above one give zero.
    pub fn from_term(table: &Arc<GeneratorTable>, m: Monomial, c: Rational) -> Self {
        assert_eq!(
            m.0.len(),
            table.len(),
            "monomial length does not match table"
        );
        let mut p = Self::zero(table);
        let nilpotent =
            m.0.iter()
                .enumerate()
                .any(|(i, &e)| table.is_odd(i) && e > 1);
        if !nilpotent && !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_table(&self, other: &GradedPoly) -> Result<(), KernelError> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(KernelError::TableMismatch)
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn try_add(&self, other: &GradedPoly) -> Result<GradedPoly, KernelError> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &GradedPoly) -> Result<GradedPoly, KernelError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &GradedPoly) -> Result<GradedPoly, KernelError> {
        self.check_table(other)?;
        let mut out = GradedPoly::zero(&self.table);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some((m, negative)) = m1.mul(m2, &self.table) {
                    let c = c1 * c2;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero(&self.table);
        }
        GradedPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn neg_ref(&self) -> GradedPoly {
        GradedPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect(),
        }
    }

    /// Homogeneous components keyed by total degree.
    pub fn degree_components(&self) -> BTreeMap<u32, GradedPoly> {
        let mut out: BTreeMap<u32, GradedPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m.degree(&self.table);
            out.entry(d)
                .or_insert_with(|| GradedPoly::zero(&self.table))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// The degree of a nonzero homogeneous element; `None` for zero and for
    /// inhomogeneous elements.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree(&self.table));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree(&self.table) == d)
    }

    /// Keeps only the terms satisfying the predicate.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> GradedPoly {
        GradedPoly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True when no term involves any of the listed generator positions.
    pub fn avoids(&self, positions: &[usize]) -> bool {
        self.terms
            .keys()
            .all(|m| positions.iter().all(|&i| m.0[i] == 0))
    }

    /// Rewrites the element over another table, matching generators by name.
    pub fn reembed(&self, target: &Arc<GeneratorTable>) -> Result<GradedPoly, KernelError> {
        let map: Vec<usize> = (0..self.table.len())
            .map(|i| {
                let name = self.table.name(i);
                match target.position(name) {
                    Some(j) if target.degree(j) == self.table.degree(i) => Ok(j),
                    Some(_) => Err(KernelError::DegreeMismatch(name.to_string())),
                    None => Err(KernelError::UnknownGenerator(name.to_string())),
                }
            })
            .collect::<Result<_, _>>()?;
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            // Re-multiply factor by factor so that the sign follows the new order.
            let mut term = GradedPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &GradedPoly::generator(target, map[i]);
                }
            }
            out += &term;
        }
        Ok(out)
    }

    /// Substitutes each generator by a polynomial of the same table, as an
    /// algebra morphism. Images must be homogeneous of the generator's parity.
    pub fn substitute(&self, images: &[GradedPoly]) -> GradedPoly {
        assert_eq!(images.len(), self.table.len());
        let mut out = GradedPoly::zero(&self.table);
        for (m, c) in &self.terms {
            let mut term = GradedPoly::constant(&self.table, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &images[i];
                }
            }
            out += &term;
        }
        out
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let negative = is_negative(c);
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.table.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.table.name(i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs == int(1) {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&GradedPoly> for &GradedPoly {
            type Output = GradedPoly;
            /// Panics if the operands live over different generator tables;
            /// use the `try_` methods when that can happen.
            fn $method(self, rhs: &GradedPoly) -> GradedPoly {
                self.$checked(rhs)
                    .expect("graded polynomials over different tables")
            }
        }
        impl $tr<GradedPoly> for GradedPoly {
            type Output = GradedPoly;
            fn $method(self, rhs: GradedPoly) -> GradedPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl AddAssign<&GradedPoly> for GradedPoly {
    fn add_assign(&mut self, rhs: &GradedPoly) {
        assert!(
            same_table(&self.table, &rhs.table),
            "graded polynomials over different tables"
        );
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&GradedPoly> for GradedPoly {
    fn sub_assign(&mut self, rhs: &GradedPoly) {
        assert!(
            same_table(&self.table, &rhs.table),
            "graded polynomials over different tables"
        );
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.neg_ref()
    }
}

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::frac;
    use super::*;

    fn table() -> Arc<GeneratorTable> {
        // k = 4 layout: x (0), alpha (1), a (3), p (4)
        GeneratorTable::new([
            ("x1", 0),
            ("alpha1", 1),
            ("alpha2", 1),
            ("a1", 3),
            ("a2", 3),
            ("p1", 4),
        ])
        .unwrap()
    }

    fn v(t: &Arc<GeneratorTable>, s: &str) -> GradedPoly {
        GradedPoly::var(t, s).unwrap()
    }

    /// Sorts a word of generator positions by adjacent swaps, flipping the
    /// sign for every swap of two odd generators.
    fn naive_sign(word: &[usize], t: &GeneratorTable) -> Option<(Vec<usize>, bool)> {
        let mut w = word.to_vec();
        let mut negative = false;
        for i in 0..w.len() {
            for j in 0..w.len() - 1 - i {
                if w[j] > w[j + 1] {
                    if t.is_odd(w[j]) && t.is_odd(w[j + 1]) {
                        negative = !negative;
                    }
                    w.swap(j, j + 1);
                }
            }
        }
        for pair in w.windows(2) {
            if pair[0] == pair[1] && t.is_odd(pair[0]) {
                return None;
            }
        }
        Some((w, negative))
    }

    #[test]
    fn odd_generators_are_nilpotent() {
        let t = table();
        let al = v(&t, "alpha1");
        assert!((&al * &al).is_zero());
    }

    #[test]
    fn odd_generators_anticommute() {
        let t = table();
        let a1 = v(&t, "alpha1");
        let a2 = v(&t, "alpha2");
        assert_eq!(&a2 * &a1, -(&a1 * &a2));
        assert_eq!((&a1 * &a2).to_string(), "alpha1*alpha2");
    }

    #[test]
    fn product_sign_matches_transposition_oracle() {
        let t = table();
        // a1 · alpha1 · a2 in the k = 4 chart: a1, alpha1, a2 are all odd.
        let word = [3usize, 1, 4];
        let prod = [v(&t, "a1"), v(&t, "alpha1"), v(&t, "a2")]
            .iter()
            .fold(GradedPoly::one(&t), |acc, g| &acc * g);
        let (sorted, negative) = naive_sign(&word, &t).unwrap();
        let mut exps = vec![0; t.len()];
        for i in sorted {
            exps[i] += 1;
        }
        let expected =
            GradedPoly::from_term(&t, Monomial(exps), if negative { int(-1) } else { int(1) });
        assert_eq!(prod, expected);
        // Two transpositions of odd letters: a1 past alpha1 once.
        assert_eq!(prod.to_string(), "-alpha1*a1*a2");
    }

    #[test]
    fn additive_identity_and_scaling() {
        let t = table();
        let p = &v(&t, "x1") + &(&v(&t, "alpha1") * &v(&t, "alpha2"));
        assert_eq!(&p + &GradedPoly::zero(&t), p);
        let twice = v(&t, "alpha1").scale(&int(2));
        assert_eq!(twice.scale(&frac(1, 2)), v(&t, "alpha1"));
    }

    #[test]
    fn degree_components_split_by_total_degree() {
        let t = table();
        let x = v(&t, "x1");
        let w = &v(&t, "alpha1") * &v(&t, "alpha2");
        let p = &x + &w;
        let comps = p.degree_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&0], x);
        assert_eq!(comps[&2], w);
        assert_eq!(p.degree(), None);
        assert!(GradedPoly::zero(&t).is_homogeneous_of(7));
    }

    #[test]
    fn table_mismatch_is_an_error() {
        let t1 = table();
        let t2 = GeneratorTable::new([("y", 0)]).unwrap();
        let err = GradedPoly::one(&t1)
            .try_mul(&GradedPoly::one(&t2))
            .unwrap_err();
        assert_eq!(err, KernelError::TableMismatch);
    }

    #[test]
    fn reembed_respects_new_order() {
        let t = GeneratorTable::new([("u", 1), ("w", 1)]).unwrap();
        let rev = GeneratorTable::new([("w", 1), ("u", 1)]).unwrap();
        let uw = &v(&t, "u") * &v(&t, "w");
        let moved = uw.reembed(&rev).unwrap();
        assert_eq!(moved, -(&v(&rev, "w") * &v(&rev, "u")));
    }
}
