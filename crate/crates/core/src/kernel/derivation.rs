use std::sync::Arc;

use num_traits::Zero;

use super::poly::{GradedPoly, Monomial};
use super::rational::Rational;
use super::table::{same_table, GeneratorTable};
use super::KernelError;

/// Graded derivation of a fixed degree, determined by its values on the
/// generators and extended by the graded Leibniz rule
/// `D(fg) = D(f) g + (-1)^{|f| |D|} f D(g)`.
#[derive(Clone, Debug)]
pub struct Derivation {
    degree: i64,
    table: Arc<GeneratorTable>,
    values: Vec<GradedPoly>,
}

impl PartialEq for Derivation {
    /// Zero derivations compare equal whatever degree they were built with.
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table)
            && (self.degree == other.degree || (self.is_zero() && other.is_zero()))
            && self.values == other.values
    }
}

impl Derivation {
    /// Builds a derivation from its generator images. Each image must be
    /// homogeneous of degree `|g| + degree` (zero is always accepted).
    pub fn new(
        table: &Arc<GeneratorTable>,
        degree: i64,
        values: Vec<GradedPoly>,
    ) -> Result<Self, KernelError> {
        if values.len() != table.len() {
            return Err(KernelError::MissingImage(format!(
                "{} images for {} generators",
                values.len(),
                table.len()
            )));
        }
        for (i, v) in values.iter().enumerate() {
            if !same_table(v.table(), table) {
                return Err(KernelError::TableMismatch);
            }
            let target = table.degree(i) as i64 + degree;
            let ok = v.is_zero() || (target >= 0 && v.is_homogeneous_of(target as u32));
            if !ok {
                return Err(KernelError::DegreeMismatch(format!(
                    "image of {} must have degree {target}, got {v}",
                    table.name(i)
                )));
            }
        }
        Ok(Derivation {
            degree,
            table: table.clone(),
            values,
        })
    }

    pub fn zero(table: &Arc<GeneratorTable>, degree: i64) -> Self {
        Derivation {
            degree,
            table: table.clone(),
            values: vec![GradedPoly::zero(table); table.len()],
        }
    }

    /// The left partial derivative with respect to generator `i`.
    pub fn partial(table: &Arc<GeneratorTable>, i: usize) -> Self {
        let mut values = vec![GradedPoly::zero(table); table.len()];
        values[i] = GradedPoly::one(table);
        Derivation {
            degree: -(table.degree(i) as i64),
            table: table.clone(),
            values,
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn values(&self) -> &[GradedPoly] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &GradedPoly {
        &self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(GradedPoly::is_zero)
    }

    pub fn apply(&self, p: &GradedPoly) -> Result<GradedPoly, KernelError> {
        if !same_table(p.table(), &self.table) {
            return Err(KernelError::TableMismatch);
        }
        let mut out = GradedPoly::zero(&self.table);
        for (m, c) in p.terms() {
            for (pos, &e) in m.exponents().iter().enumerate() {
                if e == 0 || self.values[pos].is_zero() {
                    continue;
                }
                // m = u · g^e · v  with u the factors before g, v those after.
                let mut before = vec![0; m.exponents().len()];
                let mut after = before.clone();
                before[..pos].copy_from_slice(&m.exponents()[..pos]);
                after[pos + 1..].copy_from_slice(&m.exponents()[pos + 1..]);
                before[pos] = e - 1;
                let negative = self.is_odd() && m.prefix_parity(pos, &self.table);
                let mut coeff = c * Rational::from_integer(e.into());
                if negative {
                    coeff = -coeff;
                }
                let left = GradedPoly::from_term(&self.table, Monomial(before), coeff);
                let right = GradedPoly::from_term(
                    &self.table,
                    Monomial(after),
                    Rational::from_integer(1.into()),
                );
                out += &(&(&left * &self.values[pos]) * &right);
            }
        }
        Ok(out)
    }

    /// Graded commutator `[D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1`.
    pub fn commutator(&self, other: &Derivation) -> Result<Derivation, KernelError> {
        if !same_table(&self.table, &other.table) {
            return Err(KernelError::TableMismatch);
        }
        let negative = self.is_odd() && other.is_odd();
        let values = (0..self.table.len())
            .map(|i| {
                let a = self.apply(&other.values[i])?;
                let b = other.apply(&self.values[i])?;
                Ok(if negative { &a + &b } else { &a - &b })
            })
            .collect::<Result<Vec<_>, KernelError>>()?;
        Derivation::new(&self.table, self.degree + other.degree, values)
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation, KernelError> {
        if !same_table(&self.table, &other.table) {
            return Err(KernelError::TableMismatch);
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(KernelError::DegreeMismatch(format!(
                "cannot add derivations of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let degree = if self.is_zero() {
            other.degree
        } else {
            self.degree
        };
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Derivation {
            degree,
            table: self.table.clone(),
            values,
        })
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            degree: self.degree,
            table: self.table.clone(),
            values: if c.is_zero() {
                vec![GradedPoly::zero(&self.table); self.table.len()]
            } else {
                self.values.iter().map(|v| v.scale(c)).collect()
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::int;
    use super::*;

    fn table() -> Arc<GeneratorTable> {
        GeneratorTable::new([
            ("x1", 0),
            ("alpha1", 1),
            ("alpha2", 1),
            ("a1", 2),
            ("p1", 3),
        ])
        .unwrap()
    }

    fn v(t: &Arc<GeneratorTable>, s: &str) -> GradedPoly {
        GradedPoly::var(t, s).unwrap()
    }

    #[test]
    fn partial_alpha_on_product() {
        let t = table();
        let d = Derivation::partial(&t, 1);
        let w = &v(&t, "alpha1") * &v(&t, "alpha2");
        assert_eq!(d.apply(&w).unwrap(), v(&t, "alpha2"));
        assert!(d
            .apply(&GradedPoly::constant(&t, int(5)))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn partial_alpha_after_reordering() {
        let t = table();
        let d = Derivation::partial(&t, 1);
        // alpha2 · alpha1 = -alpha1 · alpha2, so the derivative is -alpha2.
        let w = &v(&t, "alpha2") * &v(&t, "alpha1");
        assert_eq!(d.apply(&w).unwrap(), -v(&t, "alpha2"));
    }

    #[test]
    fn even_generator_powers() {
        let t = table();
        let d = Derivation::partial(&t, 0);
        let x = v(&t, "x1");
        let p = &(&x * &x) * &x;
        assert_eq!(d.apply(&p).unwrap(), (&x * &x).scale(&int(3)));
    }

    #[test]
    fn rejects_wrong_image_degree() {
        let t = table();
        let mut values = vec![GradedPoly::zero(&t); t.len()];
        values[0] = v(&t, "alpha1");
        assert!(Derivation::new(&t, 0, values).is_err());
    }

    #[test]
    fn commutator_of_odd_partials_vanishes() {
        let t = table();
        let d1 = Derivation::partial(&t, 1);
        let d2 = Derivation::partial(&t, 2);
        assert!(d1.commutator(&d2).unwrap().is_zero());
    }
}
