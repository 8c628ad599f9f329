use super::{CotangentChart, SymplecticError};
use crate::exterior::Wedge;
use crate::kernel::{BasePoly, GradedPoly};

/// A section `a + omega` of `A + wedge^{k-1} A*`, the degree `k-1` functions
/// on the chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub a: Vec<BasePoly>,
    pub omega: Wedge,
}

impl Section {
    pub fn zero(n: usize) -> Self {
        Section {
            a: vec![BasePoly::zero(); n],
            omega: Wedge::zero(n),
        }
    }

    pub fn basis(n: usize, j: usize) -> Self {
        let mut s = Self::zero(n);
        s.a[j] = BasePoly::int(1);
        s
    }

    pub fn form(omega: Wedge) -> Self {
        Section {
            a: vec![BasePoly::zero(); omega.rank()],
            omega,
        }
    }

    pub fn to_poly(&self, chart: &CotangentChart) -> Result<GradedPoly, SymplecticError> {
        if self.a.len() != chart.n() {
            return Err(SymplecticError::MalformedSection(format!(
                "{} A-coefficients for rank {}",
                self.a.len(),
                chart.n()
            )));
        }
        if !self.omega.is_homogeneous_of(chart.k() as usize - 1) {
            return Err(SymplecticError::MalformedSection(format!(
                "form part must have degree {}",
                chart.k() - 1
            )));
        }
        let mut out = chart.form_to_poly(&self.omega)?;
        for (j, c) in self.a.iter().enumerate() {
            out += &(&chart.embed_base(c)? * &chart.a(j));
        }
        Ok(out)
    }
}

/// Splits a degree `k-1` function into its `A` part (coefficients of the
/// `a_j`) and its pure-form part.
pub fn decompose_section(
    e: &GradedPoly,
    chart: &CotangentChart,
) -> Result<Section, SymplecticError> {
    let k = chart.k();
    if !e.is_homogeneous_of(k - 1) {
        return Err(SymplecticError::MalformedSection(format!(
            "{e} is not of degree {}",
            k - 1
        )));
    }
    if !e.avoids(&chart.p_positions()) {
        return Err(SymplecticError::MalformedSection(format!(
            "{e} contains momenta"
        )));
    }
    let a_pos = chart.a_positions();
    let mut out = Section::zero(chart.n());
    for (m, c) in e.terms() {
        let ex = m.exponents();
        let a_count: u32 = a_pos.iter().map(|&p| ex[p]).sum();
        match a_count {
            0 => {}
            1 => {
                let j = (0..chart.n()).find(|&j| ex[a_pos[j]] == 1).unwrap();
                let base = BasePoly::from_terms([(ex[..chart.m()].to_vec(), c.clone())]);
                out.a[j] = &out.a[j] + &base;
            }
            _ => {
                return Err(SymplecticError::MalformedSection(format!(
                    "{e} is not linear in the a generators"
                )));
            }
        }
    }
    let forms = e.filter_terms(|m| a_pos.iter().all(|&p| m.exponents()[p] == 0));
    out.omega = chart.poly_to_form(&forms)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_off_both_parts() {
        let c = CotangentChart::new(4, 1, 3).unwrap();
        let e = c.parse("x1*a2 + 3*alpha1*alpha2*alpha3").unwrap();
        let s = decompose_section(&e, &c).unwrap();
        assert_eq!(s.a[1], BasePoly::parse("x1").unwrap());
        assert!(s.a[0].is_zero());
        assert_eq!(s.omega.coefficient(0b111), BasePoly::int(3));
        assert_eq!(s.to_poly(&c).unwrap(), e);
    }

    #[test]
    fn pure_pieces() {
        let c = CotangentChart::new(3, 0, 2).unwrap();
        let s = decompose_section(&c.a(0), &c).unwrap();
        assert_eq!(s, Section::basis(2, 0));
        let w = &c.alpha(0) * &c.alpha(1);
        let s = decompose_section(&w, &c).unwrap();
        assert!(s.a.iter().all(BasePoly::is_zero));
        assert_eq!(c.form_to_poly(&s.omega).unwrap(), w);
    }

    #[test]
    fn rejects_wrong_degree() {
        let c = CotangentChart::new(3, 1, 2).unwrap();
        assert!(decompose_section(&c.alpha(0), &c).is_err());
        assert!(decompose_section(&(&c.a(0) + &c.alpha(0)), &c).is_err());
    }
}
