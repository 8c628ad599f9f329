use super::{poisson, CotangentChart, GeneratorKind, SymplecticError};
use crate::kernel::{same_table, GradedPoly, KernelError};

/// A degree `k` form `B`, the generator of the twist `tau^B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistCochain {
    b: GradedPoly,
}

impl TwistCochain {
    pub fn new(b: GradedPoly, chart: &CotangentChart) -> Result<Self, SymplecticError> {
        if !same_table(b.table(), chart.table()) {
            return Err(KernelError::TableMismatch.into());
        }
        if !chart.is_form(&b) {
            return Err(SymplecticError::InvalidCochain(format!(
                "{b} involves a or p generators"
            )));
        }
        if !b.is_homogeneous_of(chart.k()) {
            return Err(SymplecticError::InvalidCochain(format!(
                "{b} is not of degree {}",
                chart.k()
            )));
        }
        Ok(TwistCochain { b })
    }

    pub fn poly(&self) -> &GradedPoly {
        &self.b
    }
}

/// Images of the generators under `tau^B = Id - {B, .}`: identity on `x`
/// and `alpha`, corrected on `a` and `p`.
pub fn twist_images(
    b: &TwistCochain,
    chart: &CotangentChart,
) -> Result<Vec<GradedPoly>, SymplecticError> {
    let t = chart.table();
    (0..t.len())
        .map(|pos| {
            let g = GradedPoly::generator(t, pos);
            match chart.kind(pos).0 {
                GeneratorKind::X | GeneratorKind::Alpha => Ok(g),
                GeneratorKind::A | GeneratorKind::P => Ok(&g - &poisson(b.poly(), &g, chart)?),
            }
        })
        .collect()
}

/// Applies `tau^B` as an algebra automorphism.
pub fn twist(
    b: &TwistCochain,
    f: &GradedPoly,
    chart: &CotangentChart,
) -> Result<GradedPoly, SymplecticError> {
    if !same_table(f.table(), chart.table()) {
        return Err(KernelError::TableMismatch.into());
    }
    Ok(f.substitute(&twist_images(b, chart)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Derivation;

    #[test]
    fn fixes_body_and_alpha() {
        let c = CotangentChart::new(3, 1, 3).unwrap();
        let b = TwistCochain::new(c.parse("x1*alpha1*alpha2*alpha3").unwrap(), &c).unwrap();
        assert_eq!(twist(&b, &c.x(0), &c).unwrap(), c.x(0));
        assert_eq!(twist(&b, &c.alpha(1), &c).unwrap(), c.alpha(1));
    }

    #[test]
    fn a_picks_up_alpha_derivative() {
        // tau^B(a_j) = a_j + dB/dalpha^j
        for k in 3..=5 {
            let c = CotangentChart::new(k, 1, k as usize).unwrap();
            let mut b = c.x(0);
            for j in 0..k as usize {
                b = &b * &c.alpha(j);
            }
            let tb = TwistCochain::new(b.clone(), &c).unwrap();
            for j in 0..k as usize {
                let d = Derivation::partial(c.table(), c.alpha_pos(j))
                    .apply(&b)
                    .unwrap();
                assert_eq!(twist(&tb, &c.a(j), &c).unwrap(), &c.a(j) + &d);
            }
        }
    }

    #[test]
    fn zero_cochain_is_identity() {
        let c = CotangentChart::new(4, 1, 2).unwrap();
        let b = TwistCochain::new(GradedPoly::zero(c.table()), &c).unwrap();
        let f = c.parse("x1*p1 + a1*alpha2 - alpha1*alpha2*a2").unwrap();
        assert_eq!(twist(&b, &f, &c).unwrap(), f);
    }

    #[test]
    fn rejects_bad_cochains() {
        let c = CotangentChart::new(3, 1, 3).unwrap();
        assert!(TwistCochain::new(c.parse("alpha1*alpha2").unwrap(), &c).is_err());
        assert!(TwistCochain::new(c.parse("alpha1*a1").unwrap(), &c).is_err());
    }
}
