use super::theta::check_chart;
use super::{d_a, interior, lie_derivative, AlgebroidError, LieAlgebroidData};
use crate::exterior::Wedge;
use crate::kernel::GradedPoly;
use crate::symplectic::{decompose_section, poisson, CotangentChart, Section};

/// `{{e1, theta_H}, e2}` on degree `k-1` functions.
pub fn derived_bracket(
    e1: &GradedPoly,
    e2: &GradedPoly,
    theta_h: &GradedPoly,
    chart: &CotangentChart,
) -> Result<GradedPoly, AlgebroidError> {
    decompose_section(e1, chart)?;
    decompose_section(e2, chart)?;
    let inner = poisson(e1, theta_h, chart)?;
    Ok(poisson(&inner, e2, chart)?)
}

/// `[a, b] + L_a eta - i_b d_A omega - i_b i_a H` for `e1 = a + omega`,
/// `e2 = b + eta`, evaluated with the Cartan calculus of the algebroid.
pub fn cartan_bracket(
    e1: &GradedPoly,
    e2: &GradedPoly,
    alg: &LieAlgebroidData,
    h: &Wedge,
    chart: &CotangentChart,
) -> Result<GradedPoly, AlgebroidError> {
    check_chart(alg, chart)?;
    let Section { a, omega } = decompose_section(e1, chart)?;
    let Section { a: b, omega: eta } = decompose_section(e2, chart)?;
    let omega = chart.form_to_poly(&omega)?;
    let eta = chart.form_to_poly(&eta)?;
    let h = chart.form_to_poly(h)?;
    let ab = Section::form(Wedge::zero(chart.n()));
    let ab = Section {
        a: alg.bracket(&a, &b),
        ..ab
    }
    .to_poly(chart)?;
    let mut out = ab;
    out += &lie_derivative(&a, &eta, alg, chart)?;
    out -= &interior(&b, &d_a(&omega, alg, chart)?, chart)?;
    out -= &interior(&b, &interior(&a, &h, chart)?, chart)?;
    Ok(out)
}
