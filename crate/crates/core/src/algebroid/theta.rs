use super::{AlgebroidError, LieAlgebroidData, Pairing};
use crate::exterior::Wedge;
use crate::kernel::{frac, BasePoly, Derivation, GradedPoly};
use crate::symplectic::CotangentChart;

pub(crate) fn check_chart(
    alg: &LieAlgebroidData,
    chart: &CotangentChart,
) -> Result<(), AlgebroidError> {
    if alg.m() != chart.m() || alg.n() != chart.n() {
        return Err(AlgebroidError::ChartMismatch(format!(
            "data has (m, n) = ({}, {}), chart has ({}, {})",
            alg.m(),
            alg.n(),
            chart.m(),
            chart.n()
        )));
    }
    Ok(())
}

/// `theta_H = rho^i_a alpha^a p_i - 1/2 c^c_{ab} a_c alpha^a alpha^b
/// (+ 1/2 pi^{ab} a_a a_b) + H`.
pub fn build_theta(
    alg: &LieAlgebroidData,
    h: &Wedge,
    pi: Option<&Pairing>,
    chart: &CotangentChart,
) -> Result<GradedPoly, AlgebroidError> {
    check_chart(alg, chart)?;
    let k = chart.k();
    let (m, n) = (alg.m(), alg.n());
    let mut theta = GradedPoly::zero(chart.table());
    for a in 0..n {
        for i in 0..m {
            let f = alg.anchor(a, i);
            if !f.is_zero() {
                theta += &(&(&chart.embed_base(f)? * &chart.alpha(a)) * &chart.p(i));
            }
        }
    }
    let half = frac(-1, 2);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let f = alg.structure(a, b, c);
                if !f.is_zero() {
                    let coeff = chart.embed_base(&f.scale(&half))?;
                    theta += &(&(&(&coeff * &chart.a(c)) * &chart.alpha(a)) * &chart.alpha(b));
                }
            }
        }
    }
    if let Some(pi) = pi {
        if k != 3 {
            return Err(AlgebroidError::PairingNeedsK3);
        }
        if pi.rank() != n {
            return Err(AlgebroidError::Shape(format!(
                "pairing of rank {} on rank {n}",
                pi.rank()
            )));
        }
        for a in 0..n {
            for b in 0..n {
                let f = pi.entry(a, b);
                if !f.is_zero() {
                    let coeff = chart.embed_base(&f.scale(&frac(1, 2)))?;
                    theta += &(&(&coeff * &chart.a(a)) * &chart.a(b));
                }
            }
        }
    }
    if !h.is_zero() {
        if !h.is_homogeneous_of(k as usize + 1) || h.rank() != n {
            return Err(AlgebroidError::Degree {
                expected: k + 1,
                got: format!("{h:?}"),
            });
        }
        theta += &chart.form_to_poly(h)?;
    }
    Ok(theta)
}

/// `d_A` as a degree 1 derivation of the form algebra: `x^i -> rho^i_a alpha^a`,
/// `alpha^c -> -1/2 c^c_{ab} alpha^a alpha^b`.
fn d_a_derivation(
    alg: &LieAlgebroidData,
    chart: &CotangentChart,
) -> Result<Derivation, AlgebroidError> {
    let t = chart.table();
    let mut values = vec![GradedPoly::zero(t); t.len()];
    for i in 0..alg.m() {
        for a in 0..alg.n() {
            values[chart.x_pos(i)] += &(&chart.embed_base(alg.anchor(a, i))? * &chart.alpha(a));
        }
    }
    for c in 0..alg.n() {
        for a in 0..alg.n() {
            for b in 0..alg.n() {
                let f = alg.structure(a, b, c);
                if !f.is_zero() {
                    let coeff = chart.embed_base(&f.scale(&frac(-1, 2)))?;
                    values[chart.alpha_pos(c)] += &(&(&coeff * &chart.alpha(a)) * &chart.alpha(b));
                }
            }
        }
    }
    Ok(Derivation::new(t, 1, values)?)
}

fn require_form(omega: &GradedPoly, chart: &CotangentChart) -> Result<(), AlgebroidError> {
    if chart.is_form(omega) {
        Ok(())
    } else {
        Err(AlgebroidError::NotAForm(omega.to_string()))
    }
}

/// The Lie algebroid differential of a pure form on the chart.
pub fn d_a(
    omega: &GradedPoly,
    alg: &LieAlgebroidData,
    chart: &CotangentChart,
) -> Result<GradedPoly, AlgebroidError> {
    check_chart(alg, chart)?;
    require_form(omega, chart)?;
    Ok(d_a_derivation(alg, chart)?.apply(omega)?)
}

/// Interior product `i_v`, the degree -1 derivation `alpha^j -> v^j`.
pub fn interior(
    v: &[BasePoly],
    omega: &GradedPoly,
    chart: &CotangentChart,
) -> Result<GradedPoly, AlgebroidError> {
    require_form(omega, chart)?;
    if v.len() != chart.n() {
        return Err(AlgebroidError::Shape(format!(
            "section of length {} on rank {}",
            v.len(),
            chart.n()
        )));
    }
    let t = chart.table();
    let mut values = vec![GradedPoly::zero(t); t.len()];
    for (j, c) in v.iter().enumerate() {
        values[chart.alpha_pos(j)] = chart.embed_base(c)?;
    }
    Ok(Derivation::new(t, -1, values)?.apply(omega)?)
}

/// `L_v = i_v d_A + d_A i_v`.
pub fn lie_derivative(
    v: &[BasePoly],
    omega: &GradedPoly,
    alg: &LieAlgebroidData,
    chart: &CotangentChart,
) -> Result<GradedPoly, AlgebroidError> {
    let d = d_a(omega, alg, chart)?;
    Ok(&interior(v, &d, chart)? + &d_a(&interior(v, omega, chart)?, alg, chart)?)
}
