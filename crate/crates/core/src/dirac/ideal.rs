//! The vanishing ideal of a subbundle over a point, and its behaviour under
//! the Poisson bracket and the homological vector field.

use std::collections::BTreeMap;

use super::fibre::{fibre_coords, row_section, section_row, Fibre};
use super::{check_lagrangian, DiracError, SubbundleSpec};
use crate::algebroid::{build_theta, cartan_bracket, LieAlgebroidData};
use crate::exterior::Wedge;
use crate::kernel::{GradedPoly, Monomial, Rational};
use crate::linalg::sparse_span_contains;
use crate::report::Report;
use crate::symplectic::{decompose_section, hamiltonian_vf, poisson, CotangentChart};

/// All monomials of total degree `e` in the positive-degree generators.
pub fn fibre_monomials(chart: &CotangentChart, e: u32) -> Vec<GradedPoly> {
    let t = chart.table();
    let positive: Vec<usize> = (0..t.len()).filter(|&i| t.degree(i) > 0).collect();
    let mut out = Vec::new();
    let mut ex = vec![0u32; t.len()];
    fn rec(
        idx: usize,
        left: u32,
        positive: &[usize],
        t: &crate::kernel::GeneratorTable,
        ex: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if left == 0 {
            out.push(ex.clone());
            return;
        }
        let Some(&pos) = positive.get(idx) else {
            return;
        };
        let deg = t.degree(pos);
        let max = if t.is_odd(pos) { 1 } else { left / deg };
        for power in 0..=max.min(left / deg) {
            ex[pos] = power;
            rec(idx + 1, left - power * deg, positive, t, ex, out);
        }
        ex[pos] = 0;
    }
    let mut exps = Vec::new();
    rec(0, e, &positive, t, &mut ex, &mut exps);
    for e in exps {
        out.push(GradedPoly::from_term(
            t,
            Monomial(e),
            Rational::from_integer(1.into()),
        ));
    }
    out
}

/// Spanning set of the degree-`d` part of the ideal generated by homogeneous
/// `generators` over a point.
pub fn ideal_part(generators: &[GradedPoly], chart: &CotangentChart, d: u32) -> Vec<GradedPoly> {
    let mut out = Vec::new();
    for g in generators {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        for mu in fibre_monomials(chart, d - dg) {
            let prod = g * &mu;
            if !prod.is_zero() {
                out.push(prod);
            }
        }
    }
    out
}

fn in_ideal(v: &GradedPoly, generators: &[GradedPoly], chart: &CotangentChart) -> bool {
    if v.is_zero() {
        return true;
    }
    let Some(d) = v.degree() else { return false };
    let span: Vec<BTreeMap<Vec<u32>, Rational>> = ideal_part(generators, chart, d)
        .iter()
        .map(|p| fibre_coords(p, chart, &[]))
        .collect();
    sparse_span_contains(&span, &[fibre_coords(v, chart, &[])])
}

fn require_point(spec: &SubbundleSpec, what: &str) -> Result<(), DiracError> {
    if spec.is_point() {
        Ok(())
    } else {
        Err(DiracError::Unsupported(format!(
            "{what} needs the point regime"
        )))
    }
}

/// Generators `D`, `L` (and `K` if supplied) of the ideal, as functions.
fn generators(
    spec: &SubbundleSpec,
    chart: &CotangentChart,
    d: &[Vec<Rational>],
) -> Result<Vec<GradedPoly>, DiracError> {
    let mut out = Vec::new();
    for eps in d {
        out.push(chart.form_to_poly(&Wedge::linear(&super::fibre::constants(eps)))?);
    }
    let f = Fibre::at(spec, &[]);
    for s in f.sections() {
        out.push(s.to_poly(chart)?);
    }
    for e in spec.k_data().unwrap_or_default() {
        out.push(e.to_poly(chart)?);
    }
    out.retain(|g| !g.is_zero());
    Ok(out)
}

/// Over a point: whether `{g, h}` lies in the ideal for all generators.
/// Returns the first offending pair.
pub(crate) fn ideal_closed(spec: &SubbundleSpec) -> Result<Option<String>, DiracError> {
    require_point(spec, "ideal closure")?;
    let chart = spec.chart()?;
    let d: Vec<Vec<Rational>> = spec
        .d()
        .unwrap_or_default()
        .iter()
        .map(|v| super::fibre::vector_at(v, &[]))
        .collect();
    let gens = generators(spec, &chart, &d)?;
    for (i, g) in gens.iter().enumerate() {
        for h in &gens[i..] {
            let b = poisson(g, h, &chart)?;
            if !in_ideal(&b, &gens, &chart) {
                return Ok(Some(format!("{{{g}, {h}}} = {b}")));
            }
        }
    }
    Ok(None)
}

/// Over a point: whether `{theta_H, .}` maps the vanishing ideal of a
/// lagrangian `L` into itself. The ideal is generated by `p1(L)°` in degree
/// 1 and by `L` in degree `k-1`.
pub fn preserves_ideal(spec: &SubbundleSpec, theta_h: &GradedPoly) -> Result<Report, DiracError> {
    require_point(spec, "ideal preservation")?;
    let chart = spec.chart()?;
    let f = Fibre::at(spec, &[]);
    let ann = f.annihilator();
    let gens = generators(spec, &chart, &ann)?;
    let q = hamiltonian_vf(theta_h, &chart)?;
    let mut report = Report::new("ideal preservation");
    let first_bad = |range: &[GradedPoly]| -> Result<Option<String>, DiracError> {
        for g in range {
            let image = q.apply(g)?;
            if !in_ideal(&image, &gens, &chart) {
                return Ok(Some(format!("Q({g}) = {image}")));
            }
        }
        Ok(None)
    };
    let split = gens.iter().take_while(|g| g.degree() == Some(1)).count();
    let bad = first_bad(&gens[..split])?;
    report.clause("Q(D) in I", bad.is_none(), bad);
    let bad = first_bad(&gens[split..])?;
    report.clause("Q(L) in I", bad.is_none(), bad);
    Ok(report)
}

/// Higher Dirac structure over a point: lagrangian, anchor tangent to the
/// body (automatic over a point) and closure of `L` under the twisted
/// bracket, evaluated with the Cartan formula.
pub fn check_higher_dirac(
    spec: &SubbundleSpec,
    alg: &LieAlgebroidData,
    h: &Wedge,
) -> Result<Report, DiracError> {
    require_point(spec, "bracket closure")?;
    if !alg.is_point_base() || alg.n() != spec.n() {
        return Err(DiracError::Shape(format!(
            "need a Lie algebra of rank {} over a point, got rank {} over dimension {}",
            spec.n(),
            alg.n(),
            alg.m()
        )));
    }
    let chart = spec.chart()?;
    // validates the degree of H
    build_theta(alg, h, None, &chart)?;
    let mut report = Report::new("higher dirac");
    let lag = check_lagrangian(spec);
    let detail = lag.failing().next().map(|c| format!("{} fails", c.name));
    report.clause("lagrangian", lag.passed(), detail);
    report.clause("anchor", true, None);
    let f = Fibre::at(spec, &[]);
    let polys: Vec<GradedPoly> = f
        .sections()
        .iter()
        .map(|s| s.to_poly(&chart))
        .collect::<Result<_, _>>()?;
    let mut bad = None;
    'outer: for (i, e1) in polys.iter().enumerate() {
        for (j, e2) in polys.iter().enumerate() {
            let b = cartan_bracket(e1, e2, alg, h, &chart)?;
            let row = section_row(&decompose_section(&b, &chart)?, spec.k(), &[]);
            if !f.contains(&row) {
                let s = row_section(&row, spec.n(), spec.k());
                bad = Some(format!(
                    "bracket of basis sections {i} and {j} is {}",
                    s.to_poly(&chart)?
                ));
                break 'outer;
            }
        }
    }
    report.clause("closure", bad.is_none(), bad);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::dirac::{conormal, graph_of_form, Regime};
    use crate::kernel::{int, BasePoly};
    use crate::symplectic::CotangentChart;

    fn agree(spec: &SubbundleSpec, alg: &LieAlgebroidData, h: &Wedge) -> bool {
        let chart = CotangentChart::new(spec.k(), 0, spec.n()).unwrap();
        let theta = build_theta(alg, h, None, &chart).unwrap();
        let closure = check_higher_dirac(spec, alg, h).unwrap();
        let ideal = preserves_ideal(spec, &theta).unwrap();
        assert_eq!(closure.passed(), ideal.passed(), "{closure}{ideal}");
        closure.passed()
    }

    #[test]
    fn monomial_counts() {
        let chart = CotangentChart::new(3, 0, 3).unwrap();
        // degree 2: three alpha words plus three a's
        assert_eq!(fibre_monomials(&chart, 2).len(), 6);
        assert_eq!(fibre_monomials(&chart, 0).len(), 1);
        // degree 3: one alpha word plus nine alpha * a
        assert_eq!(fibre_monomials(&chart, 3).len(), 10);
    }

    #[test]
    fn conormal_of_subalgebra() {
        let g = catalog::sl2();
        let h = Wedge::zero(3);
        let borel = vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]];
        assert!(agree(
            &conormal(&borel, 3, 3, 0, Regime::Point).unwrap(),
            &g,
            &h
        ));
        let not_sub = vec![vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]];
        assert!(!agree(
            &conormal(&not_sub, 3, 3, 0, Regime::Point).unwrap(),
            &g,
            &h
        ));
        let so3_axis = vec![vec![int(1), int(0), int(0)]];
        assert!(agree(
            &conormal(&so3_axis, 4, 3, 0, Regime::Point).unwrap(),
            &catalog::so3(),
            &Wedge::zero(3)
        ));
    }

    #[test]
    fn graph_of_form_needs_matching_twist() {
        let g = catalog::direct_sum(&catalog::so3(), &catalog::abelian(1));
        let omega =
            &Wedge::word(4, 0b0111, BasePoly::int(2)) + &Wedge::word(4, 0b1011, BasePoly::int(1));
        let spec = graph_of_form(&omega, 3, 0, Regime::Point).unwrap();
        assert!(g.differential(&omega).is_zero());
        assert!(agree(&spec, &g, &Wedge::zero(4)));
        let top = Wedge::word(4, 0b1111, BasePoly::int(1));
        assert!(!agree(&spec, &g, &top));
    }

    #[test]
    fn graph_of_form_with_exact_twist() {
        let g = catalog::borel_sl3();
        let omega = &Wedge::word(5, 0b00111, BasePoly::int(1))
            + &Wedge::word(5, 0b11001, BasePoly::int(-2));
        let h = g.differential(&omega);
        assert!(!h.is_zero());
        let spec = graph_of_form(&omega, 3, 0, Regime::Point).unwrap();
        assert!(agree(&spec, &g, &h));
        assert!(!agree(&spec, &g, &Wedge::zero(5)));
    }

    #[test]
    fn sampled_regime_is_rejected() {
        let spec = conormal(
            &[vec![int(1)]],
            3,
            1,
            1,
            Regime::Sampled(vec![vec![int(0)]]),
        )
        .unwrap();
        let g = crate::algebroid::LieAlgebroidData::tangent(1);
        assert!(matches!(
            check_higher_dirac(&spec, &g, &Wedge::zero(1)),
            Err(DiracError::Unsupported(_))
        ));
    }
}
