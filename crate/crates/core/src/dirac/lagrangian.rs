use std::collections::BTreeMap;

use num_traits::Zero;

use super::fibre::{
    fibre_coords, form_row, multivector_span, pairing, vector_at, wedge_span, Fibre,
};
use super::ideal::ideal_closed;
use super::{DiracError, SubbundleSpec};
use crate::exterior::{words, Wedge};
use crate::kernel::{GradedPoly, Rational};
use crate::linalg::{
    densify, nullspace, same_span, span_contains, sparse_same_span, transpose, Echelon,
};
use crate::report::Report;
use crate::symplectic::CotangentChart;

fn point_label(p: &[Rational]) -> String {
    if p.is_empty() {
        "the point".to_string()
    } else {
        let coords: Vec<String> = p.iter().map(ToString::to_string).collect();
        format!("x = ({})", coords.join(", "))
    }
}

/// First point where `check` fails, with its message.
fn first_failure(
    points: &[Vec<Rational>],
    mut check: impl FnMut(&[Rational]) -> Result<(), String>,
) -> Option<String> {
    points.iter().find_map(|p| {
        check(p)
            .err()
            .map(|msg| format!("at {}: {msg}", point_label(p)))
    })
}

fn constant_rank(points: &[Vec<Rational>], ranks: &[usize]) -> (bool, Option<String>) {
    let first = ranks.first().copied().unwrap_or(0);
    match ranks.iter().position(|&r| r != first) {
        None => (true, None),
        Some(i) => (
            false,
            Some(format!(
                "rank {first} at {} but {} at {}",
                point_label(&points[0]),
                ranks[i],
                point_label(&points[i])
            )),
        ),
    }
}

/// `L ∩ wedge^{k-1} A* = p1(L)° ^ wedge^{k-2} A*` at one fibre.
fn l2_at(f: &Fibre) -> Result<(), String> {
    let width = words(f.n, f.k as usize - 1).len();
    let target = wedge_span(&f.annihilator(), f.k as usize - 2, f.n);
    let forward = span_contains(&target, &f.cap, width);
    let backward = span_contains(&f.cap, &target, width);
    let dims = f.cap.len() == Echelon::new(&target, width).rank();
    match (forward, backward, dims) {
        (true, true, true) => Ok(()),
        (false, _, _) => Err("L contains forms outside p1(L)° ^ wedge^{k-2} A*".into()),
        (_, false, _) => Err("p1(L)° ^ wedge^{k-2} A* is not contained in L".into()),
        _ => Err("dimension mismatch".into()),
    }
}

/// `<L, L> ⊆ D ^ wedge^{k-3} A*` at one fibre, for the given covectors `D`.
fn pairing_in(f: &Fibre, d: &[Vec<Rational>]) -> Result<(), String> {
    let j = f.k as usize - 2;
    let width = words(f.n, j).len();
    let target = Echelon::new(&wedge_span(d, j - 1, f.n), width);
    let sections = f.sections();
    for (s, a) in sections.iter().enumerate() {
        for b in &sections[s..] {
            let p = pairing(a, b);
            if !target.contains(&form_row(&p, j, &[])) {
                return Err(format!("pairing {p:?} of basis sections escapes"));
            }
        }
    }
    Ok(())
}

/// Lagrangian conditions L0 (constant rank of `p1(L)`, a soft clause whose
/// failure means weak lagrangian), L2 and L1, plus constancy of the rank of
/// `L` itself.
pub fn check_lagrangian(spec: &SubbundleSpec) -> Report {
    let points = spec.points();
    let fibres: Vec<Fibre> = points.iter().map(|p| Fibre::at(spec, p)).collect();
    let mut report = Report::new("lagrangian");
    let ranks: Vec<usize> = fibres.iter().map(Fibre::rank).collect();
    let (ok, detail) = constant_rank(&points, &ranks);
    report.clause("subbundle", ok, detail);
    let l2 = fibres.iter().zip(&points).find_map(|(f, p)| {
        l2_at(f)
            .err()
            .map(|e| format!("at {}: {e}", point_label(p)))
    });
    report.clause("L2", l2.is_none(), l2);
    let l1 = fibres.iter().zip(&points).find_map(|(f, p)| {
        pairing_in(f, &f.annihilator())
            .err()
            .map(|e| format!("at {}: {e}", point_label(p)))
    });
    report.clause("L1", l1.is_none(), l1);
    let p1: Vec<usize> = fibres.iter().map(Fibre::p1_rank).collect();
    let (ok, detail) = constant_rank(&points, &p1);
    report.soft_clause("L0", ok, detail);
    report
}

/// Hagiwara's conditions for `A = TM`-style data: `wedge^{k-1} p1(L) = pr2(L°)`
/// and vanishing of the pairing on `wedge^{k-2} p1(L)`; regularity is a soft
/// clause.
pub fn check_nambu_dirac_hagiwara(spec: &SubbundleSpec) -> Report {
    let points = spec.points();
    let (n, k) = (spec.n(), spec.k());
    let fibres: Vec<Fibre> = points.iter().map(|p| Fibre::at(spec, p)).collect();
    let mut report = Report::new("nambu-dirac");
    let ranks: Vec<usize> = fibres.iter().map(Fibre::rank).collect();
    let (ok, detail) = constant_rank(&points, &ranks);
    report.clause("subbundle", ok, detail);

    let h2 = first_failure(&points, |p| {
        let f = Fibre::at(spec, p);
        let annihilator = nullspace(&f.basis, f.width());
        let pr2: Vec<Vec<Rational>> = annihilator.iter().map(|v| v[n..].to_vec()).collect();
        let top = multivector_span(&f.e, k as usize - 1, n);
        if same_span(&pr2, &top, words(n, k as usize - 1).len()) {
            Ok(())
        } else {
            Err("pr2(L°) differs from wedge^{k-1} p1(L)".into())
        }
    });
    report.clause("H2", h2.is_none(), h2);

    let h1 = first_failure(&points, |p| {
        let f = Fibre::at(spec, p);
        let probes: Vec<Wedge> = multivector_span(&f.e, k as usize - 2, n)
            .iter()
            .map(|row| super::fibre::row_form(row, n, k as usize - 2))
            .collect();
        let sections = f.sections();
        for (s, a) in sections.iter().enumerate() {
            for b in &sections[s..] {
                let pr = pairing(a, b);
                if probes.iter().any(|z| !pr.pair(z).is_zero()) {
                    return Err(format!(
                        "pairing {pr:?} does not vanish on wedge^{{k-2}} p1(L)"
                    ));
                }
            }
        }
        Ok(())
    });
    report.clause("H1", h1.is_none(), h1);

    let p1: Vec<usize> = fibres.iter().map(Fibre::p1_rank).collect();
    let (ok, detail) = constant_rank(&points, &p1);
    report.soft_clause("regular", ok, detail);
    report
}

fn d_rows(spec: &SubbundleSpec, point: &[Rational]) -> Result<Vec<Vec<Rational>>, DiracError> {
    let d = spec
        .d()
        .ok_or_else(|| DiracError::Shape("this check needs D data".into()))?;
    Ok(d.iter().map(|v| vector_at(v, point)).collect())
}

/// `L ∩ wedge^{k-1} A* = D ^ wedge^{k-2} A*`.
fn sub1_at(f: &Fibre, d: &[Vec<Rational>]) -> Result<(), String> {
    let width = words(f.n, f.k as usize - 1).len();
    let target = wedge_span(d, f.k as usize - 2, f.n);
    if same_span(&f.cap, &target, width) {
        Ok(())
    } else {
        Err("L ∩ wedge^{k-1} A* differs from D ^ wedge^{k-2} A*".into())
    }
}

/// `K ∩ (End(A) + wedge^k A*) = D ⊗ A + L ^ A*`.
fn sub2_at(
    spec: &SubbundleSpec,
    chart: &CotangentChart,
    f: &Fibre,
    d: &[Vec<Rational>],
    point: &[Rational],
) -> Result<(), String> {
    let k_data = spec.k_data().unwrap_or_default();
    let p_pos = chart.p_positions();
    let polys: Vec<GradedPoly> = k_data
        .iter()
        .map(|e| e.to_poly(chart))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let coords: Vec<BTreeMap<Vec<u32>, Rational>> = polys
        .iter()
        .map(|p| fibre_coords(p, chart, point))
        .collect();
    let is_p = |key: &Vec<u32>| p_pos.iter().any(|&i| key[i] > 0);
    let p_parts: Vec<BTreeMap<Vec<u32>, Rational>> = coords
        .iter()
        .map(|c| {
            c.iter()
                .filter(|(k, _)| is_p(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect()
        })
        .collect();
    let refs: Vec<&BTreeMap<Vec<u32>, Rational>> = p_parts.iter().collect();
    let (rows, width) = densify(&refs);
    // combinations of K elements with no tangent part
    let combos = nullspace(&transpose(&rows, width), rows.len());
    let vertical: Vec<BTreeMap<Vec<u32>, Rational>> = combos
        .iter()
        .map(|y| {
            let mut acc: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
            for (c, v) in y.iter().zip(&coords) {
                if c.is_zero() {
                    continue;
                }
                for (key, x) in v {
                    *acc.entry(key.clone()).or_insert_with(Rational::zero) += c * x;
                }
            }
            acc.retain(|_, x| !x.is_zero());
            acc
        })
        .collect();
    let mut target = Vec::new();
    let to_err = |e: crate::symplectic::SymplecticError| e.to_string();
    for eps in d {
        let phi = chart
            .form_to_poly(&Wedge::linear(&super::fibre::constants(eps)))
            .map_err(to_err)?;
        for j in 0..chart.n() {
            target.push(fibre_coords(&(&phi * &chart.a(j)), chart, point));
        }
    }
    for s in f.sections() {
        let l = s.to_poly(chart).map_err(to_err)?;
        for i in 0..chart.n() {
            target.push(fibre_coords(&(&l * &chart.alpha(i)), chart, point));
        }
    }
    if sparse_same_span(&vertical, &target) {
        Ok(())
    } else {
        Err("K ∩ (End(A) + wedge^k A*) differs from D ⊗ A + L ^ A*".into())
    }
}

/// The submanifold conditions on a quadruple `(N, D, L, K)`; the second one
/// only when `K` is supplied.
pub fn check_quadruple(spec: &SubbundleSpec) -> Result<Report, DiracError> {
    let points = spec.points();
    let chart = spec.chart()?;
    let mut report = Report::new("quadruple");
    let mut sub1 = None;
    let mut sub2 = None;
    for p in &points {
        let f = Fibre::at(spec, p);
        let d = d_rows(spec, p)?;
        if sub1.is_none() {
            sub1 = sub1_at(&f, &d)
                .err()
                .map(|e| format!("at {}: {e}", point_label(p)));
        }
        if spec.k_data().is_some() && sub2.is_none() {
            sub2 = sub2_at(spec, &chart, &f, &d, p)
                .err()
                .map(|e| format!("at {}: {e}", point_label(p)));
        }
    }
    report.clause("Sub1", sub1.is_none(), sub1);
    if spec.k_data().is_some() {
        report.clause("Sub2", sub2.is_none(), sub2);
    }
    Ok(report)
}

/// Coisotropic conditions: the submanifold equations, `D ⊆ p1(L)°` and
/// `<L, L> ⊆ D ^ wedge^{k-3} A*`. Over a point the generated ideal is also
/// tested for closure under the Poisson bracket.
pub fn check_coisotropic(spec: &SubbundleSpec) -> Result<Report, DiracError> {
    let mut report = check_quadruple(spec)?;
    report.check = "coisotropic".into();
    let points = spec.points();
    let mut ann = None;
    let mut pair = None;
    for p in &points {
        let f = Fibre::at(spec, p);
        let d = d_rows(spec, p)?;
        if ann.is_none() {
            let bad = d.iter().any(|eps| {
                f.e.iter().any(|e| {
                    !eps.iter()
                        .zip(e)
                        .map(|(x, y)| x * y)
                        .sum::<Rational>()
                        .is_zero()
                })
            });
            if bad {
                ann = Some(format!(
                    "at {}: D does not annihilate p1(L)",
                    point_label(p)
                ));
            }
        }
        if pair.is_none() {
            pair = pairing_in(&f, &d)
                .err()
                .map(|e| format!("at {}: {e}", point_label(p)));
        }
    }
    report.clause("D in p1(L)°", ann.is_none(), ann);
    report.clause("<L,L> in D^(k-3)", pair.is_none(), pair);
    if spec.is_point() {
        let failure = ideal_closed(spec)?;
        report.clause("ideal closed", failure.is_none(), failure);
    }
    Ok(report)
}

/// Total dimension `dim N + (n - rk D) + (n - rk p1(L)) + (m - rk F)` of the
/// submanifold at a point, with `F` the tangent projection of `K`. Needs `D`
/// and `K`; the body is the whole base.
pub fn total_dimension(spec: &SubbundleSpec, point: &[Rational]) -> Option<usize> {
    let k_data = spec.k_data()?;
    let d = d_rows(spec, point).ok()?;
    let (m, n) = (spec.m(), spec.n());
    let f = Fibre::at(spec, point);
    let tangent: Vec<Vec<Rational>> = k_data.iter().map(|e| vector_at(&e.vector, point)).collect();
    let rk_f = Echelon::new(&tangent, m).rank();
    let rk_d = Echelon::new(&d, n).rank();
    Some(m + (n - rk_d) + (n - f.p1_rank()) + (m - rk_f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::{conormal, graph_of_form, graph_of_nambu, induced_k, NambuTensor, Regime};
    use crate::kernel::{int, BasePoly};
    use crate::report::Verdict;
    use crate::symplectic::Section;

    fn rows(r: &[&[i64]]) -> Vec<Vec<Rational>> {
        r.iter()
            .map(|v| v.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn conormal_is_lagrangian() {
        for k in [3, 4] {
            let spec = conormal(
                &rows(&[&[1, 1, 0, 0], &[0, 0, 1, 0]]),
                k,
                4,
                0,
                Regime::Point,
            )
            .unwrap();
            let r = check_lagrangian(&spec);
            assert_eq!(r.verdict, Verdict::Pass, "{r}");
            assert_eq!(check_nambu_dirac_hagiwara(&spec).verdict, Verdict::Pass);
        }
    }

    #[test]
    fn graph_of_form_meets_forms_trivially() {
        let omega = Wedge::word(4, 0b0111, BasePoly::parse("x1^2 + 1").unwrap());
        let omega = &omega + &Wedge::word(4, 0b1011, BasePoly::parse("x2").unwrap());
        let pts = vec![
            vec![int(0), int(0)],
            vec![int(1), int(-2)],
            vec![int(3), int(5)],
        ];
        let spec = graph_of_form(&omega, 3, 2, Regime::Sampled(pts.clone())).unwrap();
        assert_eq!(check_lagrangian(&spec).verdict, Verdict::Pass);
        for p in &pts {
            assert!(Fibre::at(&spec, p).cap.is_empty());
        }
    }

    #[test]
    fn missing_complement_breaks_l2() {
        // all of wedge^2 A* plus e1, e2: alpha1 ^ alpha2 is not in p1(L)° ^ A*
        let n = 3;
        let mut sections = vec![Section::basis(n, 0), Section::basis(n, 1)];
        for w in words(n, 2) {
            sections.push(Section::form(Wedge::word(n, w, BasePoly::int(1))));
        }
        let spec = SubbundleSpec::new(3, 0, n, Regime::Point, sections).unwrap();
        let r = check_lagrangian(&spec);
        assert_eq!(r.clause_holds("L2"), Some(false));
        assert_eq!(
            check_nambu_dirac_hagiwara(&spec).clause_holds("H2"),
            Some(false)
        );
    }

    #[test]
    fn vanishing_nambu_graph_is_weak() {
        let pi =
            NambuTensor::new(3, 1, Wedge::word(4, 0b0111, BasePoly::parse("x1").unwrap())).unwrap();
        let spec = graph_of_nambu(&pi, Regime::Sampled(vec![vec![int(0)], vec![int(2)]])).unwrap();
        let r = check_lagrangian(&spec);
        assert_eq!(r.verdict, Verdict::Weak, "{r}");
        assert_eq!(check_nambu_dirac_hagiwara(&spec).verdict, Verdict::Weak);
    }

    #[test]
    fn non_isotropic_breaks_h1() {
        // <e1 + alpha1^alpha2, e2 + alpha1^alpha3> = alpha3 - alpha1, not in p1(L)°
        let n = 3;
        let s1 = Section {
            a: vec![BasePoly::int(1), BasePoly::zero(), BasePoly::zero()],
            omega: Wedge::word(n, 0b011, BasePoly::int(1)),
        };
        let s2 = Section {
            a: vec![BasePoly::zero(), BasePoly::int(1), BasePoly::zero()],
            omega: Wedge::word(n, 0b101, BasePoly::int(1)),
        };
        let spec = SubbundleSpec::new(3, 0, n, Regime::Point, vec![s1, s2]).unwrap();
        let l = check_lagrangian(&spec);
        let h = check_nambu_dirac_hagiwara(&spec);
        assert_eq!(l.clause_holds("L1"), Some(false));
        assert_eq!(h.clause_holds("H1"), Some(false));
    }

    #[test]
    fn lagrangian_quadruple_with_induced_k() {
        let spec = conormal(&rows(&[&[1, 0, 2, 0]]), 4, 4, 0, Regime::Point).unwrap();
        let f = Fibre::at(&spec, &[]);
        let d: Vec<Vec<BasePoly>> = f
            .annihilator()
            .iter()
            .map(|v| crate::dirac::fibre::constants(v))
            .collect();
        let k = induced_k(&spec).unwrap();
        let spec = spec.with_d(d).unwrap().with_k(k).unwrap();
        let r = check_coisotropic(&spec).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r}");
        assert_eq!(total_dimension(&spec, &[]), Some(4));
    }

    #[test]
    fn d_outside_annihilator_fails() {
        let spec = conormal(&rows(&[&[1, 0, 0]]), 3, 3, 0, Regime::Point).unwrap();
        let d = vec![vec![BasePoly::int(1), BasePoly::zero(), BasePoly::zero()]];
        let spec = spec.with_d(d).unwrap();
        let r = check_coisotropic(&spec).unwrap();
        assert_eq!(r.clause_holds("D in p1(L)°"), Some(false));
    }

    #[test]
    fn empty_quadruple_is_coisotropic() {
        let spec = SubbundleSpec::new(3, 0, 3, Regime::Point, vec![])
            .unwrap()
            .with_d(vec![])
            .unwrap()
            .with_k(vec![])
            .unwrap();
        let r = check_coisotropic(&spec).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r}");
    }

    #[test]
    fn coisotropic_needs_d() {
        let spec = SubbundleSpec::new(3, 0, 3, Regime::Point, vec![]).unwrap();
        assert!(check_coisotropic(&spec).is_err());
    }
}
