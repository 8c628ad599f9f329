use super::{AlgebroidError, LieAlgebroidData, Pairing};
use crate::exterior::Wedge;
use crate::kernel::{int, BasePoly, GradedPoly};
use crate::report::Report;
use crate::symplectic::{poisson, CotangentChart};

/// The pieces of a degree `k+1` hamiltonian, split by momentum content.
#[derive(Debug, Clone)]
pub struct ThetaParts {
    pub theta: GradedPoly,
    pub pi: GradedPoly,
    pub h: GradedPoly,
}

pub fn split_theta(theta_h: &GradedPoly, chart: &CotangentChart) -> ThetaParts {
    let a_pos = chart.a_positions();
    let p_pos = chart.p_positions();
    let a_count = |m: &crate::kernel::Monomial| a_pos.iter().map(|&p| m.exponent(p)).sum::<u32>();
    let p_count = |m: &crate::kernel::Monomial| p_pos.iter().map(|&p| m.exponent(p)).sum::<u32>();
    ThetaParts {
        h: theta_h.filter_terms(|m| a_count(m) == 0 && p_count(m) == 0),
        pi: theta_h.filter_terms(|m| a_count(m) >= 2),
        theta: theta_h.filter_terms(|m| a_count(m) + p_count(m) == 1),
    }
}

fn component(report: &mut Report, name: &str, value: &GradedPoly) {
    report.clause(name, value.is_zero(), Some(value.to_string()));
}

/// Checks `{theta_H, theta_H} = 0`, reporting the obstruction by component.
pub fn check_master(
    theta_h: &GradedPoly,
    chart: &CotangentChart,
) -> Result<Report, AlgebroidError> {
    let k = chart.k();
    if !theta_h.is_homogeneous_of(k + 1) {
        return Err(AlgebroidError::Degree {
            expected: k + 1,
            got: theta_h.to_string(),
        });
    }
    let parts = split_theta(theta_h, chart);
    let mut report = Report::new("master-equation");
    let tt = poisson(&parts.theta, &parts.theta, chart)?;
    let th = poisson(&parts.theta, &parts.h, chart)?;
    if k == 3 {
        let ph = poisson(&parts.pi, &parts.h, chart)?;
        let tp = poisson(&parts.theta, &parts.pi, chart)?;
        component(
            &mut report,
            "{theta,theta}+2{pi,H}",
            &(&tt + &ph.scale(&int(2))),
        );
        component(&mut report, "{theta,pi}", &tp);
    } else {
        if !parts.pi.is_zero() {
            return Err(AlgebroidError::PairingNeedsK3);
        }
        component(&mut report, "{theta,theta}", &tt);
    }
    component(&mut report, "{theta,H}", &th);
    let total = poisson(theta_h, theta_h, chart)?;
    debug_assert_eq!(total.is_zero(), report.passed());
    Ok(report)
}

/// The four defining conditions of a `k = 3` structure evaluated on basis
/// sections: anchor compatibility, the twisted Jacobi identity, invariance
/// of the pairing and `d_A H = 0`.
pub fn check_q3_conditions(
    alg: &LieAlgebroidData,
    pi: &Pairing,
    h: &Wedge,
) -> Result<Report, AlgebroidError> {
    let n = alg.n();
    if pi.rank() != n || (!h.is_zero() && (h.rank() != n || !h.is_homogeneous_of(4))) {
        return Err(AlgebroidError::Shape(
            "pairing or H does not match the rank".into(),
        ));
    }
    let mut report = Report::new("q3-conditions");

    let mut bad = None;
    'anchor: for a in 0..n {
        for b in a + 1..n {
            if alg.anchor_defect(a, b).iter().any(|f| !f.is_zero()) {
                bad = Some(format!("(e{}, e{})", a + 1, b + 1));
                break 'anchor;
            }
        }
    }
    report.clause("anchor", bad.is_none(), bad);

    let mut bad = None;
    'jacobi: for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let jac = alg.jacobiator(a, b, c);
                let ihhh = h
                    .interior(&alg.basis(c))
                    .interior(&alg.basis(b))
                    .interior(&alg.basis(a));
                let xi: Vec<BasePoly> = (0..n).map(|d| ihhh.coefficient(1 << d)).collect();
                let rhs = pi.flat(&xi);
                if jac != rhs {
                    bad = Some(format!("(e{}, e{}, e{})", a + 1, b + 1, c + 1));
                    break 'jacobi;
                }
            }
        }
    }
    report.clause("jacobi", bad.is_none(), bad);

    // The invariance identity is not function-linear in the section, so it
    // is tested on e_d and on every x^i e_d.
    let mut bad = None;
    let mut sections: Vec<(String, Vec<BasePoly>)> = (0..n)
        .map(|d| (format!("e{}", d + 1), alg.basis(d)))
        .collect();
    for i in 0..alg.m() {
        for d in 0..n {
            let mut v = vec![BasePoly::zero(); n];
            v[d] = BasePoly::var(i);
            sections.push((format!("x{}*e{}", i + 1, d + 1), v));
        }
    }
    let pair = |u: &Wedge, w: &Wedge| {
        let mut acc = BasePoly::zero();
        for a in 0..n {
            for b in 0..n {
                acc = &acc + &(&(pi.entry(a, b) * &u.coefficient(1 << a)) * &w.coefficient(1 << b));
            }
        }
        acc
    };
    let lie = |v: &[BasePoly], w: &Wedge| {
        &alg.differential(w).interior(v) + &alg.differential(&w.interior(v))
    };
    'invariance: for (label, v) in &sections {
        for a in 0..n {
            for b in a..n {
                let (wa, wb) = (
                    Wedge::word(n, 1 << a, BasePoly::int(1)),
                    Wedge::word(n, 1 << b, BasePoly::int(1)),
                );
                let lhs = &pair(&lie(v, &wa), &wb) + &pair(&wa, &lie(v, &wb));
                let rhs = alg.anchor_apply(v, &pair(&wa, &wb));
                if lhs != rhs {
                    bad = Some(format!("{label} on (alpha{}, alpha{})", a + 1, b + 1));
                    break 'invariance;
                }
            }
        }
    }
    report.clause("invariance", bad.is_none(), bad);

    let dh = alg.differential(h);
    report.clause("d_A H", dh.is_zero(), Some(format!("{dh:?}")));
    Ok(report)
}
