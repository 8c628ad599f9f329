use graded_cotangent::algebroid::{
    build_theta, cartan_bracket, check_master, check_q3_conditions, d_a, derived_bracket,
    LieAlgebroidData, Pairing,
};
use graded_cotangent::catalog;
use graded_cotangent::exterior::Wedge;
use graded_cotangent::kernel::{BasePoly, GradedPoly};
use graded_cotangent::random;
use graded_cotangent::report::{Report, Verdict};
use graded_cotangent::symplectic::{poisson, twist as apply_twist, CotangentChart, TwistCochain};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use super::{label, Random};
use crate::dto::{chart_poly, form, pairing, AlgebroidDto, Scalar};
use crate::error::Result;
use crate::outcome::{verdict_of, CaseOutcome};

const BRUTE: &str = "jacobiator and d_A H";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct MasterCase {
    name: Option<String>,
    algebroid: AlgebroidDto,
    k: u32,
    h: Option<String>,
    pairing: Option<Vec<Vec<Scalar>>>,
    expect: Option<Verdict>,
}

/// Brute force: Jacobi identity and anchor compatibility on basis sections,
/// and the Cartan differential of `H`.
fn brute_force(alg: &LieAlgebroidData, h: &Wedge) -> Verdict {
    verdict_of(alg.is_lie() && alg.differential(h).is_zero())
}

fn master_outcome(
    label: String,
    alg: &LieAlgebroidData,
    k: u32,
    h: &Wedge,
    pi: Option<&Pairing>,
) -> Result<CaseOutcome> {
    let chart = CotangentChart::new(k, alg.m(), alg.n())?;
    let theta = build_theta(alg, h, pi, &chart)?;
    let out = CaseOutcome::new(label, check_master(&theta, &chart)?);
    Ok(match pi {
        Some(p) if !p.is_zero() => out,
        _ => out.against(BRUTE, brute_force(alg, h)),
    })
}

pub(super) fn master(i: usize, c: &MasterCase) -> Result<Vec<CaseOutcome>> {
    let alg = c.algebroid.build()?;
    let h = form(c.h.as_deref(), alg.n())?;
    let pi = c.pairing.as_deref().map(pairing).transpose()?;
    let out = master_outcome(label(&c.name, i), &alg, c.k, &h, pi.as_ref())?;
    Ok(vec![out.explicit(c.expect)])
}

/// Catalog algebroids and deliberate violations, with `H` zero, exact or
/// arbitrary.
pub(super) fn master_random(r: &Random, rng: &mut ChaCha8Rng) -> Result<Vec<CaseOutcome>> {
    let ks = r.ks(&[4, 5], 3..=6)?;
    r.mode(&["catalog"])?;
    let pool: Vec<_> = catalog::lie_algebroids()
        .into_iter()
        .chain(catalog::jacobi_violations())
        .collect();
    let mut out = Vec::with_capacity(r.count);
    for i in 0..r.count {
        let (name, alg) = &pool[i % pool.len()];
        let k = ks[rng.gen_range(0..ks.len())];
        let (m, n) = (alg.m(), alg.n());
        let (h, kind) = match rng.gen_range(0..3) {
            0 => (Wedge::zero(n), "zero"),
            1 => (
                alg.differential(&random::form(rng, n, m, k as usize, 0.8)),
                "exact",
            ),
            _ => (random::form(rng, n, m, k as usize + 1, 0.8), "arbitrary"),
        };
        let l = format!("random {}: {name}, k = {k}, {kind} H", i + 1);
        out.push(master_outcome(l, alg, k, &h, None)?.generated());
    }
    Ok(out)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct Q3Case {
    name: Option<String>,
    algebroid: AlgebroidDto,
    pairing: Vec<Vec<Scalar>>,
    h: Option<String>,
    expect: Option<Verdict>,
}

fn q3_outcome(
    label: String,
    alg: &LieAlgebroidData,
    pi: &Pairing,
    h: &Wedge,
) -> Result<CaseOutcome> {
    let conditions = check_q3_conditions(alg, pi, h)?;
    let chart = CotangentChart::new(3, alg.m(), alg.n())?;
    let master = check_master(&build_theta(alg, h, Some(pi), &chart)?, &chart)?;
    let v = master.verdict;
    Ok(CaseOutcome::new(label, conditions)
        .with_report(master)
        .against("master equation at k = 3", v))
}

pub(super) fn q3(i: usize, c: &Q3Case) -> Result<Vec<CaseOutcome>> {
    let alg = c.algebroid.build()?;
    let h = form(c.h.as_deref(), alg.n())?;
    let pi = pairing(&c.pairing)?;
    Ok(vec![
        q3_outcome(label(&c.name, i), &alg, &pi, &h)?.explicit(c.expect)
    ])
}

/// Random brackets (usually not Lie) or abelian ones, with a nonzero
/// symmetric pairing and `H` absent or arbitrary.
pub(super) fn q3_random(r: &Random, rng: &mut ChaCha8Rng) -> Result<Vec<CaseOutcome>> {
    r.ks(&[3], 3..=3)?;
    r.mode(&["random"])?;
    let mut out = Vec::with_capacity(r.count);
    for i in 0..r.count {
        let m = rng.gen_range(0..=1);
        let n = rng.gen_range(1..=4);
        let alg = if rng.gen_bool(0.5) {
            random::algebroid_data(rng, m, n, 0.3)
        } else {
            LieAlgebroidData::new(
                m,
                n,
                vec![vec![BasePoly::zero(); m]; n],
                vec![vec![vec![BasePoly::zero(); n]; n]; n],
            )?
        };
        let mut pi = vec![vec![BasePoly::zero(); n]; n];
        for a in 0..n {
            for b in a..n {
                if rng.gen_bool(0.3) {
                    let v = BasePoly::constant(random::small_rational(rng));
                    pi[a][b] = v.clone();
                    pi[b][a] = v;
                }
            }
        }
        if pi.iter().flatten().all(BasePoly::is_zero) {
            pi[0][0] = BasePoly::int(1);
        }
        let h = if rng.gen_bool(0.5) {
            random::form(rng, n, m, 4, 0.7)
        } else {
            Wedge::zero(n)
        };
        let l = format!("random {}: m = {m}, n = {n}", i + 1);
        out.push(q3_outcome(l, &alg, &Pairing::new(pi)?, &h)?.generated());
    }
    Ok(out)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct BracketCase {
    name: Option<String>,
    algebroid: AlgebroidDto,
    k: u32,
    h: Option<String>,
    e1: String,
    e2: String,
    expect: Option<Verdict>,
}

fn bracket_report(
    alg: &LieAlgebroidData,
    h: &Wedge,
    e1: &GradedPoly,
    e2: &GradedPoly,
    chart: &CotangentChart,
) -> Result<Report> {
    let theta = build_theta(alg, h, None, chart)?;
    let derived = derived_bracket(e1, e2, &theta, chart)?;
    let cartan = cartan_bracket(e1, e2, alg, h, chart)?;
    let mut r = Report::new("derived bracket");
    let detail = (derived != cartan).then(|| format!("derived {derived}, cartan {cartan}"));
    r.clause("derived = cartan", detail.is_none(), detail);
    Ok(r)
}

pub(super) fn bracket(i: usize, c: &BracketCase) -> Result<Vec<CaseOutcome>> {
    let alg = c.algebroid.build()?;
    let chart = CotangentChart::new(c.k, alg.m(), alg.n())?;
    let h = form(c.h.as_deref(), alg.n())?;
    let e1 = chart_poly(&c.e1, &chart)?;
    let e2 = chart_poly(&c.e2, &chart)?;
    let r = bracket_report(&alg, &h, &e1, &e2, &chart)?;
    Ok(vec![
        CaseOutcome::new(label(&c.name, i), r).explicit(c.expect)
    ])
}

/// A random chart with random bracket data and, half the time, random `H`.
fn random_setting(
    rng: &mut ChaCha8Rng,
    ks: &[u32],
) -> Result<(LieAlgebroidData, CotangentChart, Wedge)> {
    let k = ks[rng.gen_range(0..ks.len())];
    let m = rng.gen_range(0..=2);
    let n = rng.gen_range(1..=4);
    let alg = random::algebroid_data(rng, m, n, 0.5);
    let chart = CotangentChart::new(k, m, n)?;
    let h = if rng.gen_bool(0.5) {
        random::form(rng, n, m, k as usize + 1, 0.7)
    } else {
        Wedge::zero(n)
    };
    Ok((alg, chart, h))
}

fn setting_label(i: usize, chart: &CotangentChart, h: &Wedge) -> String {
    format!(
        "random {}: k = {}, m = {}, n = {}, H {}",
        i + 1,
        chart.k(),
        chart.m(),
        chart.n(),
        if h.is_zero() { "zero" } else { "nonzero" }
    )
}

pub(super) fn bracket_random(r: &Random, rng: &mut ChaCha8Rng) -> Result<Vec<CaseOutcome>> {
    let ks = r.ks(&[3, 4, 5], 3..=6)?;
    r.mode(&["random"])?;
    let mut out = Vec::with_capacity(r.count);
    for i in 0..r.count {
        let (alg, chart, h) = random_setting(rng, &ks)?;
        let e1 = random::homogeneous(rng, &chart, chart.k() - 1, 3);
        let e2 = random::homogeneous(rng, &chart, chart.k() - 1, 3);
        let rep = bracket_report(&alg, &h, &e1, &e2, &chart)?;
        out.push(CaseOutcome::new(setting_label(i, &chart, &h), rep).generated());
    }
    Ok(out)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct TwistCase {
    name: Option<String>,
    algebroid: AlgebroidDto,
    k: u32,
    h: Option<String>,
    b: String,
    #[serde(default)]
    pairs: Vec<[String; 2]>,
    expect: Option<Verdict>,
}

fn twist_report(
    alg: &LieAlgebroidData,
    h: &Wedge,
    b: &GradedPoly,
    pairs: &[(GradedPoly, GradedPoly)],
    chart: &CotangentChart,
) -> Result<Report> {
    let theta = build_theta(alg, h, None, chart)?;
    let tb = TwistCochain::new(b.clone(), chart)?;
    let moved = apply_twist(&tb, &theta, chart)?;
    let expected = &theta + &d_a(b, alg, chart)?;
    let mut r = Report::new("twist");
    let defect = &moved - &expected;
    let detail = (!defect.is_zero()).then(|| format!("defect {defect}"));
    r.clause("tau(theta_H) = theta_H + d_A B", detail.is_none(), detail);
    for (f, g) in pairs {
        let lhs = poisson(
            &apply_twist(&tb, f, chart)?,
            &apply_twist(&tb, g, chart)?,
            chart,
        )?;
        let rhs = apply_twist(&tb, &poisson(f, g, chart)?, chart)?;
        let defect = &lhs - &rhs;
        let detail = (!defect.is_zero()).then(|| format!("defect {defect}"));
        r.clause(
            format!("tau preserves {{{f}, {g}}}"),
            detail.is_none(),
            detail,
        );
    }
    Ok(r)
}

pub(super) fn twist(i: usize, c: &TwistCase) -> Result<Vec<CaseOutcome>> {
    let alg = c.algebroid.build()?;
    let chart = CotangentChart::new(c.k, alg.m(), alg.n())?;
    let h = form(c.h.as_deref(), alg.n())?;
    let b = chart_poly(&c.b, &chart)?;
    let pairs = c
        .pairs
        .iter()
        .map(|[f, g]| Ok((chart_poly(f, &chart)?, chart_poly(g, &chart)?)))
        .collect::<Result<Vec<_>>>()?;
    let r = twist_report(&alg, &h, &b, &pairs, &chart)?;
    Ok(vec![
        CaseOutcome::new(label(&c.name, i), r).explicit(c.expect)
    ])
}

/// A random `k`-form `B` and one random pair of homogeneous functions.
pub(super) fn twist_random(r: &Random, rng: &mut ChaCha8Rng) -> Result<Vec<CaseOutcome>> {
    let ks = r.ks(&[3, 4, 5], 3..=6)?;
    r.mode(&["random"])?;
    let mut out = Vec::with_capacity(r.count);
    for i in 0..r.count {
        let (alg, chart, h) = random_setting(rng, &ks)?;
        let k = chart.k();
        let b = chart.form_to_poly(&random::form(rng, chart.n(), chart.m(), k as usize, 0.6))?;
        let d1 = rng.gen_range(0..=k + 1);
        let d2 = rng.gen_range(0..=k + 1);
        let f = random::homogeneous(rng, &chart, d1, 3);
        let g = random::homogeneous(rng, &chart, d2, 3);
        let rep = twist_report(&alg, &h, &b, &[(f, g)], &chart)?;
        out.push(CaseOutcome::new(setting_label(i, &chart, &h), rep).generated());
    }
    Ok(out)
}
