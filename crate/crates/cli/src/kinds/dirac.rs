use graded_cotangent::algebroid::{build_theta, LieAlgebroidData};
use graded_cotangent::catalog;
use graded_cotangent::dirac::{
    check_coisotropic, check_higher_dirac, check_lagrangian, check_nambu_dirac_hagiwara,
    check_quadruple, check_twisted_nambu, check_wade, conormal, from_pair, graph_closure,
    graph_of_form, graph_of_nambu, induced_k, is_decomposable, preserves_ideal, to_pair,
    NambuTensor, PairSpec, Regime, SubbundleSpec,
};
use graded_cotangent::exterior::Wedge;
use graded_cotangent::random;
use graded_cotangent::report::{Report, Verdict};
use graded_cotangent::symplectic::{CotangentChart, Section};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{kebab, label, Random};
use crate::dto::{form, multivector, poly_rows, polys, rational_rows, AlgebroidDto, Scalar};
use crate::error::{schema, Result};
use crate::outcome::CaseOutcome;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SectionDto {
    a: Option<Vec<Scalar>>,
    omega: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairDto {
    e: Vec<Vec<Scalar>>,
    /// A `k`-form on `E`, in the frame `alpha1..alphar` dual to the rows.
    omega: String,
}

/// Exactly one way of presenting `L`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct SubbundleDto {
    sections: Option<Vec<SectionDto>>,
    pair: Option<PairDto>,
    conormal: Option<Vec<Vec<Scalar>>>,
    graph_of_form: Option<String>,
    graph_of_nambu: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum DiracCheck {
    Lagrangian,
    NambuDirac,
    Coisotropic,
    Quadruple,
    HigherDirac,
    Ideal,
    RoundTrip,
    Wade,
    LagrangianVsHagiwara,
    ClosureVsIdeal,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub(super) struct DiracCase {
    name: Option<String>,
    k: u32,
    n: usize,
    #[serde(default)]
    m: usize,
    /// Sample points of the base; absent means the point regime.
    points: Option<Vec<Vec<Scalar>>>,
    subbundle: SubbundleDto,
    d: Option<Vec<Vec<Scalar>>>,
    /// Only `"induced"` is accepted.
    k_data: Option<String>,
    algebroid: Option<AlgebroidDto>,
    h: Option<String>,
    #[serde(default)]
    checks: Vec<DiracCheck>,
    expect: Option<Verdict>,
}

struct Built {
    spec: SubbundleSpec,
    pair: Option<PairSpec>,
}

fn build(c: &DiracCase) -> Result<Built> {
    let regime = match &c.points {
        None => Regime::Point,
        Some(p) => Regime::Sampled(rational_rows(p)?),
    };
    let s = &c.subbundle;
    let given = [
        s.sections.is_some(),
        s.pair.is_some(),
        s.conormal.is_some(),
        s.graph_of_form.is_some(),
        s.graph_of_nambu.is_some(),
    ];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(schema(
            "subbundle: give exactly one of sections, pair, conormal, graph-of-form, graph-of-nambu",
        ));
    }
    let mut pair = None;
    let spec = if let Some(sections) = &s.sections {
        let sections = sections
            .iter()
            .map(|d| {
                Ok(Section {
                    a: match &d.a {
                        Some(a) => polys(a)?,
                        None => Section::zero(c.n).a,
                    },
                    omega: form(d.omega.as_deref(), c.n)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SubbundleSpec::new(c.k, c.m, c.n, regime, sections)?
    } else if let Some(p) = &s.pair {
        if regime != Regime::Point || c.m != 0 {
            return Err(schema("subbundle: a pair lives over a point"));
        }
        let e = rational_rows(&p.e)?;
        let omega = form(Some(&p.omega), e.len())?;
        let ps = PairSpec::new(c.k, c.n, e, omega)?;
        let spec = from_pair(&ps)?;
        pair = Some(ps);
        spec
    } else if let Some(b) = &s.conormal {
        conormal(&rational_rows(b)?, c.k, c.n, c.m, regime)?
    } else if let Some(w) = &s.graph_of_form {
        graph_of_form(&form(Some(w), c.n)?, c.k, c.m, regime)?
    } else {
        let expr = s.graph_of_nambu.as_deref().expect("counted above");
        let pi = NambuTensor::new(c.k, c.m, multivector(expr, c.n)?)?;
        graph_of_nambu(&pi, regime)?
    };
    let spec = match &c.d {
        Some(d) => spec.with_d(poly_rows(d)?)?,
        None => spec,
    };
    let spec = match c.k_data.as_deref() {
        None => spec,
        Some("induced") => {
            let kd = induced_k(&spec)?;
            spec.with_k(kd)?
        }
        Some(other) => {
            return Err(schema(format!(
                "k-data: only `induced` is supported, got `{other}`"
            )))
        }
    };
    Ok(Built { spec, pair })
}

fn algebroid_and_h(c: &DiracCase) -> Result<(LieAlgebroidData, Wedge)> {
    let alg = c
        .algebroid
        .as_ref()
        .ok_or_else(|| schema("this check needs an `algebroid`"))?
        .build()?;
    let h = form(c.h.as_deref(), alg.n())?;
    Ok((alg, h))
}

fn ideal_report(spec: &SubbundleSpec, alg: &LieAlgebroidData, h: &Wedge) -> Result<Report> {
    let chart = CotangentChart::new(spec.k(), alg.m(), alg.n())?;
    Ok(preserves_ideal(spec, &build_theta(alg, h, None, &chart)?)?)
}

/// `to_pair` after `from_pair` returns an equivalent pair, both ways.
fn round_trip_report(pair: &PairSpec, shuffle: Option<&mut ChaCha8Rng>) -> Result<Report> {
    let spec = from_pair(pair)?;
    let mut r = check_lagrangian(&spec);
    r.check = "round trip".into();
    let spec = match shuffle {
        Some(rng) => {
            let mut sections = spec.sections().to_vec();
            sections.shuffle(rng);
            SubbundleSpec::new(spec.k(), 0, spec.n(), Regime::Point, sections)?
        }
        None => spec,
    };
    let back = to_pair(&spec)?;
    let same = back.equivalent(pair) && pair.equivalent(&back);
    let detail = (!same).then(|| format!("{pair:?} came back as {back:?}"));
    r.clause("to_pair(from_pair(pair)) ~ pair", same, detail);
    Ok(r)
}

fn run_check(check: DiracCheck, c: &DiracCase, b: &Built, name: String) -> Result<CaseOutcome> {
    let spec = &b.spec;
    let pair = || -> Result<PairSpec> {
        match &b.pair {
            Some(p) => Ok(p.clone()),
            None => Ok(to_pair(spec)?),
        }
    };
    Ok(match check {
        DiracCheck::Lagrangian => CaseOutcome::new(name, check_lagrangian(spec)),
        DiracCheck::NambuDirac => CaseOutcome::new(name, check_nambu_dirac_hagiwara(spec)),
        DiracCheck::Coisotropic => CaseOutcome::new(name, check_coisotropic(spec)?),
        DiracCheck::Quadruple => CaseOutcome::new(name, check_quadruple(spec)?),
        DiracCheck::HigherDirac => {
            let (alg, h) = algebroid_and_h(c)?;
            CaseOutcome::new(name, check_higher_dirac(spec, &alg, &h)?)
        }
        DiracCheck::Ideal => {
            let (alg, h) = algebroid_and_h(c)?;
            CaseOutcome::new(name, ideal_report(spec, &alg, &h)?)
        }
        DiracCheck::RoundTrip => CaseOutcome::new(name, round_trip_report(&pair()?, None)?),
        DiracCheck::Wade => CaseOutcome::new(name, check_wade(&pair()?)),
        DiracCheck::LagrangianVsHagiwara => {
            let other = check_nambu_dirac_hagiwara(spec);
            let v = other.verdict;
            CaseOutcome::new(name, check_lagrangian(spec))
                .with_report(other)
                .against("nambu-dirac", v)
        }
        DiracCheck::ClosureVsIdeal => {
            let (alg, h) = algebroid_and_h(c)?;
            let ideal = ideal_report(spec, &alg, &h)?;
            let v = ideal.verdict;
            CaseOutcome::new(name, check_higher_dirac(spec, &alg, &h)?)
                .with_report(ideal)
                .against("ideal preservation", v)
        }
    })
}

fn run_case(i: usize, c: &DiracCase, default: &[DiracCheck]) -> Result<Vec<CaseOutcome>> {
    let checks = if c.checks.is_empty() {
        default
    } else {
        &c.checks
    };
    if checks.is_empty() {
        return Err(schema("case lists no `checks`"));
    }
    let b = build(c)?;
    let mut out = Vec::new();
    for &check in checks {
        let l = format!("{} [{}]", label(&c.name, i), kebab(&check));
        out.push(run_check(check, c, &b, l)?.explicit(c.expect));
    }
    Ok(out)
}

pub(super) fn dirac(i: usize, c: &DiracCase) -> Result<Vec<CaseOutcome>> {
    run_case(i, c, &[])
}

pub(super) fn quadruple(i: usize, c: &DiracCase) -> Result<Vec<CaseOutcome>> {
    run_case(i, c, &[DiracCheck::Quadruple])
}

pub(super) fn dirac_random(r: &Random, rng: &mut ChaCha8Rng) -> Result<Vec<CaseOutcome>> {
    let mode = r.mode(&["round-trip", "lagrangian-vs-hagiwara", "closure-vs-ideal"])?;
    let mut out = Vec::with_capacity(r.count);
    match mode {
        "round-trip" => {
            let ks = r.ks(&[4], 3..=6)?;
            for i in 0..r.count {
                let k = ks[rng.gen_range(0..ks.len())];
                let n = rng.gen_range(3..=6);
                let pair = random::pair(rng, k, n);
                let l = format!(
                    "random {}: k = {k}, n = {n}, rank E = {}",
                    i + 1,
                    pair.e().len()
                );
                out.push(CaseOutcome::new(l, round_trip_report(&pair, Some(rng))?).generated());
            }
        }
        "lagrangian-vs-hagiwara" => {
            r.ks(&[3, 4], 3..=4)?;
            for i in 0..r.count {
                let spec = random::sampled_subbundle(rng);
                let other = check_nambu_dirac_hagiwara(&spec);
                let v = other.verdict;
                let l = format!(
                    "random {}: k = {}, m = {}, n = {}",
                    i + 1,
                    spec.k(),
                    spec.m(),
                    spec.n()
                );
                out.push(
                    CaseOutcome::new(l, check_lagrangian(&spec))
                        .with_report(other)
                        .against("nambu-dirac", v)
                        .generated(),
                );
            }
        }
        _ => {
            r.ks(&[3, 4], 3..=4)?;
            let algebras = catalog::lie_algebras();
            for i in 0..r.count {
                let (name, alg) = &algebras[i % algebras.len()];
                let k = if alg.n() <= 4 {
                    rng.gen_range(3..=4)
                } else {
                    3
                };
                let (spec, h) = random::higher_dirac_instance(rng, alg, k);
                let ideal = ideal_report(&spec, alg, &h)?;
                let v = ideal.verdict;
                let l = format!("random {}: {name}, k = {k}", i + 1);
                out.push(
                    CaseOutcome::new(l, check_higher_dirac(&spec, alg, &h)?)
                        .with_report(ideal)
                        .against("ideal preservation", v)
                        .generated(),
                );
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum NambuCheck {
    Decomposable,
    TwistedNambu,
    GraphClosure,
    TwoPath,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct NambuCase {
    name: Option<String>,
    algebroid: AlgebroidDto,
    k: u32,
    tensor: String,
    h: Option<String>,
    /// Sample points for the nonvanishing test.
    #[serde(default)]
    points: Vec<Vec<Scalar>>,
    #[serde(default)]
    checks: Vec<NambuCheck>,
    expect: Option<Verdict>,
}

fn two_path(
    pi: &NambuTensor,
    alg: &LieAlgebroidData,
    h: &Wedge,
    label: String,
) -> Result<CaseOutcome> {
    let closure = graph_closure(pi, alg, h)?;
    let v = closure.verdict;
    Ok(CaseOutcome::new(label, check_twisted_nambu(pi, alg, h)?)
        .with_report(closure)
        .against("graph closure", v))
}

pub(super) fn nambu(i: usize, c: &NambuCase) -> Result<Vec<CaseOutcome>> {
    let alg = c.algebroid.build()?;
    let h = form(c.h.as_deref(), alg.n())?;
    let pi = NambuTensor::new(c.k, alg.m(), multivector(&c.tensor, alg.n())?)?;
    let points = rational_rows(&c.points)?;
    let checks = if c.checks.is_empty() {
        &[NambuCheck::TwoPath][..]
    } else {
        &c.checks
    };
    let mut out = Vec::new();
    for &check in checks {
        let l = format!("{} [{}]", label(&c.name, i), kebab(&check));
        let o = match check {
            NambuCheck::Decomposable => CaseOutcome::new(l, is_decomposable(&pi, &points)),
            NambuCheck::TwistedNambu => CaseOutcome::new(l, check_twisted_nambu(&pi, &alg, &h)?),
            NambuCheck::GraphClosure => CaseOutcome::new(l, graph_closure(&pi, &alg, &h)?),
            NambuCheck::TwoPath => two_path(&pi, &alg, &h, l)?,
        };
        out.push(o.explicit(c.expect));
    }
    Ok(out)
}

/// Random decomposable tensors on catalog algebroids of rank at least 3,
/// with their decomposability report (weak where the tensor vanishes at a
/// sample point) attached.
pub(super) fn nambu_random(r: &Random, rng: &mut ChaCha8Rng) -> Result<Vec<CaseOutcome>> {
    r.mode(&["two-path"])?;
    let ks = r.ks(&[3, 4], 3..=6)?;
    let algebroids: Vec<_> = catalog::lie_algebroids()
        .into_iter()
        .filter(|(_, g)| g.n() >= 3)
        .collect();
    let mut out = Vec::with_capacity(r.count);
    for i in 0..r.count {
        let (name, alg) = &algebroids[i % algebroids.len()];
        let allowed: Vec<u32> = ks
            .iter()
            .copied()
            .filter(|&k| k as usize <= alg.n())
            .collect();
        let k = match allowed.as_slice() {
            [] => alg.n() as u32,
            ks => ks[rng.gen_range(0..ks.len())],
        };
        let pi = NambuTensor::new(k, alg.m(), random::decomposable(rng, alg.n(), alg.m(), k))?;
        let h = random::twist(rng, alg, k);
        let grid: Vec<Vec<_>> = (0..4).map(|j| random::vector(rng, alg.m(), j)).collect();
        let l = format!("random {}: {name}, k = {k}", i + 1);
        let o = two_path(&pi, alg, &h, l)?.with_report(is_decomposable(&pi, &grid));
        out.push(o.generated());
    }
    Ok(out)
}
