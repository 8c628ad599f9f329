use graded_cotangent::algebroid::{build_theta, LieAlgebroidData};
use graded_cotangent::catalog;
use graded_cotangent::exterior::Wedge;
use graded_cotangent::random;
use graded_cotangent::report::{Report, Verdict};
use graded_cotangent::ruth_lk::{
    adjoint_rep, check_lk_jacobi, check_ruth, coadjoint_rep, q_from_lk, semidirect,
    twisted_coadjoint_semidirect, ConnectionData, LkAlgebroidData, RepUTHData, LK_CLAUSES,
    RUTH_CLAUSES,
};
use graded_cotangent::symplectic::{hamiltonian_vf, CotangentChart};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use super::{label, Random};
use crate::dto::{connection, form, AlgebroidDto, RepDto, Scalar};
use crate::error::{schema, Result};
use crate::outcome::{verdict_of, CaseOutcome};

type Gamma = Vec<Vec<Vec<Scalar>>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct RuthCase {
    name: Option<String>,
    algebroid: AlgebroidDto,
    connection: Option<Gamma>,
    rep: RepDto,
    expect: Option<Verdict>,
}

pub(super) fn ruth(i: usize, c: &RuthCase) -> Result<Vec<CaseOutcome>> {
    let alg = c.algebroid.build()?;
    let nabla = connection(c.connection.as_ref(), &alg)?;
    let rep = c.rep.build(&alg, &nabla)?;
    let r = check_ruth(&rep, &alg)?;
    Ok(vec![
        CaseOutcome::new(label(&c.name, i), r).explicit(c.expect)
    ])
}

fn random_connection(rng: &mut ChaCha8Rng, alg: &LieAlgebroidData, i: usize) -> ConnectionData {
    match i % 3 {
        0 => ConnectionData::trivial(alg.m(), alg.n()),
        1 => random::connection(rng, alg.m(), alg.n(), 0.4),
        _ => random::connection(rng, alg.m(), alg.n(), 0.8),
    }
}

/// Adjoint and coadjoint representations of every catalog algebroid, with
/// trivial and random connections.
pub(super) fn ruth_random(r: &Random, rng: &mut ChaCha8Rng) -> Result<Vec<CaseOutcome>> {
    r.mode(&["catalog"])?;
    let algebroids = catalog::lie_algebroids();
    let mut out = Vec::with_capacity(r.count);
    for i in 0..r.count {
        let (name, alg) = &algebroids[(i / 2) % algebroids.len()];
        let nabla = random_connection(rng, alg, i / 2 / algebroids.len());
        let (which, rep) = if i % 2 == 0 {
            ("adjoint", adjoint_rep(alg, &nabla)?)
        } else {
            ("coadjoint", coadjoint_rep(alg, &nabla)?)
        };
        let l = format!("random {}: {which} of {name}", i + 1);
        out.push(CaseOutcome::new(l, check_ruth(&rep, alg)?).generated());
    }
    Ok(out)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct LkCase {
    name: Option<String>,
    algebroid: AlgebroidDto,
    connection: Option<Gamma>,
    k: u32,
    /// Semidirect product with this representation.
    rep: Option<RepDto>,
    /// Coadjoint semidirect product twisted by this `(k+1)`-form.
    twist: Option<String>,
    expect: Option<Verdict>,
}

/// The representation a semidirect product was built from.
fn rep_of(lk: &LkAlgebroidData) -> Result<RepUTHData> {
    Ok(RepUTHData::new(
        lk.m(),
        lk.n(),
        lk.del.clone(),
        lk.psi.clone(),
        lk.phi.clone(),
        lk.l3.clone(),
    )?)
}

/// Jacobi clauses two to five against the representation clauses.
fn semidirect_outcome(
    label: String,
    lk: &LkAlgebroidData,
    alg: &LieAlgebroidData,
) -> Result<CaseOutcome> {
    let jacobi = check_lk_jacobi(lk)?;
    let rep = check_ruth(&rep_of(lk)?, alg)?;
    let agrees = RUTH_CLAUSES
        .iter()
        .zip(&LK_CLAUSES[1..5])
        .all(|(r, j)| rep.clause_holds(r) == jacobi.clause_holds(j));
    let v = rep.verdict;
    Ok(CaseOutcome::new(label, jacobi)
        .with_report(rep)
        .against_with("representation clauses", v, agrees))
}

fn twisted_outcome(
    label: String,
    alg: &LieAlgebroidData,
    nabla: &ConnectionData,
    h: &Wedge,
    k: u32,
) -> Result<CaseOutcome> {
    let lk = twisted_coadjoint_semidirect(alg, nabla, h, k)?;
    let jacobi = check_lk_jacobi(&lk)?;
    let closed = alg.differential(h).is_zero();
    let mut dh = Report::new("d_A H");
    dh.clause("d_A H = 0", closed, None);
    Ok(CaseOutcome::new(label, jacobi)
        .with_report(dh)
        .against("d_A H = 0", verdict_of(closed)))
}

pub(super) fn lk(i: usize, c: &LkCase) -> Result<Vec<CaseOutcome>> {
    let alg = c.algebroid.build()?;
    let nabla = connection(c.connection.as_ref(), &alg)?;
    let l = label(&c.name, i);
    let out = match (&c.rep, &c.twist) {
        (Some(rep), None) => {
            let lk = semidirect(&alg, &rep.build(&alg, &nabla)?, c.k)?;
            semidirect_outcome(l, &lk, &alg)?
        }
        (None, Some(h)) => twisted_outcome(l, &alg, &nabla, &form(Some(h), alg.n())?, c.k)?,
        _ => return Err(schema("lk case: give exactly one of `rep` and `twist`")),
    };
    Ok(vec![out.explicit(c.expect)])
}

/// `semidirect`: adjoint, coadjoint and twisted coadjoint products, half of
/// them with one structure entry perturbed, against the representation
/// clauses. `twisted`: twisted coadjoint products against `d_A H = 0`, on
/// the algebroids whose rank leaves room for a non-closed `H`.
pub(super) fn lk_random(r: &Random, rng: &mut ChaCha8Rng) -> Result<Vec<CaseOutcome>> {
    let mode = r.mode(&["semidirect", "twisted"])?;
    let algebroids = catalog::lie_algebroids();
    let mut out = Vec::with_capacity(r.count);
    if mode == "semidirect" {
        let ks = r.ks(&[4], 3..=6)?;
        for i in 0..r.count {
            let (name, alg) = &algebroids[i % algebroids.len()];
            let k = ks[rng.gen_range(0..ks.len())];
            let lk = random::lk_instance(rng, alg, k);
            let l = format!("random {}: {name}, k = {k}", i + 1);
            out.push(semidirect_outcome(l, &lk, alg)?.generated());
        }
    } else {
        let ks = r.ks(&[4, 5], 4..=6)?;
        let lowest = *ks.iter().min().expect("nonempty") as usize;
        let algebroids: Vec<_> = algebroids
            .into_iter()
            .filter(|(_, g)| g.n() > lowest + 1)
            .collect();
        if algebroids.is_empty() {
            return Err(schema(
                "no catalog algebroid carries a non-closed (k+1)-form",
            ));
        }
        for i in 0..r.count {
            let (name, alg) = &algebroids[i % algebroids.len()];
            let allowed: Vec<u32> = ks
                .iter()
                .copied()
                .filter(|&k| k as usize + 1 < alg.n())
                .collect();
            let k = allowed[rng.gen_range(0..allowed.len())];
            let nabla = random::connection(rng, alg.m(), alg.n(), 0.4);
            let h = random::twist(rng, alg, k);
            let l = format!("random {}: {name}, k = {k}", i + 1);
            out.push(twisted_outcome(l, alg, &nabla, &h, k)?.generated());
        }
    }
    Ok(out)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(super) struct CorrespondenceCase {
    name: Option<String>,
    algebroid: AlgebroidDto,
    k: u32,
    h: Option<String>,
    expect: Option<Verdict>,
}

/// The vector field of the twisted coadjoint product against the
/// hamiltonian vector field of `theta_H`, generator by generator.
fn correspondence_report(alg: &LieAlgebroidData, h: &Wedge, k: u32) -> Result<Report> {
    let n = alg.n();
    let chart = CotangentChart::new(k, alg.m(), n)?;
    let theta = build_theta(alg, h, None, &chart)?;
    let lk = twisted_coadjoint_semidirect(alg, &ConnectionData::trivial(alg.m(), n), h, k)?;
    let q = q_from_lk(&lk, &chart)?;
    let x = hamiltonian_vf(&theta, &chart)?;
    let mut r = Report::new("correspondence");
    for g in 0..chart.table().len() {
        let (a, b) = (q.value(g), x.value(g));
        let detail = (a != b).then(|| format!("{a} vs {b}"));
        r.clause(
            format!(
                "Q({}) = {{theta_H, {}}}",
                chart.table().name(g),
                chart.table().name(g)
            ),
            detail.is_none(),
            detail,
        );
    }
    Ok(r)
}

pub(super) fn correspondence(i: usize, c: &CorrespondenceCase) -> Result<Vec<CaseOutcome>> {
    let alg = c.algebroid.build()?;
    let h = form(c.h.as_deref(), alg.n())?;
    let r = correspondence_report(&alg, &h, c.k)?;
    Ok(vec![
        CaseOutcome::new(label(&c.name, i), r).explicit(c.expect)
    ])
}

/// Catalog Lie algebras with closed, exact or arbitrary `H`.
pub(super) fn correspondence_random(r: &Random, rng: &mut ChaCha8Rng) -> Result<Vec<CaseOutcome>> {
    r.mode(&["catalog"])?;
    let ks = r.ks(&[3, 4, 5], 3..=6)?;
    let algebras = catalog::lie_algebras();
    let mut out = Vec::with_capacity(r.count);
    for i in 0..r.count {
        let (name, alg) = &algebras[i % algebras.len()];
        let n = alg.n();
        let k = ks[rng.gen_range(0..ks.len())];
        let h = if (k as usize) < n && rng.gen_bool(0.5) {
            alg.differential(&random::form(rng, n, 0, k as usize, 0.6))
        } else {
            random::form(rng, n, 0, k as usize + 1, 0.6)
        };
        let l = format!(
            "random {}: {name}, k = {k}, H {}",
            i + 1,
            if h.is_zero() { "zero" } else { "nonzero" }
        );
        out.push(CaseOutcome::new(l, correspondence_report(alg, &h, k)?).generated());
    }
    Ok(out)
}
