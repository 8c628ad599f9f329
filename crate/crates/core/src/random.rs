//! Seeded generators of random instances, used by the property tests and by
//! randomized CLI documents.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebroid::LieAlgebroidData;
use crate::dirac::{
    conormal, from_pair, graph_of_form, graph_of_nambu, restrict, NambuTensor, PairSpec, Regime,
    SubbundleSpec,
};
use crate::exterior::{words, Wedge};
use crate::kernel::{frac, int, BasePoly, GradedPoly, Monomial, Rational};
use crate::linalg;
use crate::ruth_lk::{
    adjoint_rep, coadjoint_rep, semidirect, twisted_coadjoint_semidirect, ConnectionData,
    LkAlgebroidData, RepUTHData,
};
use crate::symplectic::CotangentChart;
use crate::symplectic::Section;

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let n = loop {
        let n = rng.gen_range(-4i64..=4);
        if n != 0 {
            break n;
        }
    };
    if rng.gen_bool(0.2) {
        frac(n, rng.gen_range(2..=3))
    } else {
        int(n)
    }
}

/// Possibly-zero small integer.
pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

/// A random polynomial in `m` base coordinates of total degree at most
/// `max_deg`, with at most `terms` terms.
pub fn base_poly<R: Rng>(rng: &mut R, m: usize, max_deg: u32, terms: usize) -> BasePoly {
    let mut out = Vec::new();
    for _ in 0..rng.gen_range(1..=terms.max(1)) {
        let mut e = vec![0u32; m];
        if m > 0 {
            for _ in 0..rng.gen_range(0..=max_deg) {
                e[rng.gen_range(0..m)] += 1;
            }
        }
        out.push((e, small_rational(rng)));
    }
    BasePoly::from_terms(out)
}

/// A random homogeneous element of the given degree, or zero if the attempt
/// budget runs out (some degrees admit no monomials).
pub fn homogeneous<R: Rng>(
    rng: &mut R,
    chart: &CotangentChart,
    degree: u32,
    terms: usize,
) -> GradedPoly {
    let t = chart.table().clone();
    let mut out = GradedPoly::zero(&t);
    for _ in 0..terms {
        for _attempt in 0..20 {
            if let Some(m) = random_monomial(rng, chart, degree) {
                out += &GradedPoly::from_term(&t, m, small_rational(rng));
                break;
            }
        }
    }
    out
}

fn random_monomial<R: Rng>(rng: &mut R, chart: &CotangentChart, degree: u32) -> Option<Monomial> {
    let t = chart.table();
    let mut e = vec![0u32; t.len()];
    let mut left = degree;
    let mut positive: Vec<usize> = (0..t.len()).filter(|&i| t.degree(i) > 0).collect();
    while left > 0 {
        positive.shuffle(rng);
        let pick = positive
            .iter()
            .copied()
            .find(|&i| t.degree(i) <= left && !(t.is_odd(i) && e[i] > 0))?;
        e[pick] += 1;
        left -= t.degree(pick);
    }
    if chart.m() > 0 {
        for _ in 0..rng.gen_range(0..=2) {
            e[rng.gen_range(0..chart.m())] += 1;
        }
    }
    Some(Monomial(e))
}

/// A random form of degree `j` in a rank-`n` frame with coefficients in `m`
/// coordinates.
pub fn form<R: Rng>(rng: &mut R, n: usize, m: usize, j: usize, density: f64) -> Wedge {
    let mut w = Wedge::zero(n);
    for mask in words(n, j) {
        if rng.gen_bool(density) {
            w.add_term(mask, base_poly(rng, m, 1, 2));
        }
    }
    w
}

/// A random rational vector of small entries.
pub fn vector<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| small_int(rng, bound)).collect()
}

/// Random anchor and antisymmetric structure functions; in general not a
/// Lie algebroid.
pub fn algebroid_data<R: Rng>(rng: &mut R, m: usize, n: usize, density: f64) -> LieAlgebroidData {
    let anchor = (0..n)
        .map(|_| {
            (0..m)
                .map(|_| {
                    if rng.gen_bool(density) {
                        base_poly(rng, m, 1, 2)
                    } else {
                        BasePoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut brackets = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let v = (0..n)
                .map(|_| {
                    if rng.gen_bool(density / 2.0) {
                        base_poly(rng, m, 1, 2)
                    } else {
                        BasePoly::zero()
                    }
                })
                .collect();
            brackets.push(((a, b), v));
        }
    }
    LieAlgebroidData::from_brackets(m, n, anchor, &brackets).expect("random data is well formed")
}

/// Independent rows spanning a random `r`-dimensional subspace of `Q^n`.
pub fn subspace<R: Rng>(rng: &mut R, n: usize, r: usize) -> Vec<Vec<Rational>> {
    let r = r.min(n);
    loop {
        let rows: Vec<Vec<Rational>> = (0..r)
            .map(|_| {
                let mut v = vector(rng, n, 2);
                // sparsify so that coordinate subspaces show up too
                for x in v.iter_mut() {
                    if rng.gen_bool(0.3) {
                        *x = int(0);
                    }
                }
                v
            })
            .collect();
        if linalg::rank(&rows, n) == r {
            return rows;
        }
    }
}

/// A random pair `(E, Omega)` with `dim A = n`.
pub fn pair<R: Rng>(rng: &mut R, k: u32, n: usize) -> PairSpec {
    let r = rng.gen_range(0..=n);
    let e = subspace(rng, n, r);
    let omega = form(rng, r, 0, k as usize, 0.5);
    PairSpec::new(k, n, e, omega).expect("random pair is well formed")
}

/// The subalgebra of a point-base algebra generated by `gens`, as a basis.
pub fn generated_subalgebra(alg: &LieAlgebroidData, gens: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = alg.n();
    let mut basis = linalg::Echelon::new(gens, n).rows().to_vec();
    loop {
        let mut grown = basis.clone();
        for a in &basis {
            for b in &basis {
                let br = alg.bracket(&constants(a), &constants(b));
                grown.push(br.iter().map(|c| c.eval(&[])).collect());
            }
        }
        let next = linalg::Echelon::new(&grown, n).rows().to_vec();
        if next.len() == basis.len() {
            return basis;
        }
        basis = next;
    }
}

fn constants(v: &[Rational]) -> Vec<BasePoly> {
    v.iter().cloned().map(BasePoly::constant).collect()
}

fn rebase(spec: &SubbundleSpec, m: usize, regime: Regime) -> SubbundleSpec {
    SubbundleSpec::new(spec.k(), m, spec.n(), regime, spec.sections().to_vec())
        .expect("same sections, wider base")
}

fn scale_section(s: &Section, c: &BasePoly) -> Section {
    Section {
        a: s.a.iter().map(|x| x * c).collect(),
        omega: s.omega.scale(c),
    }
}

fn add_sections(s: &Section, t: &Section) -> Section {
    Section {
        a: s.a.iter().zip(&t.a).map(|(x, y)| x + y).collect(),
        omega: &s.omega + &t.omega,
    }
}

/// A subbundle over a base with `m` coordinates, probed at a few sample
/// points: graphs of forms and of tensors, conormals, pairs mixed by a
/// polynomial frame change, and perturbations of these.
pub fn sampled_subbundle<R: Rng>(rng: &mut R) -> SubbundleSpec {
    let k = rng.gen_range(3..=4u32);
    let n = rng.gen_range(2..=4usize);
    let m = rng.gen_range(1..=2usize);
    let points: Vec<Vec<Rational>> = (0..3)
        .map(|i| {
            if i == 0 {
                vec![int(0); m]
            } else {
                vector(rng, m, 2)
            }
        })
        .collect();
    let regime = Regime::Sampled(points);
    let base = match rng.gen_range(0..4) {
        0 => {
            graph_of_form(&form(rng, n, m, k as usize, 0.5), k, m, regime.clone()).expect("k-form")
        }
        1 => rebase(
            &{
                let r = rng.gen_range(0..=n);
                conormal(&subspace(rng, n, r), k, n, 0, Regime::Point).expect("conormal")
            },
            m,
            regime.clone(),
        ),
        2 => {
            let pi = if n >= k as usize && rng.gen_bool(0.7) {
                decomposable(rng, n, m, k)
            } else {
                form(rng, n, m, k as usize, 0.5)
            };
            let pi = NambuTensor::new(k, m, pi).expect("k-vector");
            graph_of_nambu(&pi, regime.clone()).expect("graph")
        }
        _ => {
            let spec = from_pair(&pair(rng, k, n)).expect("pair");
            let sections = spec.sections();
            let mixed: Vec<Section> = (0..sections.len())
                .map(|i| {
                    let mut acc = scale_section(&sections[i], &BasePoly::int(1));
                    if rng.gen_bool(0.4) {
                        let j = rng.gen_range(0..sections.len());
                        if j != i {
                            acc = add_sections(
                                &acc,
                                &scale_section(&sections[j], &base_poly(rng, m, 1, 2)),
                            );
                        } else if rng.gen_bool(0.3) {
                            acc = scale_section(&acc, &base_poly(rng, m, 1, 2));
                        }
                    }
                    acc
                })
                .collect();
            SubbundleSpec::new(k, m, n, regime.clone(), mixed).expect("mixed")
        }
    };
    if rng.gen_bool(0.6) {
        return base;
    }
    let mut sections = base.sections().to_vec();
    match rng.gen_range(0..3) {
        0 if !sections.is_empty() => {
            sections.remove(rng.gen_range(0..sections.len()));
        }
        1 => sections.push(Section::form(form(rng, n, m, k as usize - 1, 0.4))),
        _ => {
            let mut s = Section::form(form(rng, n, m, k as usize - 1, 0.4));
            s.a = (0..n)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        base_poly(rng, m, 1, 2)
                    } else {
                        BasePoly::zero()
                    }
                })
                .collect();
            sections.push(s);
        }
    }
    SubbundleSpec::new(k, m, n, regime, sections).expect("perturbed")
}

/// `f v_1 ^ .. ^ v_k` with polynomial `f` (often with zeros on the sample
/// grid) and vectors that may depend on the base.
pub fn decomposable<R: Rng>(rng: &mut R, n: usize, m: usize, k: u32) -> Wedge {
    let f = match rng.gen_range(0..3) {
        0 => BasePoly::int(1),
        1 if m > 0 => BasePoly::var(rng.gen_range(0..m)),
        _ => base_poly(rng, m, 2, 2),
    };
    let mut out = Wedge::one(n).scale(&f);
    for v in subspace(rng, n, k as usize) {
        let mut v = constants(&v);
        if m > 0 && rng.gen_bool(0.2) {
            let i = rng.gen_range(0..n);
            v[i] = &v[i] + &BasePoly::var(rng.gen_range(0..m));
        }
        out = out.wedge(&Wedge::linear(&v));
    }
    out
}

/// A twist that is exact with probability one half, else arbitrary.
pub fn twist<R: Rng>(rng: &mut R, alg: &LieAlgebroidData, k: u32) -> Wedge {
    let (n, m) = (alg.n(), alg.m());
    if rng.gen_bool(0.3) {
        Wedge::zero(n)
    } else if rng.gen_bool(0.5) {
        alg.differential(&form(rng, n, m, k as usize, 0.5))
    } else {
        form(rng, n, m, k as usize + 1, 0.4)
    }
}

/// A lagrangian over a point inside a Lie algebra, with a twist. Half of
/// the draws are built to be closed: `E` a generated subalgebra, `H = d B`
/// and `Omega = j* B`; the rest perturb one ingredient.
pub fn higher_dirac_instance<R: Rng>(
    rng: &mut R,
    alg: &LieAlgebroidData,
    k: u32,
) -> (SubbundleSpec, Wedge) {
    let n = alg.n();
    let g = rng.gen_range(0..=2usize.min(n));
    let gens = subspace(rng, n, g);
    let mut e = generated_subalgebra(alg, &gens);
    let b = form(rng, n, 0, k as usize, 0.5);
    let mut h = alg.differential(&b);
    let mut omega = restrict(&b, &e);
    match rng.gen_range(0..5) {
        0 => omega = &omega + &form(rng, e.len(), 0, k as usize, 0.5),
        1 => h = &h + &form(rng, n, 0, k as usize + 1, 0.5),
        2 => {
            let r = rng.gen_range(0..=n);
            e = subspace(rng, n, r);
            omega = restrict(&b, &e);
        }
        _ => {}
    }
    let pair = PairSpec::new(k, n, e, omega).expect("pair");
    (from_pair(&pair).expect("lagrangian"), h)
}

/// A connection on `A` with sparse affine Christoffel symbols.
pub fn connection<R: Rng>(rng: &mut R, m: usize, n: usize, density: f64) -> ConnectionData {
    let gamma = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            if rng.gen_bool(density) {
                                base_poly(rng, m, 1, 2)
                            } else {
                                BasePoly::zero()
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    ConnectionData::new(m, n, gamma).expect("shapes match")
}

/// A semidirect `L_k`-algebroid over a Lie algebroid: adjoint, coadjoint
/// or twisted coadjoint with a random connection, half of them with one
/// structure entry perturbed.
pub fn lk_instance<R: Rng>(rng: &mut R, alg: &LieAlgebroidData, k: u32) -> LkAlgebroidData {
    let (m, n) = (alg.m(), alg.n());
    let nabla = connection(rng, m, n, 0.3);
    let mut lk = match rng.gen_range(0..3) {
        0 => semidirect(alg, &adjoint_rep(alg, &nabla).expect("Lie input"), k),
        1 => semidirect(alg, &coadjoint_rep(alg, &nabla).expect("Lie input"), k),
        _ => twisted_coadjoint_semidirect(alg, &nabla, &twist(rng, alg, k), k),
    }
    .expect("well formed");
    if rng.gen_bool(0.5) {
        perturb(rng, &mut lk);
    }
    lk
}

/// The zero representation over arbitrary, usually non-Lie, bracket data.
pub fn broken_lk<R: Rng>(rng: &mut R, m: usize, n: usize, k: u32) -> LkAlgebroidData {
    let alg = algebroid_data(rng, m, n, 0.5);
    semidirect(&alg, &RepUTHData::zero(m, n), k).expect("well formed")
}

fn perturb<R: Rng>(rng: &mut R, lk: &mut LkAlgebroidData) {
    let (m, n, mid, low) = (lk.m(), lk.n(), lk.mid, lk.low);
    let k = lk.k as usize;
    let bump = |rng: &mut R| base_poly(rng, m, 1, 1);
    match rng.gen_range(0..6) {
        0 if mid > 0 && low > 0 => {
            let (t, s) = (rng.gen_range(0..low), rng.gen_range(0..mid));
            lk.del[t][s] = &lk.del[t][s] + &bump(rng);
        }
        1 if mid > 0 => {
            let (a, s, s2) = (
                rng.gen_range(0..n),
                rng.gen_range(0..mid),
                rng.gen_range(0..mid),
            );
            lk.phi[a][s][s2] = &lk.phi[a][s][s2] + &bump(rng);
        }
        2 if low > 0 => {
            let (a, t, t2) = (
                rng.gen_range(0..n),
                rng.gen_range(0..low),
                rng.gen_range(0..low),
            );
            lk.psi[a][t][t2] = &lk.psi[a][t][t2] + &bump(rng);
        }
        3 if mid > 0 && low > 0 && n > 1 => {
            let a = rng.gen_range(0..n - 1);
            let b = rng.gen_range(a + 1..n);
            let (s, t) = (rng.gen_range(0..mid), rng.gen_range(0..low));
            let e = bump(rng);
            lk.l3[a][b][s][t] = &lk.l3[a][b][s][t] + &e;
            lk.l3[b][a][s][t] = &lk.l3[b][a][s][t] - &e;
        }
        4 if mid > 0 => {
            let s = rng.gen_range(0..mid);
            lk.lk[s] = &lk.lk[s] + &form(rng, n, m, k, 0.5);
        }
        _ if low > 0 => {
            let t = rng.gen_range(0..low);
            lk.lk1[t] = &lk.lk1[t] + &form(rng, n, m, k + 1, 0.5);
        }
        _ => {}
    }
}
