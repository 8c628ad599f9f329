use super::rep::{
    apply_del, apply_k, check_antisymmetric, check_table4, connection_apply, curvature,
    first_dk_defect, unit, Table4,
};
use super::{
    check_matrix, check_table, coadjoint_rep, is_zero, show, sub, ConnectionData, RepUTHData,
    RuthError, Table3,
};
use crate::algebroid::LieAlgebroidData;
use crate::exterior::{mask_indices, Wedge};
use crate::kernel::BasePoly;
use crate::report::Report;

/// Clause names reported by [`check_lk_jacobi`], in order.
pub const LK_CLAUSES: [&str; 7] = [
    "J1 jacobi",
    "J2 Phi d = d Psi",
    "J3 l3 d = F(Psi)",
    "J4 d l3 = F(Phi)",
    "J5 d l3 closed",
    "J6 l_k",
    "J7 l_k+1",
];

/// An `L_k`-algebroid concentrated in degrees `0, -k+2, -k+1`, written
/// `A0`, `Amid`, `Alow`, in frames `e_a`, `g_s`, `f_t`:
///
/// * `base`: anchor and bracket of `A0`;
/// * `del[t][s]`: `l1 f_t = sum_s del[t][s] g_s`;
/// * `phi[a][s][s']`, `psi[a][t][t']`: the `A0`-connections on `Amid` and
///   `Alow`;
/// * `l3[a][b][s][t]`: `[e_a, e_b, g_s]_3 = sum_t l3[a][b][s][t] f_t`;
/// * `lk[s]`, `lk1[t]`: components of `l_k` and `l_{k+1}` as forms on `A0`,
///   read with `w(v_1..v_j) = i_{v_j}..i_{v_1} w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LkAlgebroidData {
    pub k: u32,
    pub base: LieAlgebroidData,
    pub mid: usize,
    pub low: usize,
    pub del: Vec<Vec<BasePoly>>,
    pub phi: Table3,
    pub psi: Table3,
    pub l3: Table4,
    pub lk: Vec<Wedge>,
    pub lk1: Vec<Wedge>,
}

impl LkAlgebroidData {
    pub fn m(&self) -> usize {
        self.base.m()
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn validate(&self) -> Result<(), RuthError> {
        let (m, n, mid, low, k) = (self.m(), self.n(), self.mid, self.low, self.k as usize);
        if self.k < 3 {
            return Err(RuthError::Shape(format!(
                "k = {}; the layout needs k >= 3",
                self.k
            )));
        }
        check_matrix("l1", &self.del, [low, mid], m)?;
        check_table("Phi", &self.phi, [n, mid, mid], m)?;
        check_table("Psi", &self.psi, [n, low, low], m)?;
        check_table4("l3", &self.l3, [n, n, mid, low], m)?;
        check_antisymmetric("l3", &self.l3, n)?;
        for (name, forms, len, deg) in [("l_k", &self.lk, mid, k), ("l_k+1", &self.lk1, low, k + 1)]
        {
            if forms.len() != len {
                return Err(RuthError::Shape(format!("{name} needs {len} components")));
            }
            for w in forms.iter() {
                if w.rank() != n || !w.is_homogeneous_of(deg) {
                    return Err(RuthError::Shape(format!(
                        "{name} components must be {deg}-forms of rank {n}"
                    )));
                }
                super::check_vars(name, w.terms().map(|(_, c)| c), m)?;
            }
        }
        Ok(())
    }

    /// Connection 1-forms: `theta[s][s'] (e_a) = table[a][s'][s]`.
    pub(crate) fn connection_forms(&self, table: &Table3, r: usize) -> Vec<Vec<Wedge>> {
        let n = self.n();
        (0..r)
            .map(|s| {
                (0..r)
                    .map(|s2| {
                        let mut w = Wedge::zero(n);
                        for (a, row) in table.iter().enumerate() {
                            w.add_term(1 << a, row[s2][s].clone());
                        }
                        w
                    })
                    .collect()
            })
            .collect()
    }

    /// `l3` as `Hom(Amid, Alow)`-valued 2-forms: `out[t][s]`.
    pub(crate) fn l3_forms(&self) -> Vec<Vec<Wedge>> {
        let n = self.n();
        (0..self.low)
            .map(|t| {
                (0..self.mid)
                    .map(|s| {
                        let mut w = Wedge::zero(n);
                        for a in 0..n {
                            for b in a + 1..n {
                                w.add_term(1 << a | 1 << b, self.l3[a][b][s][t].clone());
                            }
                        }
                        w
                    })
                    .collect()
            })
            .collect()
    }

    /// `d^nabla w` for a vector-valued form in a frame with connection forms
    /// `theta`.
    fn covariant_d(&self, theta: &[Vec<Wedge>], w: &[Wedge]) -> Vec<Wedge> {
        (0..w.len())
            .map(|s| {
                let mut out = self.base.differential(&w[s]);
                for (s2, ws2) in w.iter().enumerate() {
                    out = &out + &theta[s][s2].wedge(ws2);
                }
                out
            })
            .collect()
    }

    /// Left side of the sixth identity, a `Amid`-valued `(k+1)`-form.
    pub fn clause6_form(&self) -> Vec<Wedge> {
        let theta = self.connection_forms(&self.phi, self.mid);
        let dl = self.covariant_d(&theta, &self.lk);
        (0..self.mid)
            .map(|s| {
                let mut out = dl[s].clone();
                for t in 0..self.low {
                    out = &out + &self.lk1[t].scale(&self.del[t][s]);
                }
                out
            })
            .collect()
    }

    /// Left side of the seventh identity, a `Alow`-valued `(k+2)`-form.
    pub fn clause7_form(&self) -> Vec<Wedge> {
        let theta = self.connection_forms(&self.psi, self.low);
        let dl = self.covariant_d(&theta, &self.lk1);
        let l3 = self.l3_forms();
        (0..self.low)
            .map(|t| {
                let mut out = dl[t].clone();
                for s in 0..self.mid {
                    out = &out + &l3[t][s].wedge(&self.lk[s]);
                }
                out
            })
            .collect()
    }
}

fn tuple(mask: u32) -> String {
    let idx: Vec<String> = mask_indices(mask)
        .iter()
        .map(|i| format!("e{}", i + 1))
        .collect();
    idx.join(", ")
}

fn first_form_defect(forms: &[Wedge], label: &str) -> Option<String> {
    forms.iter().enumerate().find_map(|(s, w)| {
        w.terms()
            .find(|(_, c)| !c.is_zero())
            .map(|(mask, c)| format!("({}) in {label}{}: {c}", tuple(*mask), s + 1))
    })
}

/// The seven Jacobi-like identities of a three-degree `L_k`-algebroid with
/// `k > 3`, each on frame tuples. The first also checks the anchor.
pub fn check_lk_jacobi(lk: &LkAlgebroidData) -> Result<Report, RuthError> {
    lk.validate()?;
    if lk.k == 3 {
        return Err(RuthError::Unsupported(
            "the k = 3 layout has extra brackets; only k > 3 is checked".into(),
        ));
    }
    let alg = &lk.base;
    let (n, mid, low) = (lk.n(), lk.mid, lk.low);
    let mut report = Report::new("L_k jacobi");

    let mut j1 = None;
    'j1: for a in 0..n {
        for b in a + 1..n {
            let defect = alg.anchor_defect(a, b);
            if !is_zero(&defect) {
                j1 = Some(format!(
                    "anchor on (e{}, e{}): {}",
                    a + 1,
                    b + 1,
                    show(&defect)
                ));
                break 'j1;
            }
            for c in b + 1..n {
                let defect = alg.jacobiator(a, b, c);
                if !is_zero(&defect) {
                    j1 = Some(format!(
                        "(e{}, e{}, e{}): {}",
                        a + 1,
                        b + 1,
                        c + 1,
                        show(&defect)
                    ));
                    break 'j1;
                }
            }
        }
    }
    report.clause(LK_CLAUSES[0], j1.is_none(), j1);

    let d = |x: &[BasePoly]| apply_del(&lk.del, mid, x);
    let mut j2 = None;
    'j2: for a in 0..n {
        for t in 0..low {
            let f = unit(low, t);
            let defect = sub(
                &connection_apply(alg, &lk.phi, a, &d(&f)),
                &d(&connection_apply(alg, &lk.psi, a, &f)),
            );
            if !is_zero(&defect) {
                j2 = Some(format!("(e{}, f{}): {}", a + 1, t + 1, show(&defect)));
                break 'j2;
            }
        }
    }
    report.clause(LK_CLAUSES[1], j2.is_none(), j2);

    let (mut j3, mut j4) = (None, None);
    for a in 0..n {
        for b in a + 1..n {
            let (ea, eb) = (alg.basis(a), alg.basis(b));
            for t in 0..low {
                let f = unit(low, t);
                let defect = sub(
                    &apply_k(&lk.l3, low, &ea, &eb, &d(&f)),
                    &curvature(alg, &lk.psi, a, b, &f),
                );
                if j3.is_none() && !is_zero(&defect) {
                    j3 = Some(format!(
                        "(e{}, e{}, f{}): {}",
                        a + 1,
                        b + 1,
                        t + 1,
                        show(&defect)
                    ));
                }
            }
            for s in 0..mid {
                let g = unit(mid, s);
                let defect = sub(
                    &d(&apply_k(&lk.l3, low, &ea, &eb, &g)),
                    &curvature(alg, &lk.phi, a, b, &g),
                );
                if j4.is_none() && !is_zero(&defect) {
                    j4 = Some(format!(
                        "(e{}, e{}, g{}): {}",
                        a + 1,
                        b + 1,
                        s + 1,
                        show(&defect)
                    ));
                }
            }
        }
    }
    report.clause(LK_CLAUSES[2], j3.is_none(), j3);
    report.clause(LK_CLAUSES[3], j4.is_none(), j4);

    let j5 = first_dk_defect(alg, &lk.psi, &lk.phi, &lk.l3, low, mid);
    report.clause(LK_CLAUSES[4], j5.is_none(), j5);

    let j6 = first_form_defect(&lk.clause6_form(), "g");
    report.clause(LK_CLAUSES[5], j6.is_none(), j6);
    let j7 = first_form_defect(&lk.clause7_form(), "f");
    report.clause(LK_CLAUSES[6], j7.is_none(), j7);
    Ok(report)
}

/// `A ⋉ (E0 -> E1)[k-1]`: `Amid = E1`, `Alow = E0`, `Phi = nabla1`,
/// `Psi = nabla0`, `l3 = K`, and vanishing `l_k`, `l_{k+1}`.
pub fn semidirect(
    alg: &LieAlgebroidData,
    rep: &RepUTHData,
    k: u32,
) -> Result<LkAlgebroidData, RuthError> {
    rep.validate()?;
    if k < 3 {
        return Err(RuthError::Shape(format!(
            "k = {k}; the semidirect product needs k > 2"
        )));
    }
    if alg.m() != rep.m || alg.n() != rep.n {
        return Err(RuthError::Shape(
            "representation does not match the algebroid".into(),
        ));
    }
    let n = alg.n();
    let lk = LkAlgebroidData {
        k,
        base: alg.clone(),
        mid: rep.r1,
        low: rep.r0,
        del: rep.del.clone(),
        phi: rep.nabla1.clone(),
        psi: rep.nabla0.clone(),
        l3: rep.k.clone(),
        lk: vec![Wedge::zero(n); rep.r1],
        lk1: vec![Wedge::zero(n); rep.r0],
    };
    lk.validate()?;
    Ok(lk)
}

/// `nabla_{d/dx^j} H` for the connection dual to `nabla` on forms.
fn covariant_form(nabla: &ConnectionData, h: &Wedge, j: usize) -> Wedge {
    let n = h.rank();
    // nabla_j alpha^c = -sum_b gamma[j][b][c] alpha^b
    let dual: Vec<Wedge> = (0..n)
        .map(|c| {
            let mut w = Wedge::zero(n);
            for b in 0..n {
                w.add_term(1 << b, -nabla.christoffel(j, b, c).clone());
            }
            w
        })
        .collect();
    let mut out = Wedge::zero(n);
    for (mask, f) in h.terms() {
        out.add_term(*mask, f.partial(j));
        let idx = mask_indices(*mask);
        for s in 0..idx.len() {
            let mut acc = Wedge::word(n, 0, f.clone());
            for (t, &i) in idx.iter().enumerate() {
                let factor = if t == s {
                    dual[i].clone()
                } else {
                    Wedge::word(n, 1 << i, BasePoly::int(1))
                };
                acc = acc.wedge(&factor);
            }
            out = &out + &acc;
        }
    }
    out
}

/// The coadjoint semidirect product twisted by a `(k+1)`-form `H`:
/// `[a_1..a_k]_k = i_{a_k}..i_{a_1} H` and `l_{k+1}` the covariant
/// derivative of `H`, read as a `T*M`-valued form.
pub fn twisted_coadjoint_semidirect(
    alg: &LieAlgebroidData,
    nabla: &ConnectionData,
    h: &Wedge,
    k: u32,
) -> Result<LkAlgebroidData, RuthError> {
    let n = alg.n();
    if h.rank() != n || !h.is_homogeneous_of(k as usize + 1) {
        return Err(RuthError::Shape(format!(
            "H must be a {}-form of rank {n}",
            k + 1
        )));
    }
    let rep = coadjoint_rep(alg, nabla)?;
    let mut lk = semidirect(alg, &rep, k)?;
    // component s of i_{a_k}..i_{a_1} H is H(a_1..a_k, e_s)
    let sign = if k.is_multiple_of(2) {
        BasePoly::int(1)
    } else {
        BasePoly::int(-1)
    };
    lk.lk = (0..n)
        .map(|s| h.interior(&alg.basis(s)).scale(&sign))
        .collect();
    lk.lk1 = (0..alg.m())
        .map(|j| covariant_form(nabla, h, j).scale(&-sign.clone()))
        .collect();
    lk.validate()?;
    Ok(lk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ruth_lk::{adjoint_rep, coadjoint_rep};

    fn top_form(n: usize, c: &str) -> Wedge {
        Wedge::word(n, (1 << n) - 1, BasePoly::parse(c).unwrap())
    }

    /// The first basis `deg`-form times `c` whose differential is nonzero.
    fn open_word(alg: &LieAlgebroidData, deg: u32, c: &str) -> Wedge {
        let n = alg.n();
        (0u32..1 << n)
            .filter(|m| m.count_ones() == deg)
            .map(|m| Wedge::word(n, m, BasePoly::parse(c).unwrap()))
            .find(|w| !alg.differential(w).is_zero())
            .expect("some word is not closed")
    }

    #[test]
    fn zero_rep_gives_the_algebroid() {
        let alg = catalog::so3_action();
        let lk = semidirect(&alg, &RepUTHData::zero(3, 3), 4).unwrap();
        assert_eq!((lk.mid, lk.low), (0, 0));
        assert!(check_lk_jacobi(&lk).unwrap().passed());
    }

    #[test]
    fn so3_coadjoint_semidirect() {
        let alg = catalog::so3();
        let lk = semidirect(
            &alg,
            &coadjoint_rep(&alg, &ConnectionData::trivial(0, 3)).unwrap(),
            4,
        )
        .unwrap();
        assert_eq!((lk.mid, lk.low), (3, 0));
        assert!(check_lk_jacobi(&lk).unwrap().passed());
    }

    #[test]
    fn abelian_top_twist() {
        let alg = catalog::abelian(5);
        let lk = twisted_coadjoint_semidirect(
            &alg,
            &ConnectionData::trivial(0, 5),
            &top_form(5, "3"),
            4,
        )
        .unwrap();
        assert!(!lk.lk.iter().all(Wedge::is_zero));
        assert!(check_lk_jacobi(&lk).unwrap().passed());
    }

    #[test]
    fn open_twist_fails_the_form_clauses() {
        let alg = catalog::by_name("heisenberg+aff1+abelian1").unwrap();
        let h = open_word(&alg, 5, "1");
        let lk = twisted_coadjoint_semidirect(&alg, &ConnectionData::trivial(0, 6), &h, 4).unwrap();
        let r = check_lk_jacobi(&lk).unwrap();
        for c in &LK_CLAUSES[..5] {
            assert_eq!(r.clause_holds(c), Some(true), "{r}");
        }
        assert_eq!(r.clause_holds(LK_CLAUSES[5]), Some(false), "{r}");
    }

    #[test]
    fn twist_over_a_base() {
        let alg = catalog::extend_action(&catalog::aff1_action(), &catalog::filiform4());
        let nabla = ConnectionData::new(
            1,
            6,
            (0..1)
                .map(|_| {
                    (0..6)
                        .map(|a| {
                            (0..6)
                                .map(|b| BasePoly::int((a == b) as i64 + (a + 1 == b) as i64))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        )
        .unwrap();
        let closed = alg.differential(&open_word(&alg, 4, "x1"));
        let lk = twisted_coadjoint_semidirect(&alg, &nabla, &closed, 4).unwrap();
        assert!(check_lk_jacobi(&lk).unwrap().passed());
        let open = open_word(&alg, 5, "x1");
        let lk = twisted_coadjoint_semidirect(&alg, &nabla, &open, 4).unwrap();
        let r = check_lk_jacobi(&lk).unwrap();
        assert!(!r.passed());
        assert!(
            r.failing()
                .all(|c| c.name == LK_CLAUSES[5] || c.name == LK_CLAUSES[6]),
            "{r}"
        );
    }

    #[test]
    fn perturbed_l3_fails_closure() {
        let alg = catalog::so3_action();
        let mut lk = semidirect(
            &alg,
            &adjoint_rep(&alg, &ConnectionData::trivial(3, 3)).unwrap(),
            4,
        )
        .unwrap();
        let f = BasePoly::parse("x1").unwrap();
        lk.l3[0][1][0][2] = f.clone();
        lk.l3[1][0][0][2] = -f;
        let r = check_lk_jacobi(&lk).unwrap();
        assert_eq!(r.clause_holds(LK_CLAUSES[4]), Some(false), "{r}");
    }

    #[test]
    fn rejects_bad_input() {
        let alg = catalog::so3();
        let rep = coadjoint_rep(&alg, &ConnectionData::trivial(0, 3)).unwrap();
        assert!(matches!(
            check_lk_jacobi(&semidirect(&alg, &rep, 3).unwrap()),
            Err(RuthError::Unsupported(_))
        ));
        assert!(semidirect(&alg, &rep, 2).is_err());
        let action = catalog::so3_action();
        let mut lk = semidirect(
            &action,
            &coadjoint_rep(&action, &ConnectionData::trivial(3, 3)).unwrap(),
            4,
        )
        .unwrap();
        lk.l3[0][1][0][0] = &lk.l3[0][1][0][0] + &BasePoly::int(1);
        assert!(matches!(lk.validate(), Err(RuthError::NotAntisymmetric(_))));
        let h = Wedge::zero(3);
        assert!(twisted_coadjoint_semidirect(&alg, &ConnectionData::trivial(0, 3), &h, 4).is_ok());
        assert!(twisted_coadjoint_semidirect(
            &alg,
            &ConnectionData::trivial(0, 3),
            &Wedge::zero(2),
            4
        )
        .is_err());
    }
}
