use std::sync::Arc;

use super::{LkAlgebroidData, RuthError};
use crate::exterior::{mask_indices, Wedge};
use crate::kernel::{int, BasePoly, Derivation, GeneratorTable, GradedPoly};
use crate::symplectic::CotangentChart;

// Shift-functor signs. The l_k and l_{k+1} terms also carry (-1)^k.
const EPS_CONN: i64 = -1;
const EPS_DEL: i64 = 1;
const EPS_L3: i64 = 1;
const EPS_LK: i64 = 1;
const EPS_LK1: i64 = 1;

struct Layout {
    table: Arc<GeneratorTable>,
    x: Vec<usize>,
    alpha: Vec<usize>,
    xi: Vec<usize>,
    y: Vec<usize>,
}

impl Layout {
    fn generator(&self, pos: usize) -> GradedPoly {
        GradedPoly::generator(&self.table, pos)
    }

    fn base(&self, f: &BasePoly) -> Result<GradedPoly, RuthError> {
        Ok(f.to_graded(&self.table, &self.x)?)
    }

    fn form(&self, w: &Wedge) -> Result<GradedPoly, RuthError> {
        let mut out = GradedPoly::zero(&self.table);
        for (mask, c) in w.terms() {
            let mut term = self.base(c)?;
            for j in mask_indices(*mask) {
                term = &term * &self.generator(self.alpha[j]);
            }
            out += &term;
        }
        Ok(out)
    }
}

fn build(lk: &LkAlgebroidData, layout: &Layout) -> Result<Derivation, RuthError> {
    let (m, n, mid, low) = (lk.m(), lk.n(), lk.mid, lk.low);
    let t = &layout.table;
    let alg = &lk.base;
    let alpha = |a: usize| layout.generator(layout.alpha[a]);
    let scaled = |p: GradedPoly, e: i64| if e == 1 { p } else { p.scale(&int(e)) };
    let parity = if lk.k.is_multiple_of(2) { 1 } else { -1 };
    let mut values = vec![GradedPoly::zero(t); t.len()];
    for i in 0..m {
        let mut v = GradedPoly::zero(t);
        for a in 0..n {
            v += &(&layout.base(alg.anchor(a, i))? * &alpha(a));
        }
        values[layout.x[i]] = v;
    }
    for c in 0..n {
        let mut v = GradedPoly::zero(t);
        for a in 0..n {
            for b in a + 1..n {
                v += &(&(&layout.base(alg.structure(a, b, c))? * &alpha(a)) * &alpha(b));
            }
        }
        values[layout.alpha[c]] = -v;
    }
    for s in 0..mid {
        let mut v = GradedPoly::zero(t);
        for a in 0..n {
            for s2 in 0..mid {
                v += &scaled(
                    &(&layout.base(&lk.phi[a][s2][s])? * &alpha(a))
                        * &layout.generator(layout.xi[s2]),
                    EPS_CONN,
                );
            }
        }
        for tt in 0..low {
            v += &scaled(
                &layout.base(&lk.del[tt][s])? * &layout.generator(layout.y[tt]),
                EPS_DEL,
            );
        }
        v += &scaled(layout.form(&lk.lk[s])?, EPS_LK * parity);
        values[layout.xi[s]] = v;
    }
    let l3 = lk.l3_forms();
    for tt in 0..low {
        let mut v = GradedPoly::zero(t);
        for a in 0..n {
            for t2 in 0..low {
                v += &scaled(
                    &(&layout.base(&lk.psi[a][t2][tt])? * &alpha(a))
                        * &layout.generator(layout.y[t2]),
                    EPS_CONN,
                );
            }
        }
        for s in 0..mid {
            v += &scaled(
                &layout.form(&l3[tt][s])? * &layout.generator(layout.xi[s]),
                EPS_L3,
            );
        }
        v += &scaled(layout.form(&lk.lk1[tt])?, EPS_LK1 * parity);
        values[layout.y[tt]] = v;
    }
    Ok(Derivation::new(t, 1, values)?)
}

/// The degree-1 vector field on `(A0 + Amid + Alow)[1]` encoding an
/// `L_k`-algebroid, on generators `x, alpha, xi, y` of degrees
/// `0, 1, k-1, k` (`xi`, `y` dual to the frames of `Amid`, `Alow`).
pub fn lk_q_structure(lk: &LkAlgebroidData) -> Result<Derivation, RuthError> {
    lk.validate()?;
    let (m, n, k) = (lk.m(), lk.n(), lk.k);
    let names = (0..m)
        .map(|i| (format!("x{}", i + 1), 0))
        .chain((0..n).map(|a| (format!("alpha{}", a + 1), 1)))
        .chain((0..lk.mid).map(|s| (format!("xi{}", s + 1), k - 1)))
        .chain((0..lk.low).map(|t| (format!("y{}", t + 1), k)));
    let table = GeneratorTable::new(names)?;
    let layout = Layout {
        table,
        x: (0..m).collect(),
        alpha: (m..m + n).collect(),
        xi: (m + n..m + n + lk.mid).collect(),
        y: (m + n + lk.mid..m + n + lk.mid + lk.low).collect(),
    };
    build(lk, &layout)
}

/// The same vector field on the chart of `T*[k]A[1]` over a point, with
/// `Amid = A*` read through `a_j` and no `Alow`.
pub fn q_from_lk(lk: &LkAlgebroidData, chart: &CotangentChart) -> Result<Derivation, RuthError> {
    lk.validate()?;
    if lk.m() != 0 || chart.m() != 0 {
        return Err(RuthError::Unsupported(
            "over a base of positive dimension the identification needs a splitting; only a point base is supported".into(),
        ));
    }
    if chart.k() != lk.k || chart.n() != lk.n() || lk.mid != lk.n() || lk.low != 0 {
        return Err(RuthError::Shape(format!(
            "layout (k = {}, rank {}, mid {}, low {}) does not match the chart (k = {}, rank {})",
            lk.k,
            lk.n(),
            lk.mid,
            lk.low,
            chart.k(),
            chart.n()
        )));
    }
    let n = chart.n();
    let layout = Layout {
        table: chart.table().clone(),
        x: Vec::new(),
        alpha: (0..n).map(|j| chart.alpha_pos(j)).collect(),
        xi: (0..n).map(|j| chart.a_pos(j)).collect(),
        y: Vec::new(),
    };
    build(lk, &layout)
}

/// `Q^2 = [Q, Q] / 2`.
pub fn q_squared(q: &Derivation) -> Result<Derivation, RuthError> {
    Ok(q.commutator(q)?.scale(&crate::kernel::frac(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::build_theta;
    use crate::catalog;
    use crate::ruth_lk::{coadjoint_rep, semidirect, twisted_coadjoint_semidirect, ConnectionData};
    use crate::symplectic::hamiltonian_vf;

    fn agree(name: &str, k: u32, h: &Wedge) {
        let alg = catalog::by_name(name).unwrap();
        let n = alg.n();
        let chart = CotangentChart::new(k, 0, n).unwrap();
        let lk = twisted_coadjoint_semidirect(&alg, &ConnectionData::trivial(0, n), h, k).unwrap();
        let theta = build_theta(&alg, h, None, &chart).unwrap();
        assert_eq!(
            q_from_lk(&lk, &chart).unwrap(),
            hamiltonian_vf(&theta, &chart).unwrap(),
            "{name} k = {k}"
        );
    }

    #[test]
    fn so3_point_correspondence() {
        agree("so3", 4, &Wedge::zero(3));
        agree("so3", 3, &Wedge::zero(3));
    }

    #[test]
    fn twisted_correspondence_in_both_parities() {
        agree("abelian-4", 3, &Wedge::word(4, 0b1111, BasePoly::int(2)));
        agree(
            "heisenberg+abelian1",
            3,
            &Wedge::word(4, 0b1111, BasePoly::int(-1)),
        );
        agree("so3+aff1", 4, &Wedge::word(5, 0b11111, BasePoly::int(3)));
    }

    #[test]
    fn semidirect_squares_to_zero() {
        let alg = catalog::so3_action();
        let lk = semidirect(
            &alg,
            &coadjoint_rep(&alg, &ConnectionData::trivial(3, 3)).unwrap(),
            4,
        )
        .unwrap();
        let q = lk_q_structure(&lk).unwrap();
        assert_eq!(q.degree(), 1);
        let degrees: Vec<u32> = (0..q.table().len()).map(|i| q.table().degree(i)).collect();
        assert_eq!(degrees, [0, 0, 0, 1, 1, 1, 3, 3, 3, 4, 4, 4]);
        assert!(q_squared(&q).unwrap().is_zero());
    }

    #[test]
    fn needs_a_point_base() {
        let alg = catalog::so3_action();
        let lk = semidirect(
            &alg,
            &coadjoint_rep(&alg, &ConnectionData::trivial(3, 3)).unwrap(),
            4,
        )
        .unwrap();
        let chart = CotangentChart::new(4, 0, 3).unwrap();
        assert!(matches!(
            q_from_lk(&lk, &chart),
            Err(RuthError::Unsupported(_))
        ));
        let so3 = catalog::so3();
        let lk = semidirect(
            &so3,
            &coadjoint_rep(&so3, &ConnectionData::trivial(0, 3)).unwrap(),
            4,
        )
        .unwrap();
        assert!(matches!(
            q_from_lk(&lk, &CotangentChart::new(5, 0, 3).unwrap()),
            Err(RuthError::Shape(_))
        ));
    }
}
