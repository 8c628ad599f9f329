use super::{
    axpy, check_matrix, check_table, is_zero, show, sub, zeros, ConnectionData, RuthError, Table3,
};
use crate::algebroid::LieAlgebroidData;
use crate::kernel::BasePoly;
use crate::report::Report;

pub(crate) type Table4 = Vec<Vec<Vec<Vec<BasePoly>>>>;

pub const RUTH_CLAUSES: [&str; 4] = [
    "d nabla0 = nabla1 d",
    "F(nabla0) = K d",
    "F(nabla1) = d K",
    "d K = 0",
];

/// A two-term representation up to homotopy `(E0 -> E1, d, nabla0, nabla1,
/// K)` of a rank-`n` algebroid over `m` coordinates, in frames `f_t` of
/// `E0` and `g_s` of `E1`:
///
/// * `del[t][s]`: `d f_t = sum_s del[t][s] g_s`;
/// * `nabla0[a][t][u]`: `nabla0_{e_a} f_t = sum_u nabla0[a][t][u] f_u`, and
///   `nabla1` likewise on `E1`;
/// * `k[a][b][s][t]`: `K(e_a, e_b) g_s = sum_t k[a][b][s][t] f_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepUTHData {
    pub m: usize,
    pub n: usize,
    pub r0: usize,
    pub r1: usize,
    pub del: Vec<Vec<BasePoly>>,
    pub nabla0: Table3,
    pub nabla1: Table3,
    pub k: Table4,
}

/// `nabla_{e_a} s` for a connection table on a bundle with constant frame.
pub(crate) fn connection_apply(
    alg: &LieAlgebroidData,
    table: &Table3,
    a: usize,
    s: &[BasePoly],
) -> Vec<BasePoly> {
    let ea = alg.basis(a);
    let mut out: Vec<BasePoly> = s.iter().map(|c| alg.anchor_apply(&ea, c)).collect();
    for (t, c) in s.iter().enumerate() {
        axpy(&mut out, c, &table[a][t]);
    }
    out
}

/// `nabla_u s` for a section `u` of `A`.
pub(crate) fn connection_along(
    alg: &LieAlgebroidData,
    table: &Table3,
    u: &[BasePoly],
    s: &[BasePoly],
) -> Vec<BasePoly> {
    let mut out = zeros(s.len());
    for (a, ua) in u.iter().enumerate() {
        if !ua.is_zero() {
            axpy(&mut out, ua, &connection_apply(alg, table, a, s));
        }
    }
    out
}

/// `F(e_a, e_b) s = nabla_a nabla_b s - nabla_b nabla_a s - nabla_{[e_a, e_b]} s`.
pub(crate) fn curvature(
    alg: &LieAlgebroidData,
    table: &Table3,
    a: usize,
    b: usize,
    s: &[BasePoly],
) -> Vec<BasePoly> {
    let ab = connection_apply(alg, table, a, &connection_apply(alg, table, b, s));
    let ba = connection_apply(alg, table, b, &connection_apply(alg, table, a, s));
    let br = alg.bracket(&alg.basis(a), &alg.basis(b));
    sub(&sub(&ab, &ba), &connection_along(alg, table, &br, s))
}

pub(crate) fn unit(len: usize, i: usize) -> Vec<BasePoly> {
    let mut v = zeros(len);
    v[i] = BasePoly::int(1);
    v
}

/// `d` applied to a section of `E0` given by coordinates; `del[t]` is the
/// image of the `t`-th frame vector.
pub(crate) fn apply_del(del: &[Vec<BasePoly>], width: usize, x: &[BasePoly]) -> Vec<BasePoly> {
    let mut out = zeros(width);
    for (t, c) in x.iter().enumerate() {
        axpy(&mut out, c, &del[t]);
    }
    out
}

/// `K(u, v) xi` for sections `u, v` of `A`.
pub(crate) fn apply_k(
    k: &Table4,
    width: usize,
    u: &[BasePoly],
    v: &[BasePoly],
    xi: &[BasePoly],
) -> Vec<BasePoly> {
    let mut out = zeros(width);
    for (a, ua) in u.iter().enumerate() {
        if ua.is_zero() {
            continue;
        }
        for (b, vb) in v.iter().enumerate() {
            if vb.is_zero() {
                continue;
            }
            let w = ua * vb;
            for (s, c) in xi.iter().enumerate() {
                if !c.is_zero() {
                    axpy(&mut out, &(&w * c), &k[a][b][s]);
                }
            }
        }
    }
    out
}

pub(crate) fn check_antisymmetric(name: &str, t: &Table4, n: usize) -> Result<(), RuthError> {
    for a in 0..n {
        for b in a..n {
            for (s, row) in t[a][b].iter().enumerate() {
                for (u, x) in row.iter().enumerate() {
                    if *x != -t[b][a][s][u].clone() {
                        return Err(RuthError::NotAntisymmetric(format!(
                            "{name}[{a}][{b}][{s}][{u}]"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn check_table4(
    name: &str,
    t: &Table4,
    dims: [usize; 4],
    m: usize,
) -> Result<(), RuthError> {
    if t.len() != dims[0] {
        return Err(RuthError::Shape(format!(
            "{name} must have {} rows",
            dims[0]
        )));
    }
    for row in t {
        check_table(name, row, [dims[1], dims[2], dims[3]], m)?;
    }
    Ok(())
}

impl RepUTHData {
    pub fn new(
        m: usize,
        n: usize,
        del: Vec<Vec<BasePoly>>,
        nabla0: Table3,
        nabla1: Table3,
        k: Table4,
    ) -> Result<Self, RuthError> {
        let r0 = del.len();
        let r1 = nabla1.first().map_or(0, Vec::len);
        let rep = RepUTHData {
            m,
            n,
            r0,
            r1,
            del,
            nabla0,
            nabla1,
            k,
        };
        rep.validate()?;
        Ok(rep)
    }

    /// The representation on `0 -> 0`.
    pub fn zero(m: usize, n: usize) -> Self {
        RepUTHData {
            m,
            n,
            r0: 0,
            r1: 0,
            del: Vec::new(),
            nabla0: vec![Vec::new(); n],
            nabla1: vec![Vec::new(); n],
            k: vec![vec![Vec::new(); n]; n],
        }
    }

    pub fn validate(&self) -> Result<(), RuthError> {
        let (m, n, r0, r1) = (self.m, self.n, self.r0, self.r1);
        check_matrix("d", &self.del, [r0, r1], m)?;
        check_table("nabla0", &self.nabla0, [n, r0, r0], m)?;
        check_table("nabla1", &self.nabla1, [n, r1, r1], m)?;
        check_table4("K", &self.k, [n, n, r1, r0], m)?;
        check_antisymmetric("K", &self.k, n)
    }

    /// The dual representation `(E1* -> E0*, d^T, dual connections, -K^T)`.
    pub fn dual(&self) -> RepUTHData {
        let (n, r0, r1) = (self.n, self.r0, self.r1);
        let del = (0..r1)
            .map(|s| (0..r0).map(|t| self.del[t][s].clone()).collect())
            .collect();
        let dualize = |table: &Table3, r: usize| -> Table3 {
            (0..n)
                .map(|a| {
                    (0..r)
                        .map(|c| (0..r).map(|b| -table[a][b][c].clone()).collect())
                        .collect()
                })
                .collect()
        };
        let k = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        (0..r0)
                            .map(|t| (0..r1).map(|s| -self.k[a][b][s][t].clone()).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        RepUTHData {
            m: self.m,
            n,
            r0: r1,
            r1: r0,
            del,
            nabla0: dualize(&self.nabla1, r1),
            nabla1: dualize(&self.nabla0, r0),
            k,
        }
    }

    pub(crate) fn d(&self, x: &[BasePoly]) -> Vec<BasePoly> {
        apply_del(&self.del, self.r1, x)
    }
}

fn matches(alg: &LieAlgebroidData, m: usize, n: usize) -> Result<(), RuthError> {
    if alg.m() != m || alg.n() != n {
        return Err(RuthError::Shape(format!(
            "data for rank {n} over {m} coordinates, algebroid has rank {} over {}",
            alg.n(),
            alg.m()
        )));
    }
    Ok(())
}

/// The four defining identities, on frame vectors.
pub fn check_ruth(rep: &RepUTHData, alg: &LieAlgebroidData) -> Result<Report, RuthError> {
    rep.validate()?;
    matches(alg, rep.m, rep.n)?;
    let (n, r0, r1) = (rep.n, rep.r0, rep.r1);
    let mut report = Report::new("representation up to homotopy");

    let mut chain = None;
    'chain: for a in 0..n {
        for t in 0..r0 {
            let f = unit(r0, t);
            let lhs = rep.d(&connection_apply(alg, &rep.nabla0, a, &f));
            let rhs = connection_apply(alg, &rep.nabla1, a, &rep.d(&f));
            let defect = sub(&lhs, &rhs);
            if !is_zero(&defect) {
                chain = Some(format!("(e{}, f{}): {}", a + 1, t + 1, show(&defect)));
                break 'chain;
            }
        }
    }
    report.clause(RUTH_CLAUSES[0], chain.is_none(), chain);

    let mut f0 = None;
    let mut f1 = None;
    for a in 0..n {
        for b in a + 1..n {
            let (ea, eb) = (alg.basis(a), alg.basis(b));
            for t in 0..r0 {
                let f = unit(r0, t);
                let defect = sub(
                    &curvature(alg, &rep.nabla0, a, b, &f),
                    &apply_k(&rep.k, r0, &ea, &eb, &rep.d(&f)),
                );
                if f0.is_none() && !is_zero(&defect) {
                    f0 = Some(format!(
                        "(e{}, e{}, f{}): {}",
                        a + 1,
                        b + 1,
                        t + 1,
                        show(&defect)
                    ));
                }
            }
            for s in 0..r1 {
                let g = unit(r1, s);
                let defect = sub(
                    &curvature(alg, &rep.nabla1, a, b, &g),
                    &rep.d(&apply_k(&rep.k, r0, &ea, &eb, &g)),
                );
                if f1.is_none() && !is_zero(&defect) {
                    f1 = Some(format!(
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
    report.clause(RUTH_CLAUSES[1], f0.is_none(), f0);
    report.clause(RUTH_CLAUSES[2], f1.is_none(), f1);

    let dk = first_dk_defect(alg, &rep.nabla0, &rep.nabla1, &rep.k, r0, r1);
    report.clause(RUTH_CLAUSES[3], dk.is_none(), dk);
    Ok(report)
}

/// `d^nabla K (e_a, e_b, e_c)` on `g_s`, cyclically summed: the first
/// nonvanishing value, if any.
pub(crate) fn first_dk_defect(
    alg: &LieAlgebroidData,
    nabla0: &Table3,
    nabla1: &Table3,
    k: &Table4,
    r0: usize,
    r1: usize,
) -> Option<String> {
    let n = alg.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for s in 0..r1 {
                    let g = unit(r1, s);
                    let mut total = zeros(r0);
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        let (ex, ey, ez) = (alg.basis(x), alg.basis(y), alg.basis(z));
                        let outer = connection_apply(alg, nabla0, x, &apply_k(k, r0, &ey, &ez, &g));
                        let inner = apply_k(k, r0, &ey, &ez, &connection_apply(alg, nabla1, x, &g));
                        let bracket = apply_k(k, r0, &alg.bracket(&ex, &ey), &ez, &g);
                        total = sub(
                            &sub(
                                &(0..r0).map(|i| &total[i] + &outer[i]).collect::<Vec<_>>(),
                                &inner,
                            ),
                            &bracket,
                        );
                    }
                    if !is_zero(&total) {
                        return Some(format!(
                            "(e{}, e{}, e{}, g{}): {}",
                            a + 1,
                            b + 1,
                            c + 1,
                            s + 1,
                            show(&total)
                        ));
                    }
                }
            }
        }
    }
    None
}

fn require_lie(alg: &LieAlgebroidData) -> Result<(), RuthError> {
    if alg.is_lie() {
        Ok(())
    } else {
        Err(RuthError::NotLie(
            "Jacobi or anchor compatibility fails".into(),
        ))
    }
}

/// The adjoint representation `A -> TM` built from a connection on `A`.
pub fn adjoint_rep(
    alg: &LieAlgebroidData,
    nabla: &ConnectionData,
) -> Result<RepUTHData, RuthError> {
    require_lie(alg)?;
    let (m, n) = (alg.m(), alg.n());
    if nabla.m() != m || nabla.n() != n {
        return Err(RuthError::Shape(
            "connection does not match the algebroid".into(),
        ));
    }
    let del: Vec<Vec<BasePoly>> = (0..n)
        .map(|a| (0..m).map(|i| alg.anchor(a, i).clone()).collect())
        .collect();
    // nabla0_a b = [a, b] + nabla_{rho(b)} a
    let nabla0: Table3 = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut v = alg.bracket(&alg.basis(a), &alg.basis(b));
                    axpy(
                        &mut v,
                        &BasePoly::int(1),
                        &nabla.covariant(&del[b], &alg.basis(a)),
                    );
                    v
                })
                .collect()
        })
        .collect();
    // nabla1_a X = [rho(a), X] + rho(nabla_X a)
    let nabla1_vec = |a: usize, x: &[BasePoly]| -> Vec<BasePoly> {
        let ra = &del[a];
        let mut out: Vec<BasePoly> = (0..m)
            .map(|i| {
                (0..m).fold(BasePoly::zero(), |acc, j| {
                    &(&acc + &(&ra[j] * &x[i].partial(j))) - &(&x[j] * &ra[i].partial(j))
                })
            })
            .collect();
        let moved = nabla.covariant(x, &alg.basis(a));
        axpy(&mut out, &BasePoly::int(1), &alg.anchor_vector(&moved));
        out
    };
    let nabla1: Table3 = (0..n)
        .map(|a| (0..m).map(|j| nabla1_vec(a, &unit(m, j))).collect())
        .collect();
    // K(a, b)(X) = [nabla_X a, b] + [a, nabla_X b] - nabla_X[a,b]
    //              + nabla_{nabla1_b X} a - nabla_{nabla1_a X} b
    let k: Table4 = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..m)
                        .map(|j| {
                            let x = unit(m, j);
                            let (ea, eb) = (alg.basis(a), alg.basis(b));
                            let mut v = alg.bracket(&nabla.covariant(&x, &ea), &eb);
                            axpy(
                                &mut v,
                                &BasePoly::int(1),
                                &alg.bracket(&ea, &nabla.covariant(&x, &eb)),
                            );
                            v = sub(&v, &nabla.covariant(&x, &alg.bracket(&ea, &eb)));
                            axpy(
                                &mut v,
                                &BasePoly::int(1),
                                &nabla.covariant(&nabla1[b][j], &ea),
                            );
                            sub(&v, &nabla.covariant(&nabla1[a][j], &eb))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    RepUTHData::new(m, n, del, nabla0, nabla1, k)
}

/// The coadjoint representation `T*M -> A*`: the dual of the adjoint one.
pub fn coadjoint_rep(
    alg: &LieAlgebroidData,
    nabla: &ConnectionData,
) -> Result<RepUTHData, RuthError> {
    Ok(adjoint_rep(alg, nabla)?.dual())
}
