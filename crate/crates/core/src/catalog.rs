//! Named example structures: Lie algebras, Lie algebroids over polynomial
//! bases, and a few deliberately broken brackets.

use crate::algebroid::LieAlgebroidData;
use crate::kernel::{int, BasePoly, Rational};

fn constants(n: usize, entries: &[(usize, usize, usize, i64)]) -> LieAlgebroidData {
    LieAlgebroidData::from_brackets(0, n, vec![vec![]; n], &brackets(n, entries))
        .expect("catalog entry is well formed")
}

/// `[e_a, e_b] += v e_c` for each 1-based `(a, b, c, v)` with `a < b`.
fn brackets(
    n: usize,
    entries: &[(usize, usize, usize, i64)],
) -> Vec<((usize, usize), Vec<BasePoly>)> {
    entries
        .iter()
        .map(|&(a, b, c, v)| {
            let mut w = vec![BasePoly::zero(); n];
            w[c - 1] = BasePoly::int(v);
            ((a - 1, b - 1), w)
        })
        .collect()
}

pub fn abelian(n: usize) -> LieAlgebroidData {
    constants(n, &[])
}

/// `[e_a, e_b] = eps_{abc} e_c`.
pub fn so3() -> LieAlgebroidData {
    constants(3, &[(1, 2, 3, 1), (2, 3, 1, 1), (1, 3, 2, -1)])
}

/// `[h, e] = 2e, [h, f] = -2f, [e, f] = h` in the order `(h, e, f)`.
pub fn sl2() -> LieAlgebroidData {
    constants(3, &[(1, 2, 2, 2), (1, 3, 3, -2), (2, 3, 1, 1)])
}

/// `[e_1, e_2] = e_3`.
pub fn heisenberg() -> LieAlgebroidData {
    constants(3, &[(1, 2, 3, 1)])
}

/// `[e_1, e_2] = e_2`.
pub fn aff1() -> LieAlgebroidData {
    constants(2, &[(1, 2, 2, 1)])
}

/// Euclidean algebra of the plane, `[J, P1] = P2, [J, P2] = -P1`.
pub fn e2() -> LieAlgebroidData {
    constants(3, &[(1, 2, 3, 1), (1, 3, 2, -1)])
}

/// Filiform `n_4`: `[e_1, e_2] = e_3, [e_1, e_3] = e_4`.
pub fn filiform4() -> LieAlgebroidData {
    constants(4, &[(1, 2, 3, 1), (1, 3, 4, 1)])
}

/// Borel subalgebra of `sl_3` in the basis `(h1, h2, x1, x2, x12)`.
pub fn borel_sl3() -> LieAlgebroidData {
    constants(
        5,
        &[
            (1, 3, 3, 2),
            (1, 4, 4, -1),
            (1, 5, 5, 1),
            (2, 3, 3, -1),
            (2, 4, 4, 2),
            (2, 5, 5, 1),
            (3, 4, 5, 1),
        ],
    )
}

/// Direct sum of two point-base algebras.
pub fn direct_sum(a: &LieAlgebroidData, b: &LieAlgebroidData) -> LieAlgebroidData {
    assert!(a.is_point_base() && b.is_point_base());
    let (na, nb) = (a.n(), b.n());
    let n = na + nb;
    let structure = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| match (i < na, j < na, k < na) {
                            (true, true, true) => a.structure(i, j, k).clone(),
                            (false, false, false) => b.structure(i - na, j - na, k - na).clone(),
                            _ => BasePoly::zero(),
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    LieAlgebroidData::new(0, n, vec![vec![]; n], structure).expect("direct sum is well formed")
}

/// Action algebroid of `so(3)` rotating `R^3`: anchor `rho(e_a) = -(L_a x).d/dx`.
pub fn so3_action() -> LieAlgebroidData {
    let g = so3();
    let x = |i: usize| BasePoly::var(i);
    // (L_a)_{bc} = -eps_{abc}; rho(e_a)^b = -(L_a x)^b = eps_{abc} x^c
    let anchor = (0..3)
        .map(|a| {
            (0..3)
                .map(|b| {
                    (0..3).fold(BasePoly::zero(), |acc, c| {
                        let e = g.structure(a, b, c).clone();
                        &acc + &(&e * &x(c))
                    })
                })
                .collect()
        })
        .collect();
    with_constant_structure(3, anchor, &g)
}

/// Action algebroid of `aff(1)` on the line: `rho(e_1) = -x d/dx`,
/// `rho(e_2) = -d/dx`.
pub fn aff1_action() -> LieAlgebroidData {
    let anchor = vec![vec![-BasePoly::var(0)], vec![BasePoly::int(-1)]];
    with_constant_structure(1, anchor, &aff1())
}

fn with_constant_structure(
    m: usize,
    anchor: Vec<Vec<BasePoly>>,
    g: &LieAlgebroidData,
) -> LieAlgebroidData {
    let n = g.n();
    let structure = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| (0..n).map(|c| g.structure(a, b, c).clone()).collect())
                .collect()
        })
        .collect();
    LieAlgebroidData::new(m, n, anchor, structure).expect("action data is well formed")
}

/// An action algebroid extended by a Lie algebra acting trivially.
pub fn extend_action(act: &LieAlgebroidData, g: &LieAlgebroidData) -> LieAlgebroidData {
    let (m, na, n) = (act.m(), act.n(), act.n() + g.n());
    let point = LieAlgebroidData::new(
        0,
        na,
        vec![vec![]; na],
        (0..na)
            .map(|a| {
                (0..na)
                    .map(|b| (0..na).map(|c| act.structure(a, b, c).clone()).collect())
                    .collect()
            })
            .collect(),
    )
    .expect("constant structure");
    let anchor = (0..n)
        .map(|a| {
            (0..m)
                .map(|i| {
                    if a < na {
                        act.anchor(a, i).clone()
                    } else {
                        BasePoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    with_constant_structure(m, anchor, &direct_sum(&point, g))
}

/// Lie algebra bundle with zero anchor and fibre bracket scaled by `f(x)`.
pub fn scaled_bundle(g: &LieAlgebroidData, m: usize, f: &BasePoly) -> LieAlgebroidData {
    let n = g.n();
    let structure = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| (0..n).map(|c| g.structure(a, b, c) * f).collect())
                .collect()
        })
        .collect();
    LieAlgebroidData::new(m, n, vec![vec![BasePoly::zero(); m]; n], structure)
        .expect("bundle data is well formed")
}

/// Rank-1 algebroid over the line with `rho(e) = x^2 d/dx`.
pub fn line_vector_field() -> LieAlgebroidData {
    LieAlgebroidData::new(
        1,
        1,
        vec![vec![BasePoly::parse("x1^2").unwrap()]],
        vec![vec![vec![BasePoly::zero()]]],
    )
    .expect("well formed")
}

/// Deliberately broken brackets: each fails the Jacobi identity or anchor
/// compatibility.
pub fn jacobi_violations() -> Vec<(&'static str, LieAlgebroidData)> {
    let half = |v: i64| BasePoly::constant(Rational::new(v.into(), 2.into()));
    vec![
        ("broken-shear", constants(3, &[(1, 2, 1, 1), (1, 3, 2, 1)])),
        (
            "broken-so3-twist",
            constants(3, &[(1, 2, 3, 1), (2, 3, 1, 1), (1, 3, 2, 1), (1, 2, 1, 1)]),
        ),
        (
            "broken-rank4",
            constants(4, &[(1, 2, 3, 1), (2, 3, 4, 1), (3, 4, 1, 1)]),
        ),
        (
            "broken-heisenberg",
            constants(3, &[(1, 2, 3, 1), (1, 3, 1, 1)]),
        ),
        (
            "broken-diag",
            constants(3, &[(1, 2, 2, 1), (1, 3, 3, 1), (2, 3, 1, 1)]),
        ),
        (
            "broken-half",
            LieAlgebroidData::from_brackets(
                0,
                3,
                vec![vec![]; 3],
                &[
                    ((0, 1), vec![BasePoly::zero(), BasePoly::zero(), half(1)]),
                    ((1, 2), vec![half(3), BasePoly::zero(), BasePoly::zero()]),
                    (
                        (0, 2),
                        vec![BasePoly::int(1), BasePoly::zero(), BasePoly::zero()],
                    ),
                ],
            )
            .unwrap(),
        ),
        (
            // anchor not a morphism: rho(e1) = d/dx, rho(e2) = x d/dx, [e1, e2] = 0
            "broken-anchor",
            LieAlgebroidData::new(
                1,
                2,
                vec![vec![BasePoly::int(1)], vec![BasePoly::var(0)]],
                vec![vec![vec![BasePoly::zero(); 2]; 2]; 2],
            )
            .unwrap(),
        ),
        (
            // [e1, e2] = x e1 with rho(e2) = 0, so rho([e1, e2]) != [rho(e1), rho(e2)]
            "broken-bundle",
            LieAlgebroidData::from_brackets(
                1,
                2,
                vec![vec![BasePoly::int(1)], vec![BasePoly::zero()]],
                &[((0, 1), vec![BasePoly::var(0), BasePoly::zero()])],
            )
            .unwrap(),
        ),
    ]
}

/// Honest Lie algebroids and algebras, by name.
pub fn lie_algebroids() -> Vec<(&'static str, LieAlgebroidData)> {
    vec![
        ("abelian-2", abelian(2)),
        ("abelian-4", abelian(4)),
        ("so3", so3()),
        ("sl2", sl2()),
        ("heisenberg", heisenberg()),
        ("aff1", aff1()),
        ("e2", e2()),
        ("filiform4", filiform4()),
        ("borel-sl3", borel_sl3()),
        ("so3+aff1", direct_sum(&so3(), &aff1())),
        (
            "heisenberg+abelian1",
            direct_sum(&heisenberg(), &abelian(1)),
        ),
        ("so3+sl2", direct_sum(&so3(), &sl2())),
        (
            "heisenberg+aff1+abelian1",
            direct_sum(&direct_sum(&heisenberg(), &aff1()), &abelian(1)),
        ),
        ("tangent-1", LieAlgebroidData::tangent(1)),
        ("tangent-2", LieAlgebroidData::tangent(2)),
        ("so3-action", so3_action()),
        ("aff1-action", aff1_action()),
        ("so3+aff1-action", extend_action(&so3_action(), &aff1())),
        (
            "aff1-action+filiform4",
            extend_action(&aff1_action(), &filiform4()),
        ),
        (
            "heisenberg-bundle",
            scaled_bundle(&heisenberg(), 1, &BasePoly::parse("x1").unwrap()),
        ),
        (
            "so3-bundle",
            scaled_bundle(&so3(), 2, &BasePoly::parse("x1^2 + x2").unwrap()),
        ),
        ("line-field", line_vector_field()),
    ]
}

/// The Lie algebras (point base) among [`lie_algebroids`].
pub fn lie_algebras() -> Vec<(&'static str, LieAlgebroidData)> {
    lie_algebroids()
        .into_iter()
        .filter(|(_, g)| g.is_point_base())
        .collect()
}

pub fn by_name(name: &str) -> Option<LieAlgebroidData> {
    lie_algebroids()
        .into_iter()
        .chain(jacobi_violations())
        .find(|(n, _)| *n == name)
        .map(|(_, g)| g)
}

/// Killing-type invariant pairing on `so(3)^*`: the identity matrix.
pub fn so3_killing_pairing() -> Vec<Vec<Rational>> {
    (0..3)
        .map(|a| (0..3).map(|b| int((a == b) as i64)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_entries_are_lie() {
        for (name, g) in lie_algebroids() {
            assert!(g.is_lie(), "{name} should be a Lie algebroid");
        }
    }

    #[test]
    fn violations_are_not_lie() {
        for (name, g) in jacobi_violations() {
            assert!(
                !g.is_lie(),
                "{name} should violate Jacobi or anchor compatibility"
            );
        }
    }
}
