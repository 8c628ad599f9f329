use graded_cotangent::algebroid::{
    build_theta, cartan_bracket, check_master, check_q3_conditions, d_a, derived_bracket,
    LieAlgebroidData, Pairing,
};
use graded_cotangent::catalog;
use graded_cotangent::exterior::{words, Wedge};
use graded_cotangent::kernel::{BasePoly, GradedPoly};
use graded_cotangent::random;
use graded_cotangent::symplectic::{poisson, twist, CotangentChart, TwistCochain};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `dH(e_0..e_k)` by the Cartan formula on basis tuples, with
/// `H(v_1..v_j) = i_{v_j} .. i_{v_1} H`.
fn cartan_dh_vanishes(alg: &LieAlgebroidData, h: &Wedge) -> bool {
    let n = alg.n();
    let Some(deg) = h.degree() else { return true };
    let eval = |vs: &[Vec<BasePoly>]| -> BasePoly {
        let mut w = h.clone();
        for v in vs {
            w = w.interior(v);
        }
        w.coefficient(0)
    };
    for mask in words(n, deg + 1) {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let vecs: Vec<Vec<BasePoly>> = idx.iter().map(|&i| alg.basis(i)).collect();
        let mut total = BasePoly::zero();
        for i in 0..vecs.len() {
            let rest: Vec<_> = vecs
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v.clone())
                .collect();
            let t = alg.anchor_apply(&vecs[i], &eval(&rest));
            total = if i % 2 == 0 { &total + &t } else { &total - &t };
        }
        for i in 0..vecs.len() {
            for j in i + 1..vecs.len() {
                let mut args = vec![alg.bracket(&vecs[i], &vecs[j])];
                args.extend(
                    vecs.iter()
                        .enumerate()
                        .filter(|(l, _)| *l != i && *l != j)
                        .map(|(_, v)| v.clone()),
                );
                let t = eval(&args);
                total = if (i + j) % 2 == 0 {
                    &total + &t
                } else {
                    &total - &t
                };
            }
        }
        if !total.is_zero() {
            return false;
        }
    }
    true
}

fn random_form(rng: &mut ChaCha8Rng, c: &CotangentChart, j: usize) -> GradedPoly {
    c.form_to_poly(&random::form(rng, c.n(), c.m(), j, 0.6))
        .unwrap()
}

fn random_instance(seed: u64) -> (ChaCha8Rng, u32, LieAlgebroidData, CotangentChart, Wedge) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(3..=5u32);
    let m = rng.gen_range(0..=2);
    let n = rng.gen_range(1..=4);
    let alg = random::algebroid_data(&mut rng, m, n, 0.5);
    let chart = CotangentChart::new(k, m, n).unwrap();
    let h = if rng.gen_bool(0.5) {
        random::form(&mut rng, n, m, k as usize + 1, 0.7)
    } else {
        Wedge::zero(n)
    };
    (rng, k, alg, chart, h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn theta_generates_d_a(seed in any::<u64>()) {
        let (mut rng, _, alg, c, _) = random_instance(seed);
        let theta = build_theta(&alg, &Wedge::zero(c.n()), None, &c).unwrap();
        let j = rng.gen_range(0..=c.n());
        let w = random::form(&mut rng, c.n(), c.m(), j, 0.6);
        let omega = c.form_to_poly(&w).unwrap();
        let via_theta = poisson(&theta, &omega, &c).unwrap();
        prop_assert_eq!(&via_theta, &d_a(&omega, &alg, &c).unwrap());
        prop_assert_eq!(via_theta, c.form_to_poly(&alg.differential(&w)).unwrap());
    }

    #[test]
    fn derived_matches_cartan(seed in any::<u64>()) {
        let (mut rng, k, alg, c, h) = random_instance(seed);
        let theta = build_theta(&alg, &h, None, &c).unwrap();
        let e1 = random::homogeneous(&mut rng, &c, k - 1, 3);
        let e2 = random::homogeneous(&mut rng, &c, k - 1, 3);
        prop_assert_eq!(
            derived_bracket(&e1, &e2, &theta, &c).unwrap(),
            cartan_bracket(&e1, &e2, &alg, &h, &c).unwrap()
        );
    }

    #[test]
    fn twist_is_gauge_symplectomorphism(seed in any::<u64>()) {
        let (mut rng, k, alg, c, h) = random_instance(seed);
        let theta = build_theta(&alg, &h, None, &c).unwrap();
        let b = random_form(&mut rng, &c, k as usize);
        let tb = TwistCochain::new(b.clone(), &c).unwrap();
        prop_assert_eq!(twist(&tb, &theta, &c).unwrap(), &theta + &d_a(&b, &alg, &c).unwrap());
        let d1 = rng.gen_range(0..=k + 1);
        let d2 = rng.gen_range(0..=k + 1);
        let f = random::homogeneous(&mut rng, &c, d1, 3);
        let g = random::homogeneous(&mut rng, &c, d2, 3);
        let lhs = poisson(&twist(&tb, &f, &c).unwrap(), &twist(&tb, &g, &c).unwrap(), &c).unwrap();
        prop_assert_eq!(lhs, twist(&tb, &poisson(&f, &g, &c).unwrap(), &c).unwrap());
    }

    #[test]
    fn master_matches_brute_force_on_random_data(seed in any::<u64>()) {
        let (_, k, alg, c, h) = random_instance(seed);
        let k = k.max(4);
        let c = CotangentChart::new(k, c.m(), c.n()).unwrap();
        let h = if h.is_homogeneous_of(k as usize + 1) { h } else { Wedge::zero(c.n()) };
        let theta = build_theta(&alg, &h, None, &c).unwrap();
        let report = check_master(&theta, &c).unwrap();
        prop_assert_eq!(report.passed(), alg.is_lie() && cartan_dh_vanishes(&alg, &h));
    }

    #[test]
    fn q3_conditions_agree_with_master_on_random_data(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(0..=1);
        let n = rng.gen_range(1..=4);
        let alg = if rng.gen_bool(0.5) {
            random::algebroid_data(&mut rng, m, n, 0.3)
        } else {
            LieAlgebroidData::new(m, n, vec![vec![BasePoly::zero(); m]; n], vec![vec![vec![BasePoly::zero(); n]; n]; n]).unwrap()
        };
        let mut pi = vec![vec![BasePoly::zero(); n]; n];
        for a in 0..n {
            for b in a..n {
                if rng.gen_bool(0.3) {
                    let v = BasePoly::constant(random::small_rational(&mut rng));
                    pi[a][b] = v.clone();
                    pi[b][a] = v;
                }
            }
        }
        let pi = Pairing::new(pi).unwrap();
        let h = if rng.gen_bool(0.5) { random::form(&mut rng, n, m, 4, 0.7) } else { Wedge::zero(n) };
        let c = CotangentChart::new(3, m, n).unwrap();
        let theta = build_theta(&alg, &h, Some(&pi), &c).unwrap();
        prop_assert_eq!(
            check_master(&theta, &c).unwrap().passed(),
            check_q3_conditions(&alg, &pi, &h).unwrap().passed()
        );
    }
}

#[test]
fn master_matches_brute_force_on_catalog() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = [0usize; 2];
    for (name, alg) in catalog::lie_algebroids()
        .into_iter()
        .chain(catalog::jacobi_violations())
    {
        for k in [4u32, 5] {
            let c = CotangentChart::new(k, alg.m(), alg.n()).unwrap();
            let closed = {
                let b = random::form(&mut rng, alg.n(), alg.m(), k as usize, 0.8);
                alg.differential(&b)
            };
            let wild = random::form(&mut rng, alg.n(), alg.m(), k as usize + 1, 0.8);
            for h in [Wedge::zero(alg.n()), closed, wild] {
                let theta = build_theta(&alg, &h, None, &c).unwrap();
                let verdict = check_master(&theta, &c).unwrap().passed();
                let brute = alg.is_lie() && cartan_dh_vanishes(&alg, &h);
                assert_eq!(verdict, brute, "{name}, k = {k}, H = {h:?}");
                seen[verdict as usize] += 1;
            }
        }
    }
    assert!(seen[0] > 10 && seen[1] > 10, "{seen:?}");
}

#[test]
fn derived_bracket_reproduces_structure_functions() {
    for (name, alg) in catalog::lie_algebroids() {
        let c = CotangentChart::new(4, alg.m(), alg.n()).unwrap();
        let theta = build_theta(&alg, &Wedge::zero(alg.n()), None, &c).unwrap();
        for a in 0..alg.n() {
            for b in 0..alg.n() {
                let got = derived_bracket(&c.a(a), &c.a(b), &theta, &c).unwrap();
                let mut want = GradedPoly::zero(c.table());
                for d in 0..alg.n() {
                    want += &(&c.embed_base(alg.structure(a, b, d)).unwrap() * &c.a(d));
                }
                assert_eq!(got, want, "{name}: [e{}, e{}]", a + 1, b + 1);
            }
        }
    }
}

#[test]
fn derived_bracket_leibniz_when_master_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, alg) in catalog::lie_algebroids() {
        for k in [3u32, 4, 5] {
            let c = CotangentChart::new(k, alg.m(), alg.n()).unwrap();
            let b = random::form(&mut rng, alg.n(), alg.m(), k as usize, 0.8);
            let h = alg.differential(&b);
            let theta = build_theta(&alg, &h, None, &c).unwrap();
            assert!(check_master(&theta, &c).unwrap().passed(), "{name}");
            let br = |x: &GradedPoly, y: &GradedPoly| derived_bracket(x, y, &theta, &c).unwrap();
            for _ in 0..3 {
                let e: Vec<GradedPoly> = (0..3)
                    .map(|_| random::homogeneous(&mut rng, &c, k - 1, 3))
                    .collect();
                let lhs = br(&e[0], &br(&e[1], &e[2]));
                let rhs = &br(&br(&e[0], &e[1]), &e[2]) + &br(&e[1], &br(&e[0], &e[2]));
                assert_eq!(lhs, rhs, "{name}, k = {k}");
            }
        }
    }
}

fn pairing(rows: Vec<Vec<i64>>) -> Pairing {
    Pairing::new(
        rows.into_iter()
            .map(|r| r.into_iter().map(BasePoly::int).collect())
            .collect(),
    )
    .unwrap()
}

#[test]
fn q3_conditions_agree_with_master() {
    let so3_killing = Pairing::new(
        catalog::so3_killing_pairing()
            .into_iter()
            .map(|r| r.into_iter().map(BasePoly::constant).collect())
            .collect(),
    )
    .unwrap();
    let top4 = |n: usize| Wedge::word(n, 0b1111, BasePoly::int(1));
    let cases: Vec<(&str, LieAlgebroidData, Pairing, Wedge)> = vec![
        (
            "so3 killing",
            catalog::so3(),
            so3_killing.clone(),
            Wedge::zero(3),
        ),
        (
            "so3 non-invariant",
            catalog::so3(),
            pairing(vec![vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 1]]),
            Wedge::zero(3),
        ),
        (
            "sl2 killing",
            catalog::sl2(),
            pairing(vec![vec![2, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]),
            Wedge::zero(3),
        ),
        (
            "heisenberg central",
            catalog::heisenberg(),
            pairing(vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 1]]),
            Wedge::zero(3),
        ),
        (
            "heisenberg non-central",
            catalog::heisenberg(),
            pairing(vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]),
            Wedge::zero(3),
        ),
        (
            "abelian5 inert pairing",
            catalog::abelian(5),
            {
                let mut p = vec![vec![0; 5]; 5];
                p[4][4] = 1;
                pairing(p)
            },
            top4(5),
        ),
        (
            "abelian4 full pairing",
            catalog::abelian(4),
            pairing(
                (0..4)
                    .map(|a| (0..4).map(|b| (a == b) as i64).collect())
                    .collect(),
            ),
            top4(4),
        ),
        (
            "abelian4 zero pairing",
            catalog::abelian(4),
            Pairing::zero(4),
            top4(4),
        ),
        (
            "broken-shear zero pairing",
            catalog::jacobi_violations()[0].1.clone(),
            Pairing::zero(3),
            Wedge::zero(3),
        ),
        (
            "so3 killing scaled",
            catalog::so3(),
            pairing(vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]]),
            Wedge::zero(3),
        ),
        (
            "so3-action killing",
            catalog::so3_action(),
            so3_killing,
            Wedge::zero(3),
        ),
        (
            "tangent-2 pairing",
            LieAlgebroidData::tangent(2),
            pairing(vec![vec![1, 0], vec![0, 1]]),
            Wedge::zero(2),
        ),
    ];
    let mut seen = [0usize; 2];
    for (name, alg, pi, h) in cases {
        let c = CotangentChart::new(3, alg.m(), alg.n()).unwrap();
        let theta = build_theta(&alg, &h, Some(&pi), &c).unwrap();
        let master = check_master(&theta, &c).unwrap().passed();
        let q3 = check_q3_conditions(&alg, &pi, &h).unwrap().passed();
        assert_eq!(master, q3, "{name}");
        seen[master as usize] += 1;
    }
    assert!(seen[0] >= 3 && seen[1] >= 3, "{seen:?}");
}

#[test]
fn q3_twisted_jacobi_normalization() {
    // [e1,e2] = e1, [e1,e3] = e2 has Jacobiator -e2 on (1,2,3); it is matched by
    // flat(i_1 i_2 i_3 H) only when the pairing and H are tuned together.
    let alg = LieAlgebroidData::from_brackets(
        0,
        4,
        vec![vec![]; 4],
        &[
            (
                (0, 1),
                vec![
                    BasePoly::int(1),
                    BasePoly::zero(),
                    BasePoly::zero(),
                    BasePoly::zero(),
                ],
            ),
            (
                (0, 2),
                vec![
                    BasePoly::zero(),
                    BasePoly::int(1),
                    BasePoly::zero(),
                    BasePoly::zero(),
                ],
            ),
        ],
    )
    .unwrap();
    let c = CotangentChart::new(3, 0, 4).unwrap();
    let theta = build_theta(&alg, &Wedge::zero(4), None, &c).unwrap();
    let tt = poisson(&theta, &theta, &c).unwrap();
    // {theta,theta} = -2 J^d_{abc} alpha^a alpha^b alpha^c a_d summed over a<b<c
    assert_eq!(tt, c.parse("2*alpha1*alpha2*alpha3*a2").unwrap());
    let pi = pairing(
        (0..4)
            .map(|a| (0..4).map(|b| (a == b) as i64).collect())
            .collect(),
    );
    let h = Wedge::word(4, 0b1111, BasePoly::int(1));
    let full = build_theta(&catalog::abelian(4), &h, Some(&pi), &c).unwrap();
    let parts = graded_cotangent::algebroid::split_theta(&full, &c);
    let ph = poisson(&parts.pi, &parts.h, &c).unwrap();
    assert_eq!(
        ph,
        c.parse("alpha2*alpha3*alpha4*a1 - alpha1*alpha3*alpha4*a2 + alpha1*alpha2*alpha4*a3 - alpha1*alpha2*alpha3*a4")
            .unwrap()
    );
    // flat(i_1 i_2 i_3 H) = -e4, matching the coefficient of alpha1 alpha2 alpha3 a4
    let e = |i| catalog::abelian(4).basis(i);
    let xi = h.interior(&e(2)).interior(&e(1)).interior(&e(0));
    assert_eq!(xi, Wedge::word(4, 0b1000, BasePoly::int(-1)));
}
