use graded_cotangent::algebroid::{build_theta, LieAlgebroidData};
use graded_cotangent::catalog;
use graded_cotangent::random;
use graded_cotangent::ruth_lk::{
    adjoint_rep, check_lk_jacobi, check_ruth, coadjoint_rep, lk_q_structure, q_from_lk, q_squared,
    semidirect, twisted_coadjoint_semidirect, ConnectionData, LkAlgebroidData, RepUTHData,
    LK_CLAUSES, RUTH_CLAUSES,
};
use graded_cotangent::symplectic::{hamiltonian_vf, CotangentChart};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn connections(rng: &mut ChaCha8Rng, alg: &LieAlgebroidData) -> Vec<ConnectionData> {
    let (m, n) = (alg.m(), alg.n());
    let mut out = vec![ConnectionData::trivial(m, n)];
    if m > 0 {
        out.push(random::connection(rng, m, n, 0.4));
        out.push(random::connection(rng, m, n, 0.8));
    }
    out
}

#[test]
fn adjoint_and_coadjoint_are_representations() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let algebroids = catalog::lie_algebroids();
    assert!(algebroids.len() >= 10);
    for (name, alg) in &algebroids {
        for nabla in connections(&mut rng, alg) {
            let ad = adjoint_rep(alg, &nabla).unwrap();
            let co = coadjoint_rep(alg, &nabla).unwrap();
            let r = check_ruth(&ad, alg).unwrap();
            assert!(r.passed(), "{name} adjoint:\n{r}");
            let r = check_ruth(&co, alg).unwrap();
            assert!(r.passed(), "{name} coadjoint:\n{r}");
            // constant frames pair to constants, so <nabla beta, b> + <beta, nabla b> = 0
            for a in 0..alg.n() {
                for b in 0..alg.n() {
                    for c in 0..alg.n() {
                        assert!(
                            (&co.nabla1[a][c][b] + &ad.nabla0[a][b][c]).is_zero(),
                            "{name}"
                        );
                    }
                }
                for i in 0..alg.m() {
                    for j in 0..alg.m() {
                        assert!(
                            (&co.nabla0[a][i][j] + &ad.nabla1[a][j][i]).is_zero(),
                            "{name}"
                        );
                    }
                }
            }
            for a in 0..alg.n() {
                for i in 0..alg.m() {
                    assert_eq!(co.del[i][a], ad.del[a][i], "{name}");
                }
            }
        }
    }
}

fn rep_of(lk: &LkAlgebroidData) -> RepUTHData {
    RepUTHData::new(
        lk.m(),
        lk.n(),
        lk.del.clone(),
        lk.psi.clone(),
        lk.phi.clone(),
        lk.l3.clone(),
    )
    .unwrap()
}

#[test]
fn semidirect_clauses_match_rep_clauses() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let algebroids = catalog::lie_algebroids();
    let mut failures = [0usize; 4];
    for i in 0..160 {
        let (name, alg) = &algebroids[i % algebroids.len()];
        let lk = random::lk_instance(&mut rng, alg, 4);
        let jac = check_lk_jacobi(&lk).unwrap();
        let ruth = check_ruth(&rep_of(&lk), alg).unwrap();
        for (c, (r, j)) in RUTH_CLAUSES.iter().zip(&LK_CLAUSES[1..5]).enumerate() {
            let holds = ruth.clause_holds(r).unwrap();
            assert_eq!(
                holds,
                jac.clause_holds(j).unwrap(),
                "{name} instance {i}, {r} vs {j}:\n{ruth}\n{jac}"
            );
            if !holds {
                failures[c] += 1;
            }
        }
    }
    assert!(
        failures.iter().all(|&f| f > 0),
        "failures per clause {failures:?}"
    );
}

/// Which generator block a term of `Q^2(g)` lives in, by the fibre
/// generator it contains.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    Pure,
    Mid,
    Low,
}

/// Vanishing of each `Q^2` component, in clause order.
fn q_components(lk: &LkAlgebroidData) -> [bool; 7] {
    let q2 = q_squared(&lk_q_structure(lk).unwrap()).unwrap();
    let (m, n, mid) = (lk.m(), lk.n(), lk.mid);
    let block = |ex: &[u32]| {
        if ex[m + n + mid..].iter().any(|&e| e > 0) {
            Block::Low
        } else if ex[m + n..m + n + mid].iter().any(|&e| e > 0) {
            Block::Mid
        } else {
            Block::Pure
        }
    };
    let mut zero = [true; 7];
    for (g, value) in q2.values().iter().enumerate() {
        for (mono, c) in value.terms() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let b = block(mono.exponents());
            let clause = if g < m + n {
                0
            } else if g < m + n + mid {
                match b {
                    Block::Low => 1,
                    Block::Mid => 3,
                    Block::Pure => 5,
                }
            } else {
                match b {
                    Block::Low => 2,
                    Block::Mid => 4,
                    Block::Pure => 6,
                }
            };
            zero[clause] = false;
        }
    }
    zero
}

#[test]
fn jacobi_clauses_are_q_squared_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let algebroids: Vec<_> = catalog::lie_algebroids()
        .into_iter()
        .filter(|(_, g)| g.n() >= 3)
        .collect();
    let mut failures = [0usize; 7];
    for i in 0..150 {
        let k = if rng.gen_bool(0.8) { 4 } else { 5 };
        let lk = if i % 10 == 9 {
            let (m, n) = (rng.gen_range(0..=2), rng.gen_range(2..=4));
            random::broken_lk(&mut rng, m, n, k)
        } else {
            random::lk_instance(&mut rng, &algebroids[i % algebroids.len()].1, k)
        };
        let jac = check_lk_jacobi(&lk).unwrap();
        let comps = q_components(&lk);
        let holds: Vec<bool> = LK_CLAUSES
            .iter()
            .map(|c| jac.clause_holds(c).unwrap())
            .collect();
        if !holds[0] {
            assert!(!comps[0], "instance {i}:\n{jac}");
            failures[0] += 1;
            continue;
        }
        for c in 0..7 {
            assert_eq!(
                holds[c], comps[c],
                "instance {i}, {}:\n{jac}",
                LK_CLAUSES[c]
            );
            if !holds[c] {
                failures[c] += 1;
            }
        }
        assert_eq!(
            jac.passed(),
            q_squared(&lk_q_structure(&lk).unwrap()).unwrap().is_zero()
        );
    }
    assert!(
        failures.iter().all(|&f| f > 0),
        "failures per clause {failures:?}"
    );
}

#[test]
fn twisted_coadjoint_iff_closed() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let algebroids = catalog::lie_algebroids();
    let (mut closed, mut open) = (0, 0);
    for i in 0..80 {
        let (name, alg) = &algebroids[i % algebroids.len()];
        let k = if alg.n() >= 6 {
            4
        } else {
            rng.gen_range(4..=5)
        };
        let nabla = random::connection(&mut rng, alg.m(), alg.n(), 0.4);
        let h = random::twist(&mut rng, alg, k);
        let lk = twisted_coadjoint_semidirect(alg, &nabla, &h, k).unwrap();
        let report = check_lk_jacobi(&lk).unwrap();
        let dh = alg.differential(&h).is_zero();
        assert_eq!(report.passed(), dh, "{name} instance {i}:\n{report}");
        if dh {
            closed += 1;
        } else {
            open += 1;
            for c in &LK_CLAUSES[..5] {
                assert_eq!(
                    report.clause_holds(c),
                    Some(true),
                    "{name} instance {i}:\n{report}"
                );
            }
            assert_eq!(report.clause_holds(LK_CLAUSES[5]), Some(false));
        }
    }
    assert!(closed > 0 && open > 0, "closed {closed} open {open}");
}

#[test]
fn zero_twist_is_the_coadjoint_semidirect() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (_, alg) in catalog::lie_algebroids() {
        let nabla = random::connection(&mut rng, alg.m(), alg.n(), 0.5);
        let h = graded_cotangent::exterior::Wedge::zero(alg.n());
        let twisted = twisted_coadjoint_semidirect(&alg, &nabla, &h, 4).unwrap();
        let plain = semidirect(&alg, &coadjoint_rep(&alg, &nabla).unwrap(), 4).unwrap();
        assert_eq!(twisted, plain);
    }
}

#[test]
fn point_base_vector_field_is_hamiltonian() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let algebras = catalog::lie_algebras();
    assert!(algebras.len() >= 10);
    let mut nonzero = 0;
    for (name, alg) in &algebras {
        let n = alg.n();
        for k in 3..=5u32 {
            for _ in 0..2 {
                let h = if (k as usize) < n && rng.gen_bool(0.5) {
                    alg.differential(&random::form(&mut rng, n, 0, k as usize, 0.6))
                } else {
                    random::form(&mut rng, n, 0, k as usize + 1, 0.6)
                };
                if !h.is_zero() {
                    nonzero += 1;
                }
                let chart = CotangentChart::new(k, 0, n).unwrap();
                let theta = build_theta(alg, &h, None, &chart).unwrap();
                let lk = twisted_coadjoint_semidirect(alg, &ConnectionData::trivial(0, n), &h, k)
                    .unwrap();
                let q = q_from_lk(&lk, &chart).unwrap();
                let x = hamiltonian_vf(&theta, &chart).unwrap();
                for g in 0..chart.table().len() {
                    assert_eq!(q.value(g), x.value(g), "{name} k = {k}, generator {g}");
                }
            }
        }
    }
    assert!(nonzero >= 5, "only {nonzero} nonzero twists");
}
