use graded_cotangent::algebroid::build_theta;
use graded_cotangent::catalog;
use graded_cotangent::dirac::{
    check_higher_dirac, check_lagrangian, check_nambu_dirac_hagiwara, check_twisted_nambu,
    from_pair, graph_closure, is_decomposable, preserves_ideal, to_pair, NambuTensor,
};
use graded_cotangent::random;
use graded_cotangent::report::Verdict;
use graded_cotangent::symplectic::CotangentChart;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn pair_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..120 {
        let n = rng.gen_range(3..=6);
        let pair = random::pair(&mut rng, 4, n);
        let spec = from_pair(&pair).unwrap();
        assert!(check_lagrangian(&spec).passed());
        // reorder the section basis before reading the pair back
        let mut sections = spec.sections().to_vec();
        sections.shuffle(&mut rng);
        let shuffled =
            graded_cotangent::dirac::SubbundleSpec::new(4, 0, n, spec.regime().clone(), sections)
                .unwrap();
        let back = to_pair(&shuffled).unwrap();
        assert!(
            back.equivalent(&pair) && pair.equivalent(&back),
            "{pair:?} vs {back:?}"
        );
        let again = from_pair(&back).unwrap();
        let rows = |s: &graded_cotangent::dirac::SubbundleSpec| s.sections().len();
        assert_eq!(rows(&again), rows(&spec));
    }
}

#[test]
fn lagrangian_iff_nambu_dirac() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = [0usize; 3];
    for i in 0..150 {
        let spec = random::sampled_subbundle(&mut rng);
        let a = check_lagrangian(&spec);
        let b = check_nambu_dirac_hagiwara(&spec);
        assert_eq!(a.verdict, b.verdict, "instance {i}:\n{a}\n{b}");
        seen[a.verdict as usize] += 1;
    }
    assert!(seen.iter().all(|&c| c > 0), "verdict counts {seen:?}");
}

#[test]
fn closure_iff_ideal_preserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let algebras = catalog::lie_algebras();
    let (mut pass, mut fail) = (0, 0);
    for i in 0..60 {
        let (name, alg) = &algebras[i % algebras.len()];
        let k = if alg.n() <= 4 {
            rng.gen_range(3..=4)
        } else {
            3
        };
        let (spec, h) = random::higher_dirac_instance(&mut rng, alg, k);
        let chart = CotangentChart::new(k, 0, alg.n()).unwrap();
        let theta = build_theta(alg, &h, None, &chart).unwrap();
        let closed = check_higher_dirac(&spec, alg, &h).unwrap();
        let ideal = preserves_ideal(&spec, &theta).unwrap();
        assert_eq!(
            closed.passed(),
            ideal.passed(),
            "{name} instance {i}:\n{closed}\n{ideal}"
        );
        if closed.passed() {
            pass += 1;
        } else {
            fail += 1;
        }
    }
    assert!(pass > 0 && fail > 0, "pass {pass} fail {fail}");
}

#[test]
fn twisted_nambu_two_paths() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let algebroids: Vec<_> = catalog::lie_algebroids()
        .into_iter()
        .filter(|(_, g)| g.n() >= 3)
        .collect();
    let (mut pass, mut fail, mut vanishing) = (0, 0, 0);
    for i in 0..70 {
        let (name, alg) = &algebroids[i % algebroids.len()];
        let k = rng.gen_range(3..=alg.n().min(4)) as u32;
        let pi = NambuTensor::new(
            k,
            alg.m(),
            random::decomposable(&mut rng, alg.n(), alg.m(), k),
        )
        .unwrap();
        let h = random::twist(&mut rng, alg, k);
        let grid: Vec<Vec<_>> = (0..4)
            .map(|j| random::vector(&mut rng, alg.m(), j))
            .collect();
        if is_decomposable(&pi, &grid).verdict == Verdict::Weak {
            vanishing += 1;
        }
        let eq = check_twisted_nambu(&pi, alg, &h).unwrap();
        let cl = graph_closure(&pi, alg, &h).unwrap();
        assert_eq!(eq.passed(), cl.passed(), "{name} instance {i}:\n{eq}\n{cl}");
        if eq.passed() {
            pass += 1;
        } else {
            fail += 1;
        }
    }
    assert!(
        pass > 0 && fail > 0 && vanishing > 0,
        "pass {pass} fail {fail} vanishing {vanishing}"
    );
}
