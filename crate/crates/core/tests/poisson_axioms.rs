use graded_cotangent::kernel::{int, GradedPoly};
use graded_cotangent::random::homogeneous;
use graded_cotangent::symplectic::{poisson, CotangentChart};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pm(odd: i64) -> graded_cotangent::kernel::Rational {
    if odd.rem_euclid(2) == 1 {
        int(-1)
    } else {
        int(1)
    }
}

fn triple(seed: u64, k: u32) -> (CotangentChart, Vec<(i64, GradedPoly)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(0..=2);
    let n = rng.gen_range(1..=4);
    let chart = CotangentChart::new(k, m, n).unwrap();
    let elems = (0..3)
        .map(|_| {
            let d = rng.gen_range(0..=k + 2);
            (d as i64, homogeneous(&mut rng, &chart, d, 3))
        })
        .collect();
    (chart, elems)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn skew_symmetry(seed in any::<u64>(), k in 3u32..=5) {
        let (c, e) = triple(seed, k);
        let k = k as i64;
        let ((df, f), (dg, g)) = (&e[0], &e[1]);
        let lhs = poisson(f, g, &c).unwrap();
        let rhs = poisson(g, f, &c).unwrap().scale(&-pm((df + k) * (dg + k)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz(seed in any::<u64>(), k in 3u32..=5) {
        let (c, e) = triple(seed, k);
        let k = k as i64;
        let ((df, f), (dg, g), (_, h)) = (&e[0], &e[1], &e[2]);
        let lhs = poisson(f, &(g * h), &c).unwrap();
        let rhs = &(&poisson(f, g, &c).unwrap() * h)
            + &(g * &poisson(f, h, &c).unwrap()).scale(&pm((df + k) * dg));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi(seed in any::<u64>(), k in 3u32..=5) {
        let (c, e) = triple(seed, k);
        let k = k as i64;
        let ((df, f), (dg, g), (_, h)) = (&e[0], &e[1], &e[2]);
        let lhs = poisson(f, &poisson(g, h, &c).unwrap(), &c).unwrap();
        let rhs = &poisson(&poisson(f, g, &c).unwrap(), h, &c).unwrap()
            + &poisson(g, &poisson(f, h, &c).unwrap(), &c).unwrap().scale(&pm((df + k) * (dg + k)));
        prop_assert_eq!(lhs, rhs);
    }
}
