use eqlab::games::nash::support_enumeration;
use eqlab::games::{verify_epsilon_ne, verify_well_supported, BimatrixGame, MixedStrategy, VerificationQuery};
use eqlab::zerosum::{solve_minimax, ZeroSumGame};
use eqlab::{int, rat, Budget, Matrix, Rational};
use proptest::prelude::*;

fn game_from(entries: &[i64], m: usize, n: usize) -> BimatrixGame {
    let a = Matrix::from_fn(m, n, |i, j| int(entries[i * n + j]));
    let b = Matrix::from_fn(m, n, |i, j| int(entries[m * n + i * n + j]));
    BimatrixGame::new(a, b).unwrap()
}

fn strategy(weights: &[u32]) -> MixedStrategy {
    let total: i64 = weights.iter().map(|&w| w as i64).sum::<i64>().max(1);
    if weights.iter().all(|&w| w == 0) {
        return MixedStrategy::uniform(weights.len());
    }
    MixedStrategy::new(weights.iter().map(|&w| rat(w as i64, total)).collect()).unwrap()
}

// Expected payoff for the row player when deviating to pure i, computed from scratch.
fn oracle_gains(g: &BimatrixGame, x: &MixedStrategy, y: &MixedStrategy) -> (Rational, Rational) {
    let (m, n) = g.shape();
    let mut cur_a = Rational::zero();
    let mut cur_b = Rational::zero();
    for i in 0..m {
        for j in 0..n {
            let p = x.get(i) * y.get(j);
            cur_a += &p * g.a().get(i, j);
            cur_b += &p * g.b().get(i, j);
        }
    }
    let mut best_a = None::<Rational>;
    for i in 0..m {
        let v: Rational = (0..n).map(|j| y.get(j) * g.a().get(i, j)).sum();
        if best_a.as_ref().is_none_or(|b| v > *b) {
            best_a = Some(v);
        }
    }
    let mut best_b = None::<Rational>;
    for j in 0..n {
        let v: Rational = (0..m).map(|i| x.get(i) * g.b().get(i, j)).sum();
        if best_b.as_ref().is_none_or(|b| v > *b) {
            best_b = Some(v);
        }
    }
    (best_a.unwrap() - cur_a, best_b.unwrap() - cur_b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn epsilon_check_matches_direct_evaluation(
        entries in proptest::collection::vec(-5i64..=5, 18),
        xw in proptest::collection::vec(0u32..5, 3),
        yw in proptest::collection::vec(0u32..5, 3),
        eps_num in 0i64..12,
    ) {
        let g = game_from(&entries, 3, 3);
        let x = strategy(&xw);
        let y = strategy(&yw);
        let eps = rat(eps_num, 4);
        let r = verify_epsilon_ne(&g, &x, &y, &VerificationQuery::new(eps.clone()).unwrap()).unwrap();
        let (ga, gb) = oracle_gains(&g, &x, &y);
        prop_assert_eq!(&r.row_gain, &ga);
        prop_assert_eq!(&r.column_gain, &gb);
        prop_assert_eq!(r.holds, ga <= eps && gb <= eps);
        // Well-supported implies plain at the same epsilon.
        let ws = verify_well_supported(&g, &x, &y, &VerificationQuery::new(eps).unwrap()).unwrap();
        if ws.holds {
            prop_assert!(r.holds);
        }
    }

    #[test]
    fn every_enumerated_equilibrium_is_exact(entries in proptest::collection::vec(-4i64..=4, 18)) {
        let g = game_from(&entries, 3, 3);
        let all = support_enumeration(&g, None, &Budget::default()).unwrap();
        for (x, y) in &all {
            prop_assert!(verify_epsilon_ne(&g, x, y, &VerificationQuery::exact()).unwrap().holds);
        }
    }

    #[test]
    fn zero_sum_equilibria_share_the_value(entries in proptest::collection::vec(-4i64..=4, 9)) {
        let a = Matrix::from_fn(3, 3, |i, j| int(entries[i * 3 + j]));
        let zs = ZeroSumGame::new(a.clone()).unwrap();
        let v = solve_minimax(&zs).unwrap().value;
        let g = BimatrixGame::zero_sum(a).unwrap();
        let all = support_enumeration(&g, None, &Budget::default()).unwrap();
        prop_assert!(!all.is_empty());
        for (x, y) in &all {
            let p: Rational = g.expected_payoff(x, y, eqlab::games::Player::Row).unwrap();
            prop_assert_eq!(&p, &v);
        }
    }
}

#[test]
fn minimax_on_random_rational_games() {
    let mut rng = eqlab::rng::stream(3, 0);
    for _ in 0..20 {
        let a = Matrix::from_fn(4, 4, |_, _| eqlab::rng::grid_rational(&mut rng, -1, 1, 12));
        let s = solve_minimax(&ZeroSumGame::new(a.clone()).unwrap()).unwrap();
        let g = BimatrixGame::zero_sum(a).unwrap();
        assert!(verify_epsilon_ne(&g, &s.x, &s.y, &VerificationQuery::exact()).unwrap().holds);
    }
}
