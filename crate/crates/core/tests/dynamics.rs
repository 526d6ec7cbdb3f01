use eqlab::dynamics::{run_ew, smooth_fp_run, DynamicsConfig, EtaSchedule, FeedbackMode, RewardVector};
use eqlab::games::BimatrixGame;
use eqlab::numeric::precision::{ln, sqrt_floor};
use eqlab::{int, Matrix, Rational};
use rand::Rng;

fn random_pm_one(seed: u64, actions: usize, steps: usize) -> Rational {
    let mut rng = eqlab::rng::stream(seed, 9);
    let state = run_ew(actions, steps, &EtaSchedule::AnytimeEw { actions }, |_, _| {
        RewardVector::new((0..actions).map(|_| if rng.random::<bool>() { int(1) } else { int(-1) }).collect()).unwrap()
    })
    .unwrap();
    state.regret().unwrap()
}

#[test]
fn ew_regret_is_within_the_bound_on_average() {
    let steps = 300;
    for actions in [2usize, 8] {
        let seeds = 20usize;
        let total: Rational = (0..seeds as u64).map(|s| random_pm_one(s, actions, steps)).sum();
        let mean = total / Rational::from(seeds);
        let bound = Rational::new(5, 2)
            * sqrt_floor(&(ln(&Rational::from(actions), 64) / Rational::from(steps)), 64);
        assert!(mean <= bound, "actions {}: regret {} over {}", actions, mean.to_f64(), bound.to_f64());
    }
}

#[test]
fn sampled_feedback_is_unbiased_on_the_first_update() {
    // After one round the sampled history is a single pure observation whose
    // expectation is the opponent's uniform first-round mix; averaging the
    // resulting second-round strategies over seeds tracks the exact-mode one.
    let g = BimatrixGame::zero_sum(Matrix::from_i64(&[&[1, -1], &[-1, 1]])).unwrap();
    let exact = smooth_fp_run(&g, 2, &DynamicsConfig::default()).unwrap();
    let seeds = 200u64;
    let mut freq = 0u64;
    for seed in 0..seeds {
        let cfg = DynamicsConfig {
            feedback: FeedbackMode::Sampled,
            seed,
            ..DynamicsConfig::default()
        };
        let t = smooth_fp_run(&g, 1, &cfg).unwrap();
        if t.steps[0].y_played == Some(0) {
            freq += 1;
        }
    }
    let share = freq as f64 / seeds as f64;
    assert!((share - exact.steps[0].y.get(0).to_f64()).abs() < 0.1, "share {}", share);
}

#[test]
fn sfp_average_is_an_epsilon_equilibrium_on_matching_pennies() {
    let g = BimatrixGame::zero_sum(Matrix::from_i64(&[&[1, -1], &[-1, 1]])).unwrap();
    let tr = smooth_fp_run(&g, 400, &DynamicsConfig::default()).unwrap();
    let r = eqlab::games::verify_epsilon_ne(
        &g,
        &tr.average_x().unwrap(),
        &tr.average_y().unwrap(),
        &eqlab::games::VerificationQuery::new(Rational::new(1, 10)).unwrap(),
    )
    .unwrap();
    assert!(r.holds);
}
