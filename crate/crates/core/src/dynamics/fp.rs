use serde::{Deserialize, Serialize};

use super::{EtaSchedule, Step, Trace};
use crate::error::{Error, Result};
use crate::games::{BimatrixGame, MixedStrategy, Player};
use crate::numeric::precision::softmax;
use crate::numeric::{dot, Rational};
use crate::rng;

/// Horizon constant `C` in `T = ceil(C ln(N) / eps^2)` for smooth fictitious
/// play with the `sqrt_t` schedule, fixed by a calibration sweep.
pub const SFP_HORIZON_CONSTANT: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeedbackMode {
    /// Each player observes the opponent's mixed strategy.
    ExactMixed,
    /// Each player observes a pure strategy drawn from the opponent's mix.
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicsConfig {
    pub eta: EtaSchedule,
    pub feedback: FeedbackMode,
    pub seed: u64,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        DynamicsConfig {
            eta: EtaSchedule::sqrt_t(),
            feedback: FeedbackMode::ExactMixed,
            seed: 0,
        }
    }
}

/// Running sums needed for per-step payoffs and regret.
struct Accounting {
    row_totals: Vec<Rational>,
    column_totals: Vec<Rational>,
    row_earned: Rational,
    column_earned: Rational,
}

impl Accounting {
    fn new(m: usize, n: usize) -> Self {
        Accounting {
            row_totals: vec![Rational::zero(); m],
            column_totals: vec![Rational::zero(); n],
            row_earned: Rational::zero(),
            column_earned: Rational::zero(),
        }
    }

    fn record(
        &mut self,
        g: &BimatrixGame,
        t: usize,
        x: MixedStrategy,
        y: MixedStrategy,
        played: (Option<usize>, Option<usize>),
    ) -> Result<Step> {
        let row_rewards = g.pure_payoffs(Player::Row, &y)?;
        let column_rewards = g.pure_payoffs(Player::Column, &x)?;
        let row_payoff: Rational = dot(x.probs(), &row_rewards);
        let column_payoff: Rational = dot(y.probs(), &column_rewards);
        for (tot, r) in self.row_totals.iter_mut().zip(&row_rewards) {
            *tot += r;
        }
        for (tot, r) in self.column_totals.iter_mut().zip(&column_rewards) {
            *tot += r;
        }
        self.row_earned += &row_payoff;
        self.column_earned += &column_payoff;
        let tt = Rational::from(t);
        let row_best = self.row_totals.iter().max().expect("nonempty");
        let column_best = self.column_totals.iter().max().expect("nonempty");
        Ok(Step {
            t,
            row_regret: (row_best - &self.row_earned) / &tt,
            column_regret: (column_best - &self.column_earned) / &tt,
            x,
            y,
            x_played: played.0,
            y_played: played.1,
            row_payoff,
            column_payoff,
        })
    }
}

fn lowest_argmax(v: &[Rational]) -> usize {
    let mut best = 0;
    for i in 1..v.len() {
        if v[i] > v[best] {
            best = i;
        }
    }
    best
}

/// Fictitious play: each round both players best-respond (lowest index on
/// ties) to the opponent's empirical history. Round 1 plays strategy 0.
pub fn fictitious_play_run(g: &BimatrixGame, steps: usize, cfg: &DynamicsConfig) -> Result<Trace> {
    if steps == 0 {
        return Err(Error::input("at least one step is required"));
    }
    let (m, n) = g.shape();
    // Cumulative payoff of each own pure strategy against the opponent's past plays.
    let mut row_scores = vec![Rational::zero(); m];
    let mut column_scores = vec![Rational::zero(); n];
    let mut acct = Accounting::new(m, n);
    let mut out = Vec::with_capacity(steps);
    for t in 1..=steps {
        let i = lowest_argmax(&row_scores);
        let j = lowest_argmax(&column_scores);
        for (k, s) in row_scores.iter_mut().enumerate() {
            *s += g.a().get(k, j);
        }
        for (k, s) in column_scores.iter_mut().enumerate() {
            *s += g.b().get(i, k);
        }
        out.push(acct.record(g, t, MixedStrategy::pure(m, i), MixedStrategy::pure(n, j), (None, None))?);
    }
    Ok(Trace {
        algorithm: "fp".into(),
        seed: cfg.seed,
        steps: out,
    })
}

/// Smooth fictitious play: each round a player mixes with probabilities
/// proportional to `exp(eta^t * pi_i)`, where `pi_i` is strategy `i`'s
/// average payoff against the opponent's history. Round 1 is uniform.
pub fn smooth_fp_run(g: &BimatrixGame, steps: usize, cfg: &DynamicsConfig) -> Result<Trace> {
    if steps == 0 {
        return Err(Error::input("at least one step is required"));
    }
    if !g.is_normalized() {
        return Err(Error::input("smooth fictitious play needs payoffs in [-1, 1]"));
    }
    let (m, n) = g.shape();
    let mut row_history = vec![Rational::zero(); m];
    let mut column_history = vec![Rational::zero(); n];
    let mut acct = Accounting::new(m, n);
    let mut sampler = rng::stream(cfg.seed, 0);
    let eta = cfg.eta.prepared();
    let mut out = Vec::with_capacity(steps);
    for t in 1..=steps {
        let (x, y) = if t == 1 {
            (MixedStrategy::uniform(m), MixedStrategy::uniform(n))
        } else {
            let scale = eta(t) / Rational::from(t - 1);
            let xe: Vec<Rational> = row_history.iter().map(|h| h * &scale).collect();
            let ye: Vec<Rational> = column_history.iter().map(|h| h * &scale).collect();
            (MixedStrategy::new(softmax(&xe))?, MixedStrategy::new(softmax(&ye))?)
        };
        let played = match cfg.feedback {
            FeedbackMode::ExactMixed => (None, None),
            FeedbackMode::Sampled => (
                Some(rng::sample_index(&mut sampler, x.probs())),
                Some(rng::sample_index(&mut sampler, y.probs())),
            ),
        };
        let (seen_x, seen_y) = match played {
            (Some(i), Some(j)) => (MixedStrategy::pure(m, i), MixedStrategy::pure(n, j)),
            _ => (x.clone(), y.clone()),
        };
        for (h, r) in row_history.iter_mut().zip(g.pure_payoffs(Player::Row, &seen_y)?) {
            *h += r;
        }
        for (h, r) in column_history.iter_mut().zip(g.pure_payoffs(Player::Column, &seen_x)?) {
            *h += r;
        }
        out.push(acct.record(g, t, x, y, played)?);
    }
    Ok(Trace {
        algorithm: "sfp".into(),
        seed: cfg.seed,
        steps: out,
    })
}
