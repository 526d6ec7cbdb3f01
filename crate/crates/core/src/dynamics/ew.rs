use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::numeric::precision::{floor_dyadic, ln, softmax_scaled, sqrt_floor, DYADIC_BITS};
use crate::numeric::{scale_to_integers, Rational};

/// Per-action rewards for one round, each in `[-1, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct RewardVector {
    rewards: Vec<Rational>,
}

impl RewardVector {
    pub fn new(rewards: Vec<Rational>) -> Result<Self> {
        let lo = -Rational::one();
        let hi = Rational::one();
        if let Some(i) = rewards.iter().position(|r| *r < lo || *r > hi) {
            return Err(Error::input(format!("reward {} = {} outside [-1, 1]", i, rewards[i])));
        }
        Ok(RewardVector { rewards })
    }

    pub fn len(&self) -> usize {
        self.rewards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rewards.is_empty()
    }

    pub fn rewards(&self) -> &[Rational] {
        &self.rewards
    }
}

impl TryFrom<Vec<Rational>> for RewardVector {
    type Error = Error;
    fn try_from(v: Vec<Rational>) -> Result<Self> {
        RewardVector::new(v)
    }
}

impl From<RewardVector> for Vec<Rational> {
    fn from(r: RewardVector) -> Self {
        r.rewards
    }
}

/// Step-size schedules. Every value is rounded down to a multiple of
/// `2^-64` so the exponent tallies stay exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaSchedule {
    Constant(Rational),
    /// `c * sqrt(t)`, applied to time-averaged payoffs.
    SqrtT { c: Rational },
    /// `sqrt(8 ln(n) / t)`, applied to per-step rewards.
    AnytimeEw { actions: usize },
}

impl EtaSchedule {
    pub fn sqrt_t() -> Self {
        EtaSchedule::SqrtT { c: Rational::one() }
    }

    pub fn eta(&self, t: usize) -> Rational {
        self.prepared()(t)
    }

    /// The schedule as a function of `t`, with `ln(n)` evaluated once.
    pub fn prepared(&self) -> impl Fn(usize) -> Rational + '_ {
        let log = match self {
            EtaSchedule::AnytimeEw { actions } => Some(Rational::from_integer(8) * ln(&Rational::from(*actions), DYADIC_BITS)),
            _ => None,
        };
        move |t| {
            assert!(t >= 1, "steps are numbered from 1");
            match self {
                EtaSchedule::Constant(c) => c.clone(),
                EtaSchedule::SqrtT { c } => floor_dyadic(&(c * sqrt_floor(&Rational::from(t), DYADIC_BITS)), DYADIC_BITS),
                EtaSchedule::AnytimeEw { .. } => {
                    let l = log.as_ref().expect("computed above");
                    sqrt_floor(&(l / Rational::from(t)), DYADIC_BITS)
                }
            }
        }
    }
}

/// Exponential Weights learner. Weights are kept as exact exponent tallies:
/// action `a` has weight `exp(log_nums[a] / log_den)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LearnerState {
    log_den: BigInt,
    log_nums: Vec<BigInt>,
    t: usize,
    cumulative: Vec<Rational>,
    distributions: Vec<Vec<Rational>>,
    rewards: Vec<RewardVector>,
}

impl LearnerState {
    pub fn new(actions: usize) -> Result<Self> {
        if actions == 0 {
            return Err(Error::input("a learner needs at least one action"));
        }
        Ok(LearnerState {
            log_den: BigInt::one(),
            log_nums: vec![BigInt::zero(); actions],
            t: 1,
            cumulative: vec![Rational::zero(); actions],
            distributions: Vec::new(),
            rewards: Vec::new(),
        })
    }

    pub fn actions(&self) -> usize {
        self.log_nums.len()
    }

    /// Index of the upcoming step, starting at 1.
    pub fn step(&self) -> usize {
        self.t
    }

    /// `ln w(a)` for each action.
    pub fn log_weights(&self) -> Vec<Rational> {
        self.log_nums.iter().map(|n| Rational::from_bigints(n.clone(), self.log_den.clone())).collect()
    }

    pub fn cumulative_rewards(&self) -> &[Rational] {
        &self.cumulative
    }

    /// Current distribution `w / sum(w)`, exact multiples of `2^-64` summing to one.
    pub fn distribution(&self) -> Vec<Rational> {
        softmax_scaled(&self.log_den, &self.log_nums)
    }

    /// Distributions played so far, one per completed step.
    pub fn played(&self) -> &[Vec<Rational>] {
        &self.distributions
    }

    pub fn reward_history(&self) -> &[RewardVector] {
        &self.rewards
    }

    fn advance(&mut self, p: Vec<Rational>, r: &RewardVector, eta: &Rational) {
        self.distributions.push(p);
        let (rd, rn) = scale_to_integers(r.rewards());
        let step_den = eta.denom() * rd;
        if !(&self.log_den % &step_den).is_zero() {
            let den = self.log_den.lcm(&step_den);
            let up = &den / &self.log_den;
            for e in self.log_nums.iter_mut() {
                *e *= &up;
            }
            self.log_den = den;
        }
        let factor = eta.numer() * (&self.log_den / step_den);
        for (e, v) in self.log_nums.iter_mut().zip(&rn) {
            if !v.is_zero() {
                *e += &factor * v;
            }
        }
        for (c, v) in self.cumulative.iter_mut().zip(r.rewards()) {
            *c += v;
        }
        self.rewards.push(r.clone());
        self.t += 1;
    }

    /// Average regret of the played distributions so far.
    pub fn regret(&self) -> Result<Rational> {
        super::regret_of(&self.rewards, &self.distributions)
    }
}

/// One EW step: play the current distribution, observe `r`, and multiply
/// each weight by `exp(eta * r(a))`.
pub fn ew_update(state: &LearnerState, r: &RewardVector, eta: &Rational) -> Result<LearnerState> {
    if r.len() != state.actions() {
        return Err(Error::input(format!(
            "reward vector has {} entries for {} actions",
            r.len(),
            state.actions()
        )));
    }
    if eta.is_negative() {
        return Err(Error::input("step size must be nonnegative"));
    }
    let mut next = state.clone();
    let p = state.distribution();
    next.advance(p, r, eta);
    Ok(next)
}

/// Runs EW for `steps` rounds against an adaptive adversary that sees the
/// learner's current distribution.
pub fn run_ew(
    actions: usize,
    steps: usize,
    schedule: &EtaSchedule,
    mut adversary: impl FnMut(usize, &[Rational]) -> RewardVector,
) -> Result<LearnerState> {
    let mut state = LearnerState::new(actions)?;
    let eta = schedule.prepared();
    for t in 1..=steps {
        let p = state.distribution();
        let r = adversary(t, &p);
        if r.len() != actions {
            return Err(Error::input(format!("reward vector has {} entries for {} actions", r.len(), actions)));
        }
        state.advance(p, &r, &eta(t));
    }
    Ok(state)
}
