use super::RewardVector;
use crate::error::{Error, Result};
use crate::numeric::{dot, Rational};

/// Average regret of a sequence of distributions: the best fixed action's
/// average reward minus the sequence's average expected reward.
pub fn regret_of(rewards: &[RewardVector], plays: &[Vec<Rational>]) -> Result<Rational> {
    if rewards.is_empty() {
        return Err(Error::input("regret of an empty history"));
    }
    if rewards.len() != plays.len() {
        return Err(Error::input(format!(
            "{} reward vectors but {} plays",
            rewards.len(),
            plays.len()
        )));
    }
    let n = rewards[0].len();
    let mut totals = vec![Rational::zero(); n];
    let mut earned = Rational::zero();
    for (r, p) in rewards.iter().zip(plays) {
        if r.len() != n || p.len() != n {
            return Err(Error::input("history entries have inconsistent lengths"));
        }
        for (tot, v) in totals.iter_mut().zip(r.rewards()) {
            *tot += v;
        }
        earned += dot(r.rewards(), p);
    }
    let best = totals.into_iter().max().expect("at least one action");
    Ok((best - earned) / Rational::from(rewards.len()))
}

/// Regret of a sequence of pure actions.
pub fn regret_of_actions(rewards: &[RewardVector], actions: &[usize]) -> Result<Rational> {
    let plays: Vec<Vec<Rational>> = rewards
        .iter()
        .zip(actions)
        .map(|(r, &a)| {
            if a >= r.len() {
                return Err(Error::input(format!("action {} out of range", a)));
            }
            let mut p = vec![Rational::zero(); r.len()];
            p[a] = Rational::one();
            Ok(p)
        })
        .collect::<Result<_>>()?;
    if plays.len() != actions.len() {
        return Err(Error::input("histories differ in length"));
    }
    regret_of(rewards, &plays)
}
