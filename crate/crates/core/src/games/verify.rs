use serde::{Deserialize, Serialize};

use super::{BimatrixGame, MixedStrategy, Player};
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Additive tolerance, in payoff units, for approximate equilibria.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationQuery {
    pub epsilon: Rational,
}

impl VerificationQuery {
    pub fn new(epsilon: Rational) -> Result<Self> {
        if epsilon.is_negative() {
            return Err(Error::input("epsilon must be nonnegative"));
        }
        Ok(VerificationQuery { epsilon })
    }

    pub fn exact() -> Self {
        VerificationQuery {
            epsilon: Rational::zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeReport {
    pub holds: bool,
    pub epsilon: Rational,
    pub row_payoff: Rational,
    pub column_payoff: Rational,
    /// Best-response value minus current payoff, per player.
    pub row_gain: Rational,
    pub column_gain: Rational,
    /// Set when the game has payoffs outside `[-1, 1]`; epsilon is then
    /// compared against raw payoffs, not rescaled ones.
    pub unnormalized: bool,
}

impl NeReport {
    pub fn worst_gain(&self) -> &Rational {
        std::cmp::max(&self.row_gain, &self.column_gain)
    }
}

/// Checks whether `(x, y)` is an epsilon-Nash equilibrium.
pub fn verify_epsilon_ne(
    game: &BimatrixGame,
    x: &MixedStrategy,
    y: &MixedStrategy,
    q: &VerificationQuery,
) -> Result<NeReport> {
    let row_payoff = game.expected_payoff(x, y, Player::Row)?;
    let column_payoff = game.expected_payoff(x, y, Player::Column)?;
    let (row_best, _) = game.best_response_value(Player::Row, y)?;
    let (column_best, _) = game.best_response_value(Player::Column, x)?;
    let row_gain = row_best - &row_payoff;
    let column_gain = column_best - &column_payoff;
    let holds = row_gain <= q.epsilon && column_gain <= q.epsilon;
    Ok(NeReport {
        holds,
        epsilon: q.epsilon.clone(),
        row_payoff,
        column_payoff,
        row_gain,
        column_gain,
        unnormalized: !game.is_normalized(),
    })
}

/// A pure strategy played with positive probability that is more than
/// epsilon worse than a best response.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Offender {
    pub player: Player,
    pub strategy: usize,
    pub gap: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellSupportedReport {
    pub holds: bool,
    pub epsilon: Rational,
    pub offenders: Vec<Offender>,
    pub unnormalized: bool,
}

/// Checks that every strategy in either support is within epsilon of a best
/// response.
pub fn verify_well_supported(
    game: &BimatrixGame,
    x: &MixedStrategy,
    y: &MixedStrategy,
    q: &VerificationQuery,
) -> Result<WellSupportedReport> {
    let mut offenders = Vec::new();
    for (player, own, opp) in [(Player::Row, x, y), (Player::Column, y, x)] {
        if own.len() != game.strategy_count(player) {
            return Err(Error::input("strategy length does not match the game"));
        }
        let payoffs = game.pure_payoffs(player, opp)?;
        let best = payoffs.iter().max().expect("nonempty").clone();
        for s in own.support() {
            let gap = &best - &payoffs[s];
            if gap > q.epsilon {
                offenders.push(Offender {
                    player,
                    strategy: s,
                    gap,
                });
            }
        }
    }
    Ok(WellSupportedReport {
        holds: offenders.is_empty(),
        epsilon: q.epsilon.clone(),
        offenders,
        unnormalized: !game.is_normalized(),
    })
}
