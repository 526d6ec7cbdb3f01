use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::games::{JointDistribution, MixedStrategy};
use crate::numeric::Rational;

/// One round of two-player dynamics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub t: usize,
    pub x: MixedStrategy,
    pub y: MixedStrategy,
    /// Realized pure strategies in sampled mode.
    pub x_played: Option<usize>,
    pub y_played: Option<usize>,
    /// `x^T A y` and `x^T B y` for this round.
    pub row_payoff: Rational,
    pub column_payoff: Rational,
    /// Average regret through this round against the opponent's mixed play.
    pub row_regret: Rational,
    pub column_regret: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub algorithm: String,
    pub seed: u64,
    pub steps: Vec<Step>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    fn average(&self, pick: impl Fn(&Step) -> &MixedStrategy) -> Result<MixedStrategy> {
        let first = self.steps.first().ok_or_else(|| Error::input("empty trace"))?;
        let mut acc = vec![Rational::zero(); pick(first).len()];
        for s in &self.steps {
            for (a, p) in acc.iter_mut().zip(pick(s).probs()) {
                if !p.is_zero() {
                    *a += p;
                }
            }
        }
        let t = Rational::from(self.steps.len());
        MixedStrategy::new(acc.into_iter().map(|a| a / &t).collect())
    }

    /// Time average of Alice's mixed strategies.
    pub fn average_x(&self) -> Result<MixedStrategy> {
        self.average(|s| &s.x)
    }

    /// Time average of Bob's mixed strategies.
    pub fn average_y(&self) -> Result<MixedStrategy> {
        self.average(|s| &s.y)
    }

    /// Largest final average regret over the two players.
    pub fn max_regret(&self) -> Option<Rational> {
        self.steps
            .last()
            .map(|s| std::cmp::max(&s.row_regret, &s.column_regret).clone())
    }
}

/// Uniform mixture over the rounds' product distributions.
pub fn cce_from_trace(trace: &Trace) -> Result<JointDistribution> {
    if trace.is_empty() {
        return Err(Error::input("empty trace"));
    }
    let parts: Vec<JointDistribution> = trace
        .steps
        .iter()
        .map(|s| JointDistribution::product(&[s.x.clone(), s.y.clone()]))
        .collect();
    JointDistribution::mixture(&parts)
}
