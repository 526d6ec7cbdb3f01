use serde::{Deserialize, Serialize};

use super::strategy::{profile_index, profile_of};
use super::JointDistribution;
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Finite game with `k` players and an explicit payoff entry per profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormGame {
    strategies: Vec<usize>,
    /// `payoffs[profile_index][player]`, last player varying fastest.
    payoffs: Vec<Vec<Rational>>,
}

impl NormalFormGame {
    pub fn new(strategies: Vec<usize>, payoffs: Vec<Vec<Rational>>) -> Result<Self> {
        if strategies.is_empty() || strategies.contains(&0) {
            return Err(Error::input("every player needs at least one strategy"));
        }
        let outcomes = strategies
            .iter()
            .try_fold(1usize, |acc, &s| acc.checked_mul(s))
            .ok_or_else(|| Error::input("outcome count overflows"))?;
        if payoffs.len() != outcomes {
            return Err(Error::input(format!(
                "payoff table has {} profiles, expected {}",
                payoffs.len(),
                outcomes
            )));
        }
        let k = strategies.len();
        if let Some(i) = payoffs.iter().position(|p| p.len() != k) {
            return Err(Error::input(format!("profile {} does not have {} payoffs", i, k)));
        }
        Ok(NormalFormGame { strategies, payoffs })
    }

    pub fn from_fn(strategies: Vec<usize>, mut f: impl FnMut(&[usize]) -> Vec<Rational>) -> Result<Self> {
        let outcomes: usize = strategies.iter().product();
        let payoffs = (0..outcomes).map(|i| f(&profile_of(&strategies, i))).collect();
        NormalFormGame::new(strategies, payoffs)
    }

    pub fn players(&self) -> usize {
        self.strategies.len()
    }

    pub fn strategy_counts(&self) -> &[usize] {
        &self.strategies
    }

    pub fn num_outcomes(&self) -> usize {
        self.payoffs.len()
    }

    pub fn profiles(&self) -> ProfileIter {
        ProfileIter {
            shape: self.strategies.clone(),
            next: 0,
            total: self.payoffs.len(),
        }
    }

    pub fn profile_of(&self, idx: usize) -> Vec<usize> {
        profile_of(&self.strategies, idx)
    }

    pub fn index_of(&self, profile: &[usize]) -> Option<usize> {
        profile_index(&self.strategies, profile)
    }

    pub fn payoff(&self, profile: &[usize], player: usize) -> &Rational {
        let idx = self.index_of(profile).expect("profile in range");
        &self.payoffs[idx][player]
    }

    pub fn payoff_at(&self, idx: usize, player: usize) -> &Rational {
        &self.payoffs[idx][player]
    }

    /// Sum of all players' payoffs at a profile.
    pub fn welfare_at(&self, idx: usize) -> Rational {
        self.payoffs[idx].iter().sum()
    }

    /// Expected payoff of `player` under a joint distribution.
    pub fn expected_payoff(&self, rho: &JointDistribution, player: usize) -> Rational {
        rho.probs()
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| p * &self.payoffs[i][player])
            .sum()
    }

    /// Index of the profile obtained by replacing `player`'s strategy.
    pub fn deviate(&self, idx: usize, player: usize, strategy: usize) -> usize {
        let mut profile = self.profile_of(idx);
        profile[player] = strategy;
        self.index_of(&profile).expect("in range")
    }
}

/// Iterates profiles in index order.
pub struct ProfileIter {
    shape: Vec<usize>,
    next: usize,
    total: usize,
}

impl Iterator for ProfileIter {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.next >= self.total {
            return None;
        }
        let p = profile_of(&self.shape, self.next);
        self.next += 1;
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{BimatrixGame, MixedStrategy};
    use crate::numeric::{int, rat};

    #[test]
    fn bimatrix_conversion_and_expectations() {
        let g = BimatrixGame::from_i64(&[&[2, 0], &[0, 1]], &[&[1, 0], &[0, 2]]);
        let nf = g.to_normal_form();
        assert_eq!(nf.players(), 2);
        assert_eq!(nf.payoff(&[1, 1], 1), &int(2));
        let x = MixedStrategy::new(vec![rat(2, 3), rat(1, 3)]).unwrap();
        let y = MixedStrategy::new(vec![rat(1, 3), rat(2, 3)]).unwrap();
        let rho = JointDistribution::product(&[x, y]);
        assert_eq!(nf.expected_payoff(&rho, 0), rat(2, 3));
        assert_eq!(nf.profiles().count(), 4);
        assert_eq!(nf.deviate(0, 1, 1), 1);
    }

    #[test]
    fn validation() {
        assert!(NormalFormGame::new(vec![2], vec![vec![int(1)]]).is_err());
        assert!(NormalFormGame::new(vec![1, 1], vec![vec![int(1)]]).is_err());
        assert!(NormalFormGame::new(vec![0], vec![]).is_err());
    }
}
