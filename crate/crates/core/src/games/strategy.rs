use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Probability distribution over one player's pure strategies.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct MixedStrategy {
    probs: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::input("mixed strategy over zero strategies"));
        }
        if let Some(i) = probs.iter().position(Rational::is_negative) {
            return Err(Error::input(format!("probability {} is negative", i)));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::input(format!("probabilities sum to {}, not 1", total)));
        }
        Ok(MixedStrategy { probs })
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0);
        let p = Rational::new(1, n as i64);
        MixedStrategy { probs: vec![p; n] }
    }

    pub fn pure(n: usize, index: usize) -> Self {
        assert!(index < n);
        let mut probs = vec![Rational::zero(); n];
        probs[index] = Rational::one();
        MixedStrategy { probs }
    }

    /// Uniform over a multiset of indices (repeats add weight).
    pub fn from_multiset(n: usize, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::input("empty multiset"));
        }
        let mut counts = vec![0i64; n];
        for &i in indices {
            if i >= n {
                return Err(Error::input(format!("index {} out of range", i)));
            }
            counts[i] += 1;
        }
        let s = indices.len() as i64;
        Ok(MixedStrategy {
            probs: counts.into_iter().map(|c| Rational::new(c, s)).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.probs[i]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.probs.len()).filter(|&i| self.probs[i].is_positive()).collect()
    }

    pub fn is_pure(&self) -> Option<usize> {
        self.probs.iter().position(Rational::is_one)
    }
}

impl TryFrom<Vec<Rational>> for MixedStrategy {
    type Error = Error;
    fn try_from(v: Vec<Rational>) -> Result<Self> {
        MixedStrategy::new(v)
    }
}

impl From<MixedStrategy> for Vec<Rational> {
    fn from(m: MixedStrategy) -> Self {
        m.probs
    }
}

/// Distribution over pure profiles of a game with the given strategy counts.
/// Stored densely; profiles are ordered with the last player varying fastest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointDistribution {
    shape: Vec<usize>,
    probs: Vec<Rational>,
}

impl JointDistribution {
    pub fn new(shape: Vec<usize>, probs: Vec<Rational>) -> Result<Self> {
        let outcomes: usize = shape.iter().product();
        if probs.len() != outcomes || shape.contains(&0) {
            return Err(Error::input(format!(
                "joint distribution needs {} entries, got {}",
                outcomes,
                probs.len()
            )));
        }
        if probs.iter().any(Rational::is_negative) {
            return Err(Error::input("negative joint probability"));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::input(format!("joint probabilities sum to {}, not 1", total)));
        }
        Ok(JointDistribution { shape, probs })
    }

    /// Builds from `(profile, probability)` pairs; missing profiles get 0 and
    /// repeated profiles accumulate.
    pub fn from_pairs(shape: Vec<usize>, pairs: &[(Vec<usize>, Rational)]) -> Result<Self> {
        let outcomes: usize = shape.iter().product();
        let mut probs = vec![Rational::zero(); outcomes];
        for (profile, p) in pairs {
            let idx = profile_index(&shape, profile)
                .ok_or_else(|| Error::input(format!("profile {:?} out of range", profile)))?;
            probs[idx] += p;
        }
        JointDistribution::new(shape, probs)
    }

    pub fn point_mass(shape: Vec<usize>, profile: &[usize]) -> Result<Self> {
        JointDistribution::from_pairs(shape, &[(profile.to_vec(), Rational::one())])
    }

    pub fn product(strategies: &[MixedStrategy]) -> Self {
        let shape: Vec<usize> = strategies.iter().map(MixedStrategy::len).collect();
        let outcomes: usize = shape.iter().product();
        let mut probs = Vec::with_capacity(outcomes);
        for idx in 0..outcomes {
            let profile = profile_of(&shape, idx);
            probs.push(profile.iter().zip(strategies).map(|(&s, m)| m.get(s)).product());
        }
        JointDistribution { shape, probs }
    }

    /// Equal-weight mixture of distributions with a common shape.
    pub fn mixture(parts: &[JointDistribution]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::input("empty mixture"))?;
        let w = Rational::new(1, parts.len() as i64);
        let mut probs = vec![Rational::zero(); first.probs.len()];
        for part in parts {
            if part.shape != first.shape {
                return Err(Error::input("mixture of differently shaped distributions"));
            }
            for (acc, p) in probs.iter_mut().zip(&part.probs) {
                if !p.is_zero() {
                    *acc += p * &w;
                }
            }
        }
        Ok(JointDistribution {
            shape: first.shape.clone(),
            probs,
        })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn get(&self, profile: &[usize]) -> Rational {
        profile_index(&self.shape, profile).map_or_else(Rational::zero, |i| self.probs[i].clone())
    }

    /// Profiles with positive probability, in order.
    pub fn support(&self) -> Vec<(Vec<usize>, Rational)> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_positive())
            .map(|(i, p)| (profile_of(&self.shape, i), p.clone()))
            .collect()
    }

    /// Marginal distribution of one player.
    pub fn marginal(&self, player: usize) -> MixedStrategy {
        let mut m = vec![Rational::zero(); self.shape[player]];
        for (i, p) in self.probs.iter().enumerate() {
            if !p.is_zero() {
                m[profile_of(&self.shape, i)[player]] += p;
            }
        }
        MixedStrategy { probs: m }
    }
}

pub(crate) fn profile_index(shape: &[usize], profile: &[usize]) -> Option<usize> {
    if profile.len() != shape.len() {
        return None;
    }
    let mut idx = 0usize;
    for (&s, &n) in profile.iter().zip(shape) {
        if s >= n {
            return None;
        }
        idx = idx * n + s;
    }
    Some(idx)
}

pub(crate) fn profile_of(shape: &[usize], mut idx: usize) -> Vec<usize> {
    let mut profile = vec![0; shape.len()];
    for k in (0..shape.len()).rev() {
        profile[k] = idx % shape[k];
        idx /= shape[k];
    }
    profile
}
