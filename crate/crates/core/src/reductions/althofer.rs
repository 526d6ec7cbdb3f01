use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::games::MixedStrategy;
use crate::numeric::{Matrix, Rational};
use crate::zerosum::ZeroSumGame;

/// Alice names an index `i < k`, Bob a subset `S` of size `k/2`; Alice wins
/// 1 if `i` is in `S` and loses 1 otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlthoferGame {
    pub k: usize,
    /// Bob's subsets: those containing 0 in lexicographic order, then their
    /// complements in the same order.
    pub subsets: Vec<Vec<usize>>,
    pub game: ZeroSumGame,
}

fn k_subsets_with_zero(k: usize) -> Vec<Vec<usize>> {
    let half = k / 2;
    let mut out = Vec::new();
    let mut cur = vec![0usize];
    fn rec(k: usize, half: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == half {
            out.push(cur.clone());
            return;
        }
        for v in start..k {
            cur.push(v);
            rec(k, half, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(k, half, 1, &mut cur, &mut out);
    out
}

pub(crate) fn althofer_subsets(k: usize) -> Vec<Vec<usize>> {
    let first = k_subsets_with_zero(k);
    let complements: Vec<Vec<usize>> = first
        .iter()
        .map(|s| (0..k).filter(|i| !s.contains(i)).collect())
        .collect();
    first.into_iter().chain(complements).collect()
}

pub fn build_althofer(k: usize) -> Result<AlthoferGame> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::input("Althöfer games need an even k >= 2"));
    }
    let subsets = althofer_subsets(k);
    let a = Matrix::from_fn(k, subsets.len(), |i, s| {
        Rational::from(if subsets[s].contains(&i) { 1 } else { -1 })
    });
    Ok(AlthoferGame {
        k,
        subsets,
        game: ZeroSumGame::new(a)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Punishment {
    /// Bob's best subset: the `k/2` least likely indices, ties by index.
    pub subset: Vec<usize>,
    pub payoff: Rational,
    pub tv_distance: Rational,
    /// Whether `payoff >= tv_distance`.
    pub dominates: bool,
}

/// Bob's best-response payoff against `p` and `p`'s total-variation
/// distance from uniform.
pub fn althofer_punishment(p: &MixedStrategy) -> Result<Punishment> {
    let k = p.len();
    if k < 2 || k % 2 != 0 {
        return Err(Error::input("Althöfer games need an even k >= 2"));
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| p.get(a).cmp(p.get(b)).then(a.cmp(&b)));
    let mut subset = order[..k / 2].to_vec();
    subset.sort_unstable();
    let inside: Rational = subset.iter().map(|&i| p.get(i)).sum();
    let payoff = Rational::one() - &inside - &inside;
    let uniform = Rational::new(1, k as i64);
    let tv_distance: Rational = p
        .probs()
        .iter()
        .filter(|v| **v > uniform)
        .map(|v| v - &uniform)
        .sum();
    Ok(Punishment {
        dominates: payoff >= tv_distance,
        subset,
        payoff,
        tv_distance,
    })
}
