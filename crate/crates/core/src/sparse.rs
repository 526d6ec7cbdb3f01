//! Sparse approximate Nash equilibria: uniform mixtures over small
//! multisets of pure strategies, found by sampling from an exact equilibrium
//! or by exhaustive enumeration.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::games::{
    verify_epsilon_ne, verify_well_supported, BimatrixGame, MixedStrategy, NeReport, Player, VerificationQuery,
    WellSupportedReport,
};
use crate::numeric::precision::log_over_eps_sq;
use crate::numeric::Rational;
use crate::rng;

/// Constant `c` in the sample size `s = ceil(c ln(max(m, n)) / eps^2)`.
pub const SAMPLE_CONSTANT: i64 = 16;

/// Pure strategies with multiplicity, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SupportMultiset {
    pub indices: Vec<usize>,
}

impl SupportMultiset {
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::input("multiset must be nonempty"));
        }
        indices.sort_unstable();
        Ok(SupportMultiset { indices })
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }

    pub fn strategy(&self, n: usize) -> Result<MixedStrategy> {
        MixedStrategy::from_multiset(n, &self.indices)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuccessCriterion {
    #[default]
    WellSupported,
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseNEResult {
    pub row_multiset: SupportMultiset,
    pub column_multiset: SupportMultiset,
    pub x: MixedStrategy,
    pub y: MixedStrategy,
    pub report: NeReport,
    pub well_supported: WellSupportedReport,
    /// Whether the pair passes the requested check at epsilon.
    pub success: bool,
}

fn evaluate(
    g: &BimatrixGame,
    row: SupportMultiset,
    column: SupportMultiset,
    q: &VerificationQuery,
    criterion: SuccessCriterion,
) -> Result<SparseNEResult> {
    let (m, n) = g.shape();
    let x = row.strategy(m)?;
    let y = column.strategy(n)?;
    let report = verify_epsilon_ne(g, &x, &y, q)?;
    let well_supported = verify_well_supported(g, &x, &y, q)?;
    let success = match criterion {
        SuccessCriterion::WellSupported => well_supported.holds,
        SuccessCriterion::Plain => report.holds,
    };
    Ok(SparseNEResult {
        row_multiset: row,
        column_multiset: column,
        x,
        y,
        report,
        well_supported,
        success,
    })
}

fn require_normalized(g: &BimatrixGame) -> Result<()> {
    if !g.is_normalized() {
        return Err(Error::input("sparse equilibria need payoffs in [-1, 1]; normalize the game first"));
    }
    Ok(())
}

fn positive_epsilon(epsilon: &Rational) -> Result<VerificationQuery> {
    if !epsilon.is_positive() {
        return Err(Error::input("epsilon must be positive"));
    }
    VerificationQuery::new(epsilon.clone())
}

/// `ceil(c ln(max(m, n)) / eps^2)`, at least 1.
pub fn sample_size(m: usize, n: usize, epsilon: &Rational) -> u64 {
    log_over_eps_sq(&Rational::from_integer(SAMPLE_CONSTANT), m.max(n), epsilon)
}

/// Draws `s` pure strategies for each player i.i.d. from an exact
/// equilibrium, with `s` given by [`sample_size`].
pub fn lmm_sample(
    g: &BimatrixGame,
    exact_ne: (&MixedStrategy, &MixedStrategy),
    epsilon: &Rational,
    seed: u64,
    criterion: SuccessCriterion,
) -> Result<SparseNEResult> {
    let (m, n) = g.shape();
    let s = sample_size(m, n, epsilon) as usize;
    lmm_sample_with_size(g, exact_ne, epsilon, seed, s, criterion)
}

/// As [`lmm_sample`] with an explicit multiset size.
pub fn lmm_sample_with_size(
    g: &BimatrixGame,
    exact_ne: (&MixedStrategy, &MixedStrategy),
    epsilon: &Rational,
    seed: u64,
    s: usize,
    criterion: SuccessCriterion,
) -> Result<SparseNEResult> {
    require_normalized(g)?;
    let q = positive_epsilon(epsilon)?;
    let (x_star, y_star) = exact_ne;
    let check = verify_epsilon_ne(g, x_star, y_star, &VerificationQuery::exact())?;
    if !check.holds {
        return Err(Error::input("the supplied strategies are not an exact Nash equilibrium"));
    }
    if s == 0 {
        return Err(Error::input("sample size must be positive"));
    }
    let mut row_rng = rng::stream(seed, 0);
    let mut column_rng = rng::stream(seed, 1);
    let row: Vec<usize> = (0..s).map(|_| rng::sample_index(&mut row_rng, x_star.probs())).collect();
    let column: Vec<usize> = (0..s).map(|_| rng::sample_index(&mut column_rng, y_star.probs())).collect();
    evaluate(g, SupportMultiset::new(row)?, SupportMultiset::new(column)?, &q, criterion)
}

/// All size-`s` multisets over `0..n` as nondecreasing sequences, in
/// lexicographic order.
pub fn multisets(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 || s == 0 {
        return out;
    }
    let mut cur = vec![0usize; s];
    loop {
        out.push(cur.clone());
        let Some(k) = (0..s).rev().find(|&k| cur[k] + 1 < n) else {
            return out;
        };
        let v = cur[k] + 1;
        for slot in cur.iter_mut().skip(k) {
            *slot = v;
        }
    }
}

/// Number of size-`s` multisets over `n` items, saturating.
pub fn multiset_count(n: usize, s: usize) -> u128 {
    // C(n + s - 1, s)
    let mut acc: u128 = 1;
    for i in 0..s as u128 {
        acc = acc.saturating_mul(n as u128 + i) / (i + 1);
    }
    acc
}

/// Enumerates multiset pairs by size `s = 1, 2, ...` up to `max_size` (the
/// sampling bound when `None`), Alice's multiset, then Bob's, and returns the
/// first pair that passes the plain epsilon-NE check.
pub fn qptas_search(
    g: &BimatrixGame,
    epsilon: &Rational,
    max_size: Option<usize>,
    budget: &Budget,
) -> Result<SparseNEResult> {
    require_normalized(g)?;
    let q = positive_epsilon(epsilon)?;
    let (m, n) = g.shape();
    let limit = max_size.unwrap_or_else(|| sample_size(m, n, epsilon) as usize).max(1);
    let mut examined: u128 = 0;
    for s in 1..=limit {
        let pairs = multiset_count(m, s).saturating_mul(multiset_count(n, s));
        examined = examined.saturating_add(pairs);
        budget.check_outcomes("multiset pairs", examined)?;
        let rows = multisets(m, s);
        let cols = multisets(n, s);
        let found = rows.par_iter().find_map_first(|r| {
            let x = MixedStrategy::from_multiset(m, r).ok()?;
            let col_pure_of_x = g.pure_payoffs(Player::Column, &x).ok()?;
            let col_best = col_pure_of_x.iter().max()?.clone();
            cols.iter().find_map(|c| {
                let y = MixedStrategy::from_multiset(n, c).ok()?;
                // Bob's side is cheap to screen before the full check.
                let col_payoff: Rational = c.iter().map(|&j| &col_pure_of_x[j]).sum::<Rational>() / Rational::from(s);
                if &col_best - &col_payoff > q.epsilon {
                    return None;
                }
                let report = verify_epsilon_ne(g, &x, &y, &q).ok()?;
                report.holds.then(|| (r.clone(), c.clone()))
            })
        });
        if let Some((r, c)) = found {
            let result = evaluate(
                g,
                SupportMultiset::new(r)?,
                SupportMultiset::new(c)?,
                &q,
                SuccessCriterion::Plain,
            )?;
            if !result.report.holds {
                return Err(Error::invariant("enumerated witness failed re-verification"));
            }
            return Ok(result);
        }
    }
    Err(Error::invariant(format!(
        "no epsilon-NE among multisets of size at most {}",
        limit
    )))
}
