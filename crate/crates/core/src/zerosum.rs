//! Exact minimax solutions of two-player zero-sum games.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::games::{BimatrixGame, MixedStrategy};
use crate::numeric::{lp_solve, LinearProgram, Matrix, Rational, Relation, Sense};

/// Alice receives `A[i][j]`, Bob receives `-A[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroSumGame {
    pub a: Matrix,
}

impl ZeroSumGame {
    pub fn new(a: Matrix) -> Result<Self> {
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::input("empty payoff matrix"));
        }
        Ok(ZeroSumGame { a })
    }

    pub fn from_bimatrix(g: &BimatrixGame) -> Result<Self> {
        if !g.is_zero_sum() {
            return Err(Error::input("game is not zero-sum"));
        }
        ZeroSumGame::new(g.a().clone())
    }

    pub fn to_bimatrix(&self) -> BimatrixGame {
        BimatrixGame::zero_sum(self.a.clone()).expect("nonempty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroSumSolution {
    pub value: Rational,
    pub x: MixedStrategy,
    pub y: MixedStrategy,
}

/// Optimal values of Alice's and Bob's LPs, kept apart so callers can see
/// that they coincide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimaxCertificate {
    pub solution: ZeroSumSolution,
    pub row_lp_value: Rational,
    pub column_lp_value: Rational,
}

/// Alice's LP: maximize `v` subject to `v <= sum_i A_ij x_i` for every
/// column `j`, with `x` a distribution.
pub fn row_lp(a: &Matrix) -> LinearProgram {
    let (m, n) = a.shape();
    let mut obj = vec![Rational::zero(); m + 1];
    obj[m] = Rational::one();
    let mut lp = LinearProgram::new(Sense::Maximize, obj);
    lp.set_free(m);
    for j in 0..n {
        let mut row: Vec<Rational> = (0..m).map(|i| -a.get(i, j)).collect();
        row.push(Rational::one());
        lp.add_constraint(row, Relation::Le, Rational::zero());
    }
    let mut simplex = vec![Rational::one(); m];
    simplex.push(Rational::zero());
    lp.add_constraint(simplex, Relation::Eq, Rational::one());
    lp
}

/// Bob's LP: minimize `w` subject to `w >= sum_j A_ij y_j` for every row
/// `i`, with `y` a distribution.
pub fn column_lp(a: &Matrix) -> LinearProgram {
    let (m, n) = a.shape();
    let mut obj = vec![Rational::zero(); n + 1];
    obj[n] = Rational::one();
    let mut lp = LinearProgram::new(Sense::Minimize, obj);
    lp.set_free(n);
    for i in 0..m {
        let mut row: Vec<Rational> = (0..n).map(|j| -a.get(i, j)).collect();
        row.push(Rational::one());
        lp.add_constraint(row, Relation::Ge, Rational::zero());
    }
    let mut simplex = vec![Rational::one(); n];
    simplex.push(Rational::zero());
    lp.add_constraint(simplex, Relation::Eq, Rational::one());
    lp
}

/// Solves both players' LPs and checks that their optima are equal.
pub fn solve_minimax_certified(g: &ZeroSumGame) -> Result<MinimaxCertificate> {
    let (m, n) = g.a.shape();
    let primal_lp = row_lp(&g.a);
    let primal = lp_solve(&primal_lp)?;
    let dual_lp = column_lp(&g.a);
    let dual = lp_solve(&dual_lp)?;
    if !primal.is_optimal() || !dual.is_optimal() {
        return Err(Error::invariant("minimax LP without an optimum"));
    }
    primal.certify(&primal_lp).map_err(Error::invariant)?;
    dual.certify(&dual_lp).map_err(Error::invariant)?;
    if primal.objective != dual.objective {
        return Err(Error::invariant(format!(
            "minimax LPs disagree: {} vs {}",
            primal.objective, dual.objective
        )));
    }
    let x = MixedStrategy::new(primal.point[..m].to_vec())?;
    let y = MixedStrategy::new(dual.point[..n].to_vec())?;
    Ok(MinimaxCertificate {
        solution: ZeroSumSolution {
            value: primal.objective.clone(),
            x,
            y,
        },
        row_lp_value: primal.objective,
        column_lp_value: dual.objective,
    })
}

pub fn solve_minimax(g: &ZeroSumGame) -> Result<ZeroSumSolution> {
    Ok(solve_minimax_certified(g)?.solution)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinmaxPairReport {
    pub is_pair: bool,
    pub value: Rational,
    /// `min_j x^T A e_j`: what `x` guarantees Alice.
    pub row_guarantee: Rational,
    /// `max_i e_i^T A y`: the most `y` can cost Bob.
    pub column_guarantee: Rational,
    /// `value - row_guarantee`; positive means `x` falls short.
    pub row_gap: Rational,
    /// `column_guarantee - value`; positive means `y` falls short.
    pub column_gap: Rational,
}

pub fn verify_minmax_pair(g: &ZeroSumGame, x: &MixedStrategy, y: &MixedStrategy) -> Result<MinmaxPairReport> {
    let (m, n) = g.a.shape();
    if x.len() != m || y.len() != n {
        return Err(Error::input("strategy lengths do not match the game"));
    }
    let value = solve_minimax(g)?.value;
    let row_guarantee = g.a.vec_mul(x.probs()).into_iter().min().expect("nonempty");
    let column_guarantee = g.a.mul_vec(y.probs()).into_iter().max().expect("nonempty");
    let row_gap = &value - &row_guarantee;
    let column_gap = &column_guarantee - &value;
    Ok(MinmaxPairReport {
        is_pair: !row_gap.is_positive() && !column_gap.is_positive(),
        value,
        row_guarantee,
        column_guarantee,
        row_gap,
        column_gap,
    })
}
