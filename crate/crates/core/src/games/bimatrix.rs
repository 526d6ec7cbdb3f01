use serde::{Deserialize, Serialize};

use super::{MixedStrategy, NormalFormGame};
use crate::error::{Error, Result};
use crate::numeric::{Matrix, Rational};

/// The row player (Alice, payoffs `A`) or the column player (Bob, payoffs `B`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Row,
    Column,
}

impl Player {
    pub fn index(self) -> usize {
        match self {
            Player::Row => 0,
            Player::Column => 1,
        }
    }

    pub fn other(self) -> Player {
        match self {
            Player::Row => Player::Column,
            Player::Column => Player::Row,
        }
    }
}

/// Two-player game with independent payoff matrices of equal shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimatrixGame {
    a: Matrix,
    b: Matrix,
}

impl BimatrixGame {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::input(format!(
                "payoff matrices have shapes {:?} and {:?}",
                a.shape(),
                b.shape()
            )));
        }
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::input("a game needs at least one strategy per player"));
        }
        Ok(BimatrixGame { a, b })
    }

    /// Zero-sum game: Bob receives `-A`.
    pub fn zero_sum(a: Matrix) -> Result<Self> {
        let b = a.neg();
        BimatrixGame::new(a, b)
    }

    pub fn from_i64(a: &[&[i64]], b: &[&[i64]]) -> Self {
        BimatrixGame::new(Matrix::from_i64(a), Matrix::from_i64(b)).expect("valid fixture")
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn matrix(&self, player: Player) -> &Matrix {
        match player {
            Player::Row => &self.a,
            Player::Column => &self.b,
        }
    }

    /// `(m, n)`: Alice's and Bob's strategy counts.
    pub fn shape(&self) -> (usize, usize) {
        self.a.shape()
    }

    pub fn strategy_count(&self, player: Player) -> usize {
        match player {
            Player::Row => self.a.rows(),
            Player::Column => self.a.cols(),
        }
    }

    /// True when every payoff lies in `[-1, 1]`.
    pub fn is_normalized(&self) -> bool {
        let lo = -Rational::one();
        let hi = Rational::one();
        self.a.entries().iter().chain(self.b.entries()).all(|v| *v >= lo && *v <= hi)
    }

    pub fn is_zero_sum(&self) -> bool {
        self.a.entries().iter().zip(self.b.entries()).all(|(x, y)| (x + y).is_zero())
    }

    fn check_dims(&self, x: &MixedStrategy, y: &MixedStrategy) -> Result<()> {
        let (m, n) = self.shape();
        if x.len() != m || y.len() != n {
            return Err(Error::input(format!(
                "strategies of length {} and {} do not fit a {}x{} game",
                x.len(),
                y.len(),
                m,
                n
            )));
        }
        Ok(())
    }

    /// `x^T A y` or `x^T B y`.
    pub fn expected_payoff(&self, x: &MixedStrategy, y: &MixedStrategy, player: Player) -> Result<Rational> {
        self.check_dims(x, y)?;
        Ok(self.matrix(player).bilinear(x.probs(), y.probs()))
    }

    /// Payoff of each pure strategy of `player` against the opponent's mix.
    pub fn pure_payoffs(&self, player: Player, opponent: &MixedStrategy) -> Result<Vec<Rational>> {
        let expected = self.strategy_count(player.other());
        if opponent.len() != expected {
            return Err(Error::input(format!(
                "opponent strategy has length {}, expected {}",
                opponent.len(),
                expected
            )));
        }
        Ok(match player {
            Player::Row => self.a.mul_vec(opponent.probs()),
            Player::Column => self.b.vec_mul(opponent.probs()),
        })
    }

    /// Best pure-response value and its lowest maximizing index.
    pub fn best_response_value(&self, player: Player, opponent: &MixedStrategy) -> Result<(Rational, usize)> {
        let payoffs = self.pure_payoffs(player, opponent)?;
        Ok(argmax_lowest(&payoffs))
    }

    /// Per-player affine map of payoffs onto `[-1, 1]` (minimum to -1,
    /// maximum to 1). A constant payoff matrix maps to all zeros.
    pub fn normalize_payoffs(&self) -> BimatrixGame {
        BimatrixGame {
            a: normalize_matrix(&self.a),
            b: normalize_matrix(&self.b),
        }
    }

    pub fn transpose(&self) -> BimatrixGame {
        BimatrixGame {
            a: self.b.transpose(),
            b: self.a.transpose(),
        }
    }

    pub fn to_normal_form(&self) -> NormalFormGame {
        let (m, n) = self.shape();
        NormalFormGame::from_fn(vec![m, n], |p| vec![self.a.get(p[0], p[1]).clone(), self.b.get(p[0], p[1]).clone()])
            .expect("two-player shape")
    }
}

pub(crate) fn argmax_lowest(values: &[Rational]) -> (Rational, usize) {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    (values[best].clone(), best)
}

fn normalize_matrix(m: &Matrix) -> Matrix {
    let lo = m.min_entry().cloned().unwrap_or_else(Rational::zero);
    let hi = m.max_entry().cloned().unwrap_or_else(Rational::zero);
    if lo == hi {
        return m.map(|v| v - &lo);
    }
    let span = &hi - &lo;
    let mid = &hi + &lo;
    m.map(|v| (Rational::from_integer(2) * v - &mid) / &span)
}
