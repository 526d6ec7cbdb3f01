use serde::{Deserialize, Serialize};

use super::althofer::althofer_subsets;
use super::coordinatewise::{coordinate_payoffs, coordinate_strategies};
use super::cube::{DiscretizedHypercube, SeparableFunction};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::games::BimatrixGame;
use crate::numeric::{Matrix, Rational};

/// Weights of coordinatewise play, Althöfer with Alice choosing the index,
/// and Althöfer with Bob choosing the index.
pub const GLUE_WEIGHTS: [(i64, i64); 3] = [(1, 100), (99, 200), (99, 200)];

/// A coordinate, a grid value for it, and a subset of size `d/2` (an index
/// into [`GluedGame::subsets`]).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluedStrategy {
    pub coordinate: usize,
    pub value: Rational,
    pub subset: usize,
}

/// Alice and Bob play coordinatewise play and both Althöfer games at once;
/// payoffs are the weighted sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedGame {
    pub game: BimatrixGame,
    pub subsets: Vec<Vec<usize>>,
    /// Shared by both players.
    pub strategies: Vec<GluedStrategy>,
    pub function: SeparableFunction,
}

impl GluedGame {
    /// Payoff pairs in the three component games, in weight order.
    pub fn component_payoffs(&self, alice: &GluedStrategy, bob: &GluedStrategy) -> [(Rational, Rational); 3] {
        let g1 = coordinate_payoffs(
            &self.function,
            &(alice.coordinate, alice.value.clone()),
            &(bob.coordinate, bob.value.clone()),
        );
        let alice_wins = self.subsets[bob.subset].contains(&alice.coordinate);
        let g2 = signed_pair(alice_wins);
        let bob_wins = self.subsets[alice.subset].contains(&bob.coordinate);
        let g3 = signed_pair(!bob_wins);
        [g1, g2, g3]
    }

    /// Distribution over coordinates induced by a mixed strategy.
    pub fn coordinate_marginal(&self, probs: &[Rational]) -> Vec<Rational> {
        let d = self.function.dim();
        let mut out = vec![Rational::zero(); d];
        for (p, s) in probs.iter().zip(&self.strategies) {
            out[s.coordinate] += p;
        }
        out
    }
}

fn signed_pair(alice_wins: bool) -> (Rational, Rational) {
    if alice_wins {
        (Rational::one(), -Rational::one())
    } else {
        (-Rational::one(), Rational::one())
    }
}

pub fn build_glued_game(f: &SeparableFunction, cube: &DiscretizedHypercube, budget: &Budget) -> Result<GluedGame> {
    let d = f.dim();
    if d != cube.d {
        return Err(Error::input("function and grid dimensions differ"));
    }
    if d % 2 != 0 {
        return Err(Error::input("the glued game needs an even dimension"));
    }
    let subsets = althofer_subsets(d);
    let strategies: Vec<GluedStrategy> = coordinate_strategies(d, cube)
        .into_iter()
        .flat_map(|(coordinate, value)| {
            (0..subsets.len()).map(move |subset| GluedStrategy {
                coordinate,
                value: value.clone(),
                subset,
            })
        })
        .collect();
    let n = strategies.len();
    budget.check_outcomes("glued-game profiles", (n as u128).saturating_mul(n as u128))?;
    let weights: Vec<Rational> = GLUE_WEIGHTS.iter().map(|&(p, q)| Rational::new(p, q)).collect();
    let mut glued = GluedGame {
        game: BimatrixGame::new(Matrix::zeros(1, 1), Matrix::zeros(1, 1))?,
        subsets,
        strategies,
        function: f.clone(),
    };
    let mut a = Matrix::zeros(n, n);
    let mut b = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let parts = glued.component_payoffs(&glued.strategies[r], &glued.strategies[c]);
            let ua: Rational = parts.iter().zip(&weights).map(|((u, _), w)| u * w).sum();
            let ub: Rational = parts.iter().zip(&weights).map(|((_, u), w)| u * w).sum();
            a.set(r, c, ua);
            b.set(r, c, ub);
        }
    }
    glued.game = BimatrixGame::new(a, b)?;
    Ok(glued)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use crate::reductions::PiecewiseLinear;

    #[test]
    fn shape_and_parity() {
        let f = SeparableFunction::new(vec![PiecewiseLinear::constant(rat(1, 2)).unwrap(); 2]).unwrap();
        let cube = DiscretizedHypercube::new(2, rat(1, 2)).unwrap();
        let g = build_glued_game(&f, &cube, &Budget::default()).unwrap();
        assert_eq!(g.game.shape(), (12, 12));
        let odd = SeparableFunction::new(vec![PiecewiseLinear::constant(rat(1, 2)).unwrap(); 3]).unwrap();
        let cube3 = DiscretizedHypercube::new(3, rat(1, 2)).unwrap();
        assert!(build_glued_game(&odd, &cube3, &Budget::default()).is_err());
    }

    #[test]
    fn althofer_parts_are_zero_sum() {
        let f = SeparableFunction::new(vec![PiecewiseLinear::constant(int(1)).unwrap(); 4]).unwrap();
        let cube = DiscretizedHypercube::new(4, int(1)).unwrap();
        let g = build_glued_game(&f, &cube, &Budget::default()).unwrap();
        for s in &g.strategies {
            for t in &g.strategies {
                let parts = g.component_payoffs(s, t);
                assert_eq!(&parts[1].0 + &parts[1].1, int(0));
                assert_eq!(&parts[2].0 + &parts[2].1, int(0));
            }
        }
    }
}
