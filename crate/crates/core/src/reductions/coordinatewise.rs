use super::cube::{DiscretizedHypercube, SeparableFunction};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::games::BimatrixGame;
use crate::numeric::{Matrix, Rational};

/// Each player names one coordinate and a grid value for it. Payoffs are
/// zero unless the coordinates agree; then Alice gets `1 - (x_i - y_i)^2`
/// and Bob `1 - (y_i - f_i(x_i))^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinatewiseGame {
    pub game: BimatrixGame,
    /// Strategy `k` is `(coordinate, value)`; the same list serves both players.
    pub strategies: Vec<(usize, Rational)>,
}

impl CoordinatewiseGame {
    pub fn index_of(&self, coordinate: usize, value: &Rational) -> Option<usize> {
        self.strategies.iter().position(|(i, v)| *i == coordinate && v == value)
    }
}

pub(crate) fn coordinate_payoffs(f: &SeparableFunction, (i, x): &(usize, Rational), (j, y): &(usize, Rational)) -> (Rational, Rational) {
    if i != j {
        return (Rational::zero(), Rational::zero());
    }
    let fx = f.coordinate(*i, x);
    (Rational::one() - (x - y) * (x - y), Rational::one() - (y - &fx) * (y - &fx))
}

pub(crate) fn coordinate_strategies(d: usize, cube: &DiscretizedHypercube) -> Vec<(usize, Rational)> {
    let values = cube.values();
    (0..d).flat_map(|i| values.iter().map(move |v| (i, v.clone()))).collect()
}

pub fn build_coordinatewise_game(
    f: &SeparableFunction,
    cube: &DiscretizedHypercube,
    budget: &Budget,
) -> Result<CoordinatewiseGame> {
    if f.dim() != cube.d {
        return Err(Error::input("function and grid dimensions differ"));
    }
    let strategies = coordinate_strategies(cube.d, cube);
    let n = strategies.len();
    budget.check_outcomes("coordinatewise profiles", (n as u128) * (n as u128))?;
    let mut a = Matrix::zeros(n, n);
    let mut b = Matrix::zeros(n, n);
    for (r, s) in strategies.iter().enumerate() {
        for (c, t) in strategies.iter().enumerate() {
            let (ua, ub) = coordinate_payoffs(f, s, t);
            a.set(r, c, ua);
            b.set(r, c, ub);
        }
    }
    Ok(CoordinatewiseGame {
        game: BimatrixGame::new(a, b)?,
        strategies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{verify_epsilon_ne, MixedStrategy, VerificationQuery};
    use crate::numeric::{int, rat};
    use crate::reductions::PiecewiseLinear;

    fn setup() -> (SeparableFunction, CoordinatewiseGame) {
        // f_1(x) = 1 - x fixes 1/2; f_2 = 1/4 constant.
        let f = SeparableFunction::new(vec![
            PiecewiseLinear::new(vec![(int(0), int(1)), (int(1), int(0))]).unwrap(),
            PiecewiseLinear::constant(rat(1, 4)).unwrap(),
        ])
        .unwrap();
        let cube = DiscretizedHypercube::new(2, rat(1, 4)).unwrap();
        let g = build_coordinatewise_game(&f, &cube, &Budget::default()).unwrap();
        (f, g)
    }

    #[test]
    fn intended_equilibrium() {
        let (_, g) = setup();
        let n = g.strategies.len();
        assert_eq!(n, 10);
        let picks = [g.index_of(0, &rat(1, 2)).unwrap(), g.index_of(1, &rat(1, 4)).unwrap()];
        let s = MixedStrategy::from_multiset(n, &picks).unwrap();
        assert!(verify_epsilon_ne(&g.game, &s, &s, &VerificationQuery::exact()).unwrap().holds);
    }

    #[test]
    fn unintended_pure_equilibrium() {
        let (_, g) = setup();
        let n = g.strategies.len();
        let k = g.index_of(1, &rat(1, 4)).unwrap();
        let p = MixedStrategy::pure(n, k);
        assert!(verify_epsilon_ne(&g.game, &p, &p, &VerificationQuery::exact()).unwrap().holds);
    }

    #[test]
    fn different_coordinates_pay_nothing() {
        let (_, g) = setup();
        for (r, s) in g.strategies.iter().enumerate() {
            for (c, t) in g.strategies.iter().enumerate() {
                if s.0 != t.0 {
                    assert!(g.game.a().get(r, c).is_zero() && g.game.b().get(r, c).is_zero());
                }
            }
        }
    }
}
