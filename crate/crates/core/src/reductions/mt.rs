use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::cube::DiscretizedHypercube;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::games::{verify_epsilon_ne, BimatrixGame, MixedStrategy, VerificationQuery};
use crate::numeric::precision::{sqrt_floor, DYADIC_BITS};
use crate::numeric::{Matrix, Rational};

/// A function from grid points of `[0,1]^d` into `[0,1]^d`.
pub type GridMap = Arc<dyn Fn(&[Rational]) -> Vec<Rational> + Send + Sync>;

/// Alice picks `x`, Bob picks `z`, both points of the grid. Alice receives
/// `1 - |x - z|^2` and Bob `1 - |z - f(x)|^2` in the normalized squared norm.
#[derive(Clone)]
pub struct MtGame {
    pub game: BimatrixGame,
    pub cube: DiscretizedHypercube,
    pub points: Vec<Vec<Rational>>,
    f: GridMap,
}

impl std::fmt::Debug for MtGame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MtGame")
            .field("cube", &self.cube)
            .field("shape", &self.game.shape())
            .finish_non_exhaustive()
    }
}

impl MtGame {
    pub fn eval(&self, x: &[Rational]) -> Vec<Rational> {
        (self.f)(x)
    }
}

pub fn build_mt_game(f: GridMap, cube: &DiscretizedHypercube, budget: &Budget) -> Result<MtGame> {
    let size = cube.len();
    budget.check_outcomes("McLennan-Tourky profiles", size.saturating_mul(size))?;
    let points = cube.points();
    let images: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let v = f(p);
            if v.len() != cube.d || v.iter().any(|c| c.is_negative() || *c > Rational::one()) {
                return Err(Error::input("f must map grid points into [0,1]^d"));
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let n = points.len();
    let one = Rational::one();
    let a = Matrix::from_fn(n, n, |i, j| &one - cube.dist_sq(&points[i], &points[j]));
    let b = Matrix::from_fn(n, n, |i, j| &one - cube.dist_sq(&points[j], &images[i]));
    Ok(MtGame {
        game: BimatrixGame::new(a, b)?,
        cube: cube.clone(),
        points,
        f,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractedPoint {
    /// Alice's expected point before snapping.
    pub mean: Vec<Rational>,
    pub point: Vec<Rational>,
    pub image: Vec<Rational>,
    /// `|f(p) - p|^2`, normalized.
    pub residual_sq: Rational,
    /// Square root of `residual_sq`, rounded down to a `2^-64` multiple.
    pub residual: Rational,
}

/// Snaps the mean of Alice's strategy to the grid and measures how far it
/// is from being fixed.
pub fn extract_fixed_point(
    mt: &MtGame,
    x: &MixedStrategy,
    y: &MixedStrategy,
    epsilon: &Rational,
) -> Result<ExtractedPoint> {
    let report = verify_epsilon_ne(&mt.game, x, y, &VerificationQuery::new(epsilon.clone())?)?;
    if !report.holds {
        return Err(Error::input("strategies are not an epsilon-NE of the game"));
    }
    let d = mt.cube.d;
    let mut mean = vec![Rational::zero(); d];
    for (p, pt) in x.probs().iter().zip(&mt.points) {
        if p.is_zero() {
            continue;
        }
        for (m, c) in mean.iter_mut().zip(pt) {
            *m += p * c;
        }
    }
    let point: Vec<Rational> = mean.iter().map(|v| mt.cube.snap(v)).collect();
    let image = mt.eval(&point);
    let residual_sq = mt.cube.dist_sq(&image, &point);
    Ok(ExtractedPoint {
        residual: sqrt_floor(&residual_sq, DYADIC_BITS),
        mean,
        point,
        image,
        residual_sq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::nash::{pure_equilibria, support_enumeration};
    use crate::numeric::{int, rat};

    fn flip() -> GridMap {
        Arc::new(|x: &[Rational]| x.iter().map(|v| Rational::one() - v).collect())
    }

    #[test]
    fn one_dimensional_flip() {
        let cube = DiscretizedHypercube::new(1, rat(1, 4)).unwrap();
        let mt = build_mt_game(flip(), &cube, &Budget::default()).unwrap();
        assert_eq!(mt.game.shape(), (5, 5));
        // Brute-force pure best responses over all 25 profiles.
        let (a, b) = (mt.game.a(), mt.game.b());
        let mut pure = Vec::new();
        for i in 0..5 {
            for j in 0..5 {
                let row_ok = (0..5).all(|k| a.get(k, j) <= a.get(i, j));
                let col_ok = (0..5).all(|k| b.get(i, k) <= b.get(i, j));
                if row_ok && col_ok {
                    pure.push((i, j));
                }
            }
        }
        assert_eq!(pure, vec![(2, 2)]);
        assert_eq!(pure_equilibria(&mt.game), pure);
        for i in 0..5 {
            assert_eq!(*a.get(i, i), int(1));
            // Bob's payoff peaks at z = f(x).
            assert_eq!(*b.get(i, 4 - i), int(1));
        }
        let e = extract_fixed_point(&mt, &MixedStrategy::pure(5, 2), &MixedStrategy::pure(5, 2), &int(0)).unwrap();
        assert_eq!(e.point, vec![rat(1, 2)]);
        assert_eq!(e.residual, int(0));
    }

    #[test]
    fn every_equilibrium_is_a_pure_fixed_point() {
        for eps in [rat(1, 2), rat(1, 4)] {
            let cube = DiscretizedHypercube::new(1, eps).unwrap();
            let mt = build_mt_game(flip(), &cube, &Budget::default()).unwrap();
            let all = support_enumeration(&mt.game, None, &Budget::default()).unwrap();
            assert_eq!(all.len(), 1);
            let (x, y) = &all[0];
            let i = x.is_pure().unwrap();
            assert_eq!(y.is_pure(), Some(i));
            assert_eq!(mt.points[i], vec![rat(1, 2)]);
        }
    }

    #[test]
    fn payoffs_ignore_coordinate_order() {
        let cube = DiscretizedHypercube::new(2, rat(1, 2)).unwrap();
        let swap: GridMap = Arc::new(|x: &[Rational]| vec![x[1].clone(), x[0].clone()]);
        let mt = build_mt_game(swap, &cube, &Budget::default()).unwrap();
        let index = |p: &[Rational]| mt.points.iter().position(|q| q == p).unwrap();
        for (i, p) in mt.points.iter().enumerate() {
            for (j, q) in mt.points.iter().enumerate() {
                let (pi, qj) = (index(&[p[1].clone(), p[0].clone()]), index(&[q[1].clone(), q[0].clone()]));
                assert_eq!(mt.game.a().get(i, j), mt.game.a().get(pi, qj));
            }
        }
    }

    #[test]
    fn budget_and_range_checks() {
        let cube = DiscretizedHypercube::new(3, rat(1, 10)).unwrap();
        assert!(matches!(build_mt_game(flip(), &cube, &Budget::default()), Err(Error::Budget { .. })));
        let bad: GridMap = Arc::new(|x: &[Rational]| x.iter().map(|v| v + Rational::one()).collect());
        let small = DiscretizedHypercube::new(1, rat(1, 2)).unwrap();
        assert!(build_mt_game(bad, &small, &Budget::default()).is_err());
    }
}
