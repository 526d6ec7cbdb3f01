use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::sperner::{sperner_find, Cell, Color, LatticePoint, SpernerInstance};
use crate::error::{Error, Result};
use crate::numeric::{Matrix, Rational};

/// Residual bound `||f(p) - p||_inf <= K * eps` at the returned point.
///
/// With `N >= max(lambda, 1) / eps`, every coordinate of `f(p) - p` at a
/// cell center is below `(lambda + 1) * 2/(3N)`, and they sum to zero, so the
/// residual is at most `(4/3)(lambda + 1)/N <= (8/3) eps`.
pub const RESIDUAL_CONSTANT: i64 = 3;

type Map = dyn Fn(&[Rational; 3]) -> [Rational; 3] + Send + Sync;

/// A map from the 2-simplex to itself with a Lipschitz constant in the
/// max-norm.
#[derive(Clone)]
pub struct BrouwerFunction {
    pub name: String,
    pub lambda: Rational,
    map: Arc<Map>,
}

impl std::fmt::Debug for BrouwerFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BrouwerFunction")
            .field("name", &self.name)
            .field("lambda", &self.lambda)
            .finish_non_exhaustive()
    }
}

fn on_simplex(p: &[Rational; 3]) -> bool {
    p.iter().all(|c| !c.is_negative()) && p.iter().sum::<Rational>().is_one()
}

impl BrouwerFunction {
    pub fn new(
        name: impl Into<String>,
        lambda: Rational,
        map: impl Fn(&[Rational; 3]) -> [Rational; 3] + Send + Sync + 'static,
    ) -> Result<Self> {
        if lambda.is_negative() {
            return Err(Error::input("Lipschitz constant must be nonnegative"));
        }
        Ok(BrouwerFunction {
            name: name.into(),
            lambda,
            map: Arc::new(map),
        })
    }

    pub fn identity() -> Self {
        BrouwerFunction::new("identity", Rational::one(), |p| p.clone()).expect("valid")
    }

    pub fn constant(c: [Rational; 3]) -> Result<Self> {
        if !on_simplex(&c) {
            return Err(Error::input("constant image must lie on the simplex"));
        }
        BrouwerFunction::new("constant", Rational::zero(), move |_| c.clone())
    }

    pub fn centroid() -> Self {
        let third = Rational::new(1, 3);
        BrouwerFunction::constant([third.clone(), third.clone(), third]).expect("valid")
    }

    /// `p -> M p` for a column-stochastic `M`; `lambda` is the max-norm
    /// operator norm (largest absolute row sum).
    pub fn affine(m: Matrix) -> Result<Self> {
        if m.shape() != (3, 3) {
            return Err(Error::input("affine map needs a 3x3 matrix"));
        }
        for j in 0..3 {
            let col: Vec<Rational> = (0..3).map(|i| m.get(i, j).clone()).collect();
            if col.iter().any(|v| v.is_negative()) || !col.iter().sum::<Rational>().is_one() {
                return Err(Error::input("affine map matrix must be column-stochastic"));
            }
        }
        let lambda = (0..3)
            .map(|i| (0..3).map(|j| m.get(i, j).abs()).sum::<Rational>())
            .max()
            .expect("three rows");
        BrouwerFunction::new("affine", lambda, move |p| {
            let v = m.mul_vec(p);
            [v[0].clone(), v[1].clone(), v[2].clone()]
        })
    }

    /// Evaluates and checks that both point and image lie on the simplex.
    pub fn eval(&self, p: &[Rational; 3]) -> Result<[Rational; 3]> {
        if !on_simplex(p) {
            return Err(Error::input("point is not on the simplex"));
        }
        let image = (self.map)(p);
        if !on_simplex(&image) {
            return Err(Error::input(format!("{} maps a point off the simplex", self.name)));
        }
        Ok(image)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub epsilon: Rational,
    pub n: usize,
}

impl GridSpec {
    /// `N = ceil(max(lambda, 1) / eps)`.
    pub fn for_function(f: &BrouwerFunction, epsilon: Rational) -> Result<Self> {
        if !epsilon.is_positive() {
            return Err(Error::input("epsilon must be positive"));
        }
        let scale = f.lambda.clone().max(Rational::one());
        let n = (scale / &epsilon)
            .ceil()
            .try_into()
            .map_err(|_| Error::input("grid too fine"))?;
        Ok(GridSpec { epsilon, n })
    }

    /// Same accuracy target with twice the subdivision.
    pub fn doubled(&self) -> Self {
        GridSpec {
            epsilon: self.epsilon.clone(),
            n: 2 * self.n,
        }
    }
}

fn barycentric(n: usize, (a, b): LatticePoint) -> [Rational; 3] {
    let n64 = n as i64;
    [
        Rational::new(a as i64, n64),
        Rational::new(b as i64, n64),
        Rational::new((n - a - b) as i64, n64),
    ]
}

#[derive(Clone, Debug)]
pub enum ColoringOutcome {
    Coloring(SpernerInstance),
    /// A lattice point where no coordinate decreases, hence `f(p) = p`.
    FixedPoint([Rational; 3]),
}

/// Colors each lattice point by the lowest coordinate that strictly
/// decreases under `f`.
pub fn coloring_from_function(f: &BrouwerFunction, grid: &GridSpec) -> Result<ColoringOutcome> {
    let n = grid.n;
    if n == 0 {
        return Err(Error::input("grid subdivision must be positive"));
    }
    let mut colors = Vec::with_capacity((n + 1) * (n + 2) / 2);
    for b in 0..=n {
        for a in 0..=n - b {
            let p = barycentric(n, (a, b));
            let image = f.eval(&p)?;
            match (0..3).find(|&k| image[k] < p[k]) {
                Some(k) => colors.push(Color::of_coordinate(k)),
                None => return Ok(ColoringOutcome::FixedPoint(p)),
            }
        }
    }
    Ok(ColoringOutcome::Coloring(SpernerInstance::new(n, colors)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrouwerResult {
    pub point: [Rational; 3],
    pub image: [Rational; 3],
    /// `||f(p) - p||_inf`.
    pub residual: Rational,
    pub exact: bool,
    pub cell: Option<Cell>,
    pub n: usize,
}

fn residual(p: &[Rational; 3], q: &[Rational; 3]) -> Rational {
    (0..3).map(|k| (&q[k] - &p[k]).abs()).max().expect("three coordinates")
}

/// Center of the trichromatic cell found by path following, or an exact
/// fixed point met while coloring.
pub fn brouwer_fixed_point(f: &BrouwerFunction, grid: &GridSpec) -> Result<BrouwerResult> {
    match coloring_from_function(f, grid)? {
        ColoringOutcome::FixedPoint(point) => {
            let image = f.eval(&point)?;
            Ok(BrouwerResult {
                residual: residual(&point, &image),
                point,
                image,
                exact: true,
                cell: None,
                n: grid.n,
            })
        }
        ColoringOutcome::Coloring(inst) => {
            let path = sperner_find(&inst)?;
            let corners: Vec<[Rational; 3]> = path.cell.vertices.iter().map(|&v| barycentric(grid.n, v)).collect();
            let third = Rational::new(1, 3);
            let point: [Rational; 3] =
                std::array::from_fn(|k| corners.iter().map(|c| &c[k]).sum::<Rational>() * &third);
            let image = f.eval(&point)?;
            let r = residual(&point, &image);
            Ok(BrouwerResult {
                exact: r.is_zero(),
                residual: r,
                point,
                image,
                cell: Some(path.cell),
                n: grid.n,
            })
        }
    }
}
