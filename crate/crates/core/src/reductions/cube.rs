use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Points of `[0,1]^d` whose coordinates are multiples of `eps`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscretizedHypercube {
    pub d: usize,
    pub epsilon: Rational,
}

impl DiscretizedHypercube {
    pub fn new(d: usize, epsilon: Rational) -> Result<Self> {
        if d == 0 {
            return Err(Error::input("dimension must be positive"));
        }
        if !epsilon.is_positive() || epsilon > Rational::one() {
            return Err(Error::input("resolution must lie in (0, 1]"));
        }
        Ok(DiscretizedHypercube { d, epsilon })
    }

    /// `0, eps, 2 eps, ..., floor(1/eps) eps`.
    pub fn values(&self) -> Vec<Rational> {
        let steps = self.epsilon.recip().floor();
        let steps: usize = steps.try_into().expect("grid resolution fits in usize");
        (0..=steps).map(|k| Rational::from(k) * &self.epsilon).collect()
    }

    pub fn values_per_axis(&self) -> usize {
        self.values().len()
    }

    /// `(floor(1/eps) + 1)^d`, saturating.
    pub fn len(&self) -> u128 {
        (self.values_per_axis() as u128).saturating_pow(self.d as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All points with the last coordinate varying fastest.
    pub fn points(&self) -> Vec<Vec<Rational>> {
        let values = self.values();
        let k = values.len();
        let total = k.pow(self.d as u32);
        (0..total)
            .map(|mut idx| {
                let mut p = vec![Rational::zero(); self.d];
                for slot in p.iter_mut().rev() {
                    *slot = values[idx % k].clone();
                    idx /= k;
                }
                p
            })
            .collect()
    }

    /// Nearest grid value, ties toward the lower one; inputs are clamped to
    /// `[0, 1]` first.
    pub fn snap(&self, v: &Rational) -> Rational {
        let values = self.values();
        let clamped = v.clone().max(Rational::zero()).min(Rational::one());
        let mut best = values[0].clone();
        for w in &values[1..] {
            if (w - &clamped).abs() < (&best - &clamped).abs() {
                best = w.clone();
            }
        }
        best
    }

    /// Normalized squared distance `(1/d) sum (p_i - q_i)^2`.
    pub fn dist_sq(&self, p: &[Rational], q: &[Rational]) -> Rational {
        let s: Rational = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
        s / Rational::from(self.d)
    }
}

/// Piecewise-linear map of `[0, 1]` into itself through the given
/// breakpoints; the first must be at 0 and the last at 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseLinear {
    pub points: Vec<(Rational, Rational)>,
}

impl PiecewiseLinear {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        let f = PiecewiseLinear { points };
        f.validate()?;
        Ok(f)
    }

    pub fn constant(c: Rational) -> Result<Self> {
        PiecewiseLinear::new(vec![(Rational::zero(), c.clone()), (Rational::one(), c)])
    }

    pub fn validate(&self) -> Result<()> {
        let pts = &self.points;
        if pts.len() < 2 || !pts[0].0.is_zero() || !pts[pts.len() - 1].0.is_one() {
            return Err(Error::input("breakpoints must start at 0 and end at 1"));
        }
        if pts.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::input("breakpoints must be strictly increasing"));
        }
        if pts.iter().any(|(_, y)| y.is_negative() || *y > Rational::one()) {
            return Err(Error::input("function values must lie in [0, 1]"));
        }
        Ok(())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let pts = &self.points;
        let k = pts.partition_point(|(bx, _)| bx <= x).clamp(1, pts.len() - 1);
        let (x0, y0) = &pts[k - 1];
        let (x1, y1) = &pts[k];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

/// `f(x) = (f_1(x_1), ..., f_d(x_d))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparableFunction {
    pub coordinates: Vec<PiecewiseLinear>,
}

impl SeparableFunction {
    pub fn new(coordinates: Vec<PiecewiseLinear>) -> Result<Self> {
        if coordinates.is_empty() {
            return Err(Error::input("a separable function needs at least one coordinate"));
        }
        for c in &coordinates {
            c.validate()?;
        }
        Ok(SeparableFunction { coordinates })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: SeparableFunction =
            serde_json::from_str(text).map_err(|e| Error::input(format!("bad function spec: {}", e)))?;
        SeparableFunction::new(f.coordinates)
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn coordinate(&self, i: usize, x: &Rational) -> Rational {
        self.coordinates[i].eval(x)
    }

    pub fn eval(&self, x: &[Rational]) -> Vec<Rational> {
        self.coordinates.iter().zip(x).map(|(f, v)| f.eval(v)).collect()
    }
}
