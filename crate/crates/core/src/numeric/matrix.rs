use serde::{Deserialize, Serialize};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::Rational;
use crate::error::{Error, Result};

/// Common denominator of `v` and the numerators over it. Products and sums
/// then run on integers with a single reduction at the end.
pub fn scale_to_integers(v: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let mut den = BigInt::from(1);
    for x in v {
        let d = x.denom();
        if !(&den % d).is_zero() {
            den = den.lcm(d);
        }
    }
    let nums = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    (den, nums)
}

/// Exact inner product.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "vector lengths must match");
    let (ad, an) = scale_to_integers(a);
    let (bd, bn) = scale_to_integers(b);
    let s: BigInt = an.iter().zip(&bn).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum();
    Rational::from_bigints(s, ad * bd)
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::input(format!(
                "matrix of shape {}x{} needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::input("ragged matrix rows"));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer fixture helper.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|row| row.iter().map(|&v| Rational::from_integer(v)).collect())
            .collect();
        Matrix::from_rows(data).expect("rectangular fixture")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Matrix {
        self.map(|v| -v)
    }

    /// `M v` for a column vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length must match columns");
        let (md, mn) = scale_to_integers(&self.entries);
        let (vd, vn) = scale_to_integers(v);
        let den = &md * &vd;
        (0..self.rows)
            .map(|i| {
                let row = &mn[i * self.cols..(i + 1) * self.cols];
                let s: BigInt = row.iter().zip(&vn).filter(|(_, b)| !b.is_zero()).map(|(a, b)| a * b).sum();
                Rational::from_bigints(s, den.clone())
            })
            .collect()
    }

    /// `v^T M` for a row vector `v` of length `rows`.
    pub fn vec_mul(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.rows, "vector length must match rows");
        let (md, mn) = scale_to_integers(&self.entries);
        let (vd, vn) = scale_to_integers(v);
        let den = &md * &vd;
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, vi) in vn.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(&mn[i * self.cols..(i + 1) * self.cols]) {
                *o += a * vi;
            }
        }
        out.into_iter().map(|s| Rational::from_bigints(s, den.clone())).collect()
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        dot(x, &self.mul_vec(y))
    }

    pub fn min_entry(&self) -> Option<&Rational> {
        self.entries.iter().min()
    }

    pub fn max_entry(&self) -> Option<&Rational> {
        self.entries.iter().max()
    }
}

/// Solves the square system `m x = b` exactly by Gaussian elimination.
/// Returns `None` when `m` is singular.
pub fn solve_square(m: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = b.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let (src, dst) = if r < col {
                    let (lo, hi) = a.split_at_mut(col);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&lo[col], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &factor * s;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}
