//! Exhaustive Nash equilibrium search for small bimatrix games.
//!
//! Support enumeration solves one exact LP per pair of supports and reports
//! an equilibrium whose supports are exactly that pair when one exists.

use super::{BimatrixGame, MixedStrategy};
use crate::budget::Budget;
use crate::error::Result;
use crate::numeric::{lp_solve, LinearProgram, Rational, Relation, Sense};

/// Pure profiles `(i, j)` where neither player can gain by deviating.
pub fn pure_equilibria(game: &BimatrixGame) -> Vec<(usize, usize)> {
    let (m, n) = game.shape();
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let a = game.a().get(i, j);
            let b = game.b().get(i, j);
            let row_ok = (0..m).all(|k| game.a().get(k, j) <= a);
            let col_ok = (0..n).all(|k| game.b().get(i, k) <= b);
            if row_ok && col_ok {
                out.push((i, j));
            }
        }
    }
    out
}

/// Finds an equilibrium whose supports are exactly `rows` and `cols`.
pub fn equilibrium_on_supports(game: &BimatrixGame, rows: &[usize], cols: &[usize]) -> Option<(MixedStrategy, MixedStrategy)> {
    let (m, n) = game.shape();
    let (ki, kj) = (rows.len(), cols.len());
    // Variables: x over rows, y over cols, u, v (free), t.
    let nv = ki + kj + 3;
    let (u, v, t) = (ki + kj, ki + kj + 1, ki + kj + 2);
    let mut obj = vec![Rational::zero(); nv];
    obj[t] = Rational::one();
    let mut lp = LinearProgram::new(Sense::Maximize, obj);
    lp.set_free(u);
    lp.set_free(v);
    lp.set_free(t);

    let mut row = vec![Rational::zero(); nv];
    for c in row.iter_mut().take(ki) {
        *c = Rational::one();
    }
    lp.add_constraint(row, Relation::Eq, Rational::one());
    let mut row = vec![Rational::zero(); nv];
    for c in row.iter_mut().skip(ki).take(kj) {
        *c = Rational::one();
    }
    lp.add_constraint(row, Relation::Eq, Rational::one());

    for i in 0..m {
        let mut row = vec![Rational::zero(); nv];
        for (pos, &j) in cols.iter().enumerate() {
            row[ki + pos] = game.a().get(i, j).clone();
        }
        row[u] = -Rational::one();
        let rel = if rows.contains(&i) { Relation::Eq } else { Relation::Le };
        lp.add_constraint(row, rel, Rational::zero());
    }
    for j in 0..n {
        let mut row = vec![Rational::zero(); nv];
        for (pos, &i) in rows.iter().enumerate() {
            row[pos] = game.b().get(i, j).clone();
        }
        row[v] = -Rational::one();
        let rel = if cols.contains(&j) { Relation::Eq } else { Relation::Le };
        lp.add_constraint(row, rel, Rational::zero());
    }
    for p in 0..ki + kj {
        let mut row = vec![Rational::zero(); nv];
        row[t] = Rational::one();
        row[p] = -Rational::one();
        lp.add_constraint(row, Relation::Le, Rational::zero());
    }
    let sol = lp_solve(&lp).ok()?;
    if !sol.is_optimal() || !sol.objective.is_positive() {
        return None;
    }
    let mut x = vec![Rational::zero(); m];
    for (pos, &i) in rows.iter().enumerate() {
        x[i] = sol.point[pos].clone();
    }
    let mut y = vec![Rational::zero(); n];
    for (pos, &j) in cols.iter().enumerate() {
        y[j] = sol.point[ki + pos].clone();
    }
    Some((MixedStrategy::new(x).ok()?, MixedStrategy::new(y).ok()?))
}

/// Nonempty subsets of `0..n` with at most `max` elements, ordered by size
/// and then lexicographically.
pub fn subsets_by_size(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=max.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.clone());
            let mut k = size;
            let mut advanced = false;
            while k > 0 {
                k -= 1;
                if idx[k] < n - size + k {
                    idx[k] += 1;
                    for t in k + 1..size {
                        idx[t] = idx[t - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    out
}

/// One equilibrium per support pair that admits one, for supports of size
/// at most `max_support` (all sizes when `None`).
pub fn support_enumeration(
    game: &BimatrixGame,
    max_support: Option<usize>,
    budget: &Budget,
) -> Result<Vec<(MixedStrategy, MixedStrategy)>> {
    let (m, n) = game.shape();
    let rows = subsets_by_size(m, max_support.unwrap_or(m));
    let cols = subsets_by_size(n, max_support.unwrap_or(n));
    budget.check_outcomes("support pairs", (rows.len() as u128) * (cols.len() as u128))?;
    let mut out = Vec::new();
    for r in &rows {
        for c in &cols {
            if let Some(eq) = equilibrium_on_supports(game, r, c) {
                out.push(eq);
            }
        }
    }
    Ok(out)
}
