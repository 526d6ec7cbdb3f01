//! Dense two-phase simplex over exact rationals.
//!
//! Pivoting uses Bland's rule (lowest-index entering column, lowest-index
//! leaving basic variable on ratio ties), so every solve is deterministic and
//! cannot cycle. Dual values are read off the columns that formed the initial
//! identity basis, which always hold `B^-1`.

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(x)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, v)| a * v)
            .sum()
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

/// Per-variable bounds; `None` means unbounded in that direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarBounds {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl VarBounds {
    pub fn nonnegative() -> Self {
        VarBounds {
            lower: Some(Rational::zero()),
            upper: None,
        }
    }

    pub fn free() -> Self {
        VarBounds {
            lower: None,
            upper: None,
        }
    }

    fn contains(&self, v: &Rational) -> bool {
        self.lower.as_ref().is_none_or(|l| v >= l) && self.upper.as_ref().is_none_or(|u| v <= u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    /// One entry per variable. Variables default to `x >= 0`.
    pub bounds: Vec<VarBounds>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
            bounds: vec![VarBounds::nonnegative(); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn set_bounds(&mut self, var: usize, lower: Option<Rational>, upper: Option<Rational>) -> &mut Self {
        self.bounds[var] = VarBounds { lower, upper };
        self
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.bounds[var] = VarBounds::free();
        self
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && self.bounds.iter().zip(x).all(|(b, v)| b.contains(v))
            && self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::input(format!(
                "LP has {} variables but {} bound entries",
                n,
                self.bounds.len()
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::input(format!(
                    "constraint {} has {} coefficients, expected {}",
                    i,
                    c.coeffs.len(),
                    n
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    pub point: Vec<Rational>,
    pub objective: Rational,
    /// Shadow price of each constraint: the rate of change of the optimum
    /// as that constraint's right-hand side grows.
    pub duals: Vec<Rational>,
    /// `c_j - a_j^T y` per variable; nonzero only at an active bound.
    pub reduced_costs: Vec<Rational>,
}

impl LpSolution {
    fn non_optimal(status: LpStatus) -> Self {
        LpSolution {
            status,
            point: Vec::new(),
            objective: Rational::zero(),
            duals: Vec::new(),
            reduced_costs: Vec::new(),
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Value of the dual objective `b^T y` plus bound contributions of the
    /// reduced costs.
    pub fn dual_objective(&self, lp: &LinearProgram) -> Rational {
        let mut total: Rational = lp.constraints.iter().zip(&self.duals).map(|(c, y)| &c.rhs * y).sum();
        for (j, d) in self.reduced_costs.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            // Certification guarantees the variable sits at the matching bound.
            total += d * &self.point[j];
        }
        total
    }

    /// Checks primal feasibility, dual sign conditions, complementary
    /// slackness and equality of the two objectives, all exactly.
    pub fn certify(&self, lp: &LinearProgram) -> std::result::Result<(), String> {
        if self.status != LpStatus::Optimal {
            return Err(format!("status is {:?}", self.status));
        }
        let n = lp.num_vars();
        if self.point.len() != n || self.reduced_costs.len() != n || self.duals.len() != lp.constraints.len() {
            return Err("solution dimensions do not match the program".into());
        }
        if !lp.is_feasible(&self.point) {
            return Err("point is not primal feasible".into());
        }
        if lp.objective_value(&self.point) != self.objective {
            return Err("reported objective does not match the point".into());
        }
        let max = lp.sense == Sense::Maximize;
        for (i, (c, y)) in lp.constraints.iter().zip(&self.duals).enumerate() {
            let sign_ok = match (c.relation, max) {
                (Relation::Eq, _) => true,
                (Relation::Le, true) | (Relation::Ge, false) => !y.is_negative(),
                (Relation::Ge, true) | (Relation::Le, false) => !y.is_positive(),
            };
            if !sign_ok {
                return Err(format!("dual {} has the wrong sign", i));
            }
            if !y.is_zero() && c.lhs(&self.point) != c.rhs {
                return Err(format!("complementary slackness fails on constraint {}", i));
            }
        }
        for j in 0..n {
            let expected: Rational = &lp.objective[j]
                - lp.constraints
                    .iter()
                    .zip(&self.duals)
                    .map(|(c, y)| &c.coeffs[j] * y)
                    .sum::<Rational>();
            if expected != self.reduced_costs[j] {
                return Err(format!("reduced cost {} inconsistent with duals", j));
            }
            let d = &self.reduced_costs[j];
            if d.is_zero() {
                continue;
            }
            let b = &lp.bounds[j];
            let at_lower = b.lower.as_ref() == Some(&self.point[j]);
            let at_upper = b.upper.as_ref() == Some(&self.point[j]);
            let ok = if d.is_positive() == max { at_upper } else { at_lower };
            if !ok {
                return Err(format!("reduced cost {} nonzero away from its bound", j));
            }
        }
        if self.dual_objective(lp) != self.objective {
            return Err("primal and dual objectives differ".into());
        }
        Ok(())
    }
}

enum ColMap {
    /// `x = lower + col`
    Shift { col: usize, lower: Rational },
    /// `x = upper - col`
    Mirror { col: usize, upper: Rational },
    /// `x = pos - neg`
    Split { pos: usize, neg: usize },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    reduced: Vec<Rational>,
    value: Rational,
}

impl Tableau {
    fn price(&mut self, cost: &[Rational]) {
        let ncols = cost.len();
        let mut reduced = cost.to_vec();
        let mut value = Rational::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, d) in reduced.iter_mut().enumerate().take(ncols) {
                let t = &self.rows[r][j];
                if !t.is_zero() {
                    *d -= cb * t;
                }
            }
            value += cb * &self.rhs[r];
        }
        self.reduced = reduced;
        self.value = value;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let pivot_rhs = self.rhs[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
            self.rhs[k] -= &factor * &pivot_rhs;
        }
        let dc = self.reduced[c].clone();
        if !dc.is_zero() {
            for (d, p) in self.reduced.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *d -= &dc * p;
                }
            }
            self.value += &dc * &pivot_rhs;
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Maximizes the priced objective. Returns false when unbounded.
    fn run(&mut self, allowed: impl Fn(usize) -> bool) -> bool {
        loop {
            let entering = (0..self.reduced.len()).find(|&j| allowed(j) && self.reduced[j].is_positive());
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }
}

/// Solves `lp` exactly. Deterministic for a given input.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    let n = lp.num_vars();

    // Map every original variable onto nonnegative structural columns.
    let mut maps = Vec::with_capacity(n);
    let mut ns = 0usize;
    let mut upper_rows: Vec<(usize, Rational)> = Vec::new();
    for b in &lp.bounds {
        match (&b.lower, &b.upper) {
            (Some(l), u) => {
                if let Some(u) = u {
                    upper_rows.push((ns, u - l));
                }
                maps.push(ColMap::Shift { col: ns, lower: l.clone() });
                ns += 1;
            }
            (None, Some(u)) => {
                maps.push(ColMap::Mirror { col: ns, upper: u.clone() });
                ns += 1;
            }
            (None, None) => {
                maps.push(ColMap::Split { pos: ns, neg: ns + 1 });
                ns += 2;
            }
        }
    }

    // Standard-form rows: (coeffs over structural columns, relation, rhs).
    let mut std_rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::new();
    for c in &lp.constraints {
        let mut coeffs = vec![Rational::zero(); ns];
        let mut rhs = c.rhs.clone();
        for (j, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match &maps[j] {
                ColMap::Shift { col, lower } => {
                    coeffs[*col] += a;
                    rhs -= a * lower;
                }
                ColMap::Mirror { col, upper } => {
                    coeffs[*col] -= a;
                    rhs -= a * upper;
                }
                ColMap::Split { pos, neg } => {
                    coeffs[*pos] += a;
                    coeffs[*neg] -= a;
                }
            }
        }
        std_rows.push((coeffs, c.relation, rhs));
    }
    for (col, cap) in &upper_rows {
        let mut coeffs = vec![Rational::zero(); ns];
        coeffs[*col] = Rational::one();
        std_rows.push((coeffs, Relation::Le, cap.clone()));
    }

    let mut cost = vec![Rational::zero(); ns];
    let flip_objective = lp.sense == Sense::Minimize;
    for (j, cj) in lp.objective.iter().enumerate() {
        let cj = if flip_objective { -cj } else { cj.clone() };
        match &maps[j] {
            ColMap::Shift { col, .. } => cost[*col] += &cj,
            ColMap::Mirror { col, .. } => cost[*col] -= &cj,
            ColMap::Split { pos, neg } => {
                cost[*pos] += &cj;
                cost[*neg] -= &cj;
            }
        }
    }

    // Normalize right-hand sides to be nonnegative and lay out slack and
    // artificial columns.
    let m = std_rows.len();
    let mut row_sign = vec![1i8; m];
    for (r, row) in std_rows.iter_mut().enumerate() {
        if row.2.is_negative() {
            row_sign[r] = -1;
            for v in row.0.iter_mut() {
                *v = -&*v;
            }
            row.2 = -&row.2;
            row.1 = match row.1 {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }
    let n_slack = std_rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let n_art = std_rows.iter().filter(|r| r.1 != Relation::Le).count();
    let ncols = ns + n_slack + n_art;
    let art_start = ns + n_slack;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut identity_col = Vec::with_capacity(m);
    let mut next_slack = ns;
    let mut next_art = art_start;
    for (coeffs, rel, b) in std_rows {
        let mut row = coeffs;
        row.resize(ncols, Rational::zero());
        match rel {
            Relation::Le => {
                row[next_slack] = Rational::one();
                basis.push(next_slack);
                identity_col.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                row[next_art] = Rational::one();
                basis.push(next_art);
                identity_col.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = Rational::one();
                basis.push(next_art);
                identity_col.push(next_art);
                next_art += 1;
            }
        }
        rows.push(row);
        rhs.push(b);
    }

    let mut tab = Tableau {
        rows,
        rhs,
        basis,
        reduced: Vec::new(),
        value: Rational::zero(),
    };

    if n_art > 0 {
        let mut phase1 = vec![Rational::zero(); ncols];
        for c in phase1.iter_mut().skip(art_start) {
            *c = -Rational::one();
        }
        tab.price(&phase1);
        tab.run(|_| true);
        if tab.value.is_negative() {
            return Ok(LpSolution::non_optimal(LpStatus::Infeasible));
        }
        // Drive zero-level artificials out of the basis where possible; rows
        // with no structural support are redundant and stay put at zero.
        for r in 0..m {
            if tab.basis[r] < art_start {
                continue;
            }
            if let Some(c) = (0..art_start).find(|&j| !tab.rows[r][j].is_zero()) {
                tab.pivot(r, c);
            }
        }
    }

    let mut phase2 = cost.clone();
    phase2.resize(ncols, Rational::zero());
    tab.price(&phase2);
    if !tab.run(|j| j < art_start) {
        return Ok(LpSolution::non_optimal(LpStatus::Unbounded));
    }

    let mut std_x = vec![Rational::zero(); ncols];
    for (r, &b) in tab.basis.iter().enumerate() {
        std_x[b] = tab.rhs[r].clone();
    }
    let point: Vec<Rational> = maps
        .iter()
        .map(|map| match map {
            ColMap::Shift { col, lower } => lower + &std_x[*col],
            ColMap::Mirror { col, upper } => upper - &std_x[*col],
            ColMap::Split { pos, neg } => &std_x[*pos] - &std_x[*neg],
        })
        .collect();

    let mut duals = Vec::with_capacity(lp.constraints.len());
    for r in 0..lp.constraints.len() {
        let id = identity_col[r];
        let mut y: Rational = tab
            .basis
            .iter()
            .enumerate()
            .filter(|(k, _)| !tab.rows[*k][id].is_zero())
            .map(|(k, &b)| &phase2[b] * &tab.rows[k][id])
            .sum();
        if row_sign[r] < 0 {
            y = -y;
        }
        if flip_objective {
            y = -y;
        }
        duals.push(y);
    }
    let reduced_costs = (0..n)
        .map(|j| {
            &lp.objective[j]
                - lp.constraints
                    .iter()
                    .zip(&duals)
                    .filter(|(_, y)| !y.is_zero())
                    .map(|(c, y)| &c.coeffs[j] * y)
                    .sum::<Rational>()
        })
        .collect();
    let objective = lp.objective_value(&point);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        point,
        objective,
        duals,
        reduced_costs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat, solve_square};
    use proptest::prelude::*;

    #[test]
    fn one_variable_box() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![int(1)]);
        lp.add_constraint(vec![int(1)], Relation::Le, int(1));
        let sol = lp_solve(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.point, vec![int(1)]);
        assert_eq!(sol.objective, int(1));
        sol.certify(&lp).unwrap();
    }

    #[test]
    fn single_binding_constraint() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![int(1), int(1)]);
        lp.add_constraint(vec![int(1), int(1)], Relation::Le, rat(7, 3));
        let sol = lp_solve(&lp).unwrap();
        assert_eq!(sol.objective, rat(7, 3));
        assert_eq!(sol.duals, vec![int(1)]);
        sol.certify(&lp).unwrap();
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![int(1)]);
        lp.add_constraint(vec![int(1)], Relation::Ge, int(2));
        lp.add_constraint(vec![int(1)], Relation::Le, int(1));
        assert_eq!(lp_solve(&lp).unwrap().status, LpStatus::Infeasible);

        let mut lp = LinearProgram::new(Sense::Maximize, vec![int(1), int(-1)]);
        lp.add_constraint(vec![int(1), int(-1)], Relation::Ge, int(0));
        assert_eq!(lp_solve(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn malformed_rows_are_input_errors() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![int(1), int(1)]);
        lp.add_constraint(vec![int(1)], Relation::Le, int(1));
        assert!(matches!(lp_solve(&lp), Err(Error::Input(_))));
    }

    #[test]
    fn minimize_with_free_and_bounded_variables() {
        // min x - y, x free in [-3, inf), y <= 2 (no lower), x + y >= -4
        let mut lp = LinearProgram::new(Sense::Minimize, vec![int(1), int(-1)]);
        lp.set_bounds(0, Some(int(-3)), None);
        lp.set_bounds(1, None, Some(int(2)));
        lp.add_constraint(vec![int(1), int(1)], Relation::Ge, int(-4));
        let sol = lp_solve(&lp).unwrap();
        assert_eq!(sol.point, vec![int(-3), int(2)]);
        assert_eq!(sol.objective, int(-5));
        sol.certify(&lp).unwrap();
    }

    #[test]
    fn equality_with_redundant_row() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![int(2), int(1)]);
        lp.add_constraint(vec![int(1), int(1)], Relation::Eq, int(1));
        lp.add_constraint(vec![int(2), int(2)], Relation::Eq, int(2));
        let sol = lp_solve(&lp).unwrap();
        assert_eq!(sol.objective, int(2));
        sol.certify(&lp).unwrap();
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling instance (as a maximization).
        let mut lp = LinearProgram::new(Sense::Maximize, vec![rat(3, 4), int(-150), rat(1, 50), int(-6)]);
        lp.add_constraint(vec![rat(1, 4), int(-60), rat(-1, 25), int(9)], Relation::Le, int(0));
        lp.add_constraint(vec![rat(1, 2), int(-90), rat(-1, 50), int(3)], Relation::Le, int(0));
        lp.add_constraint(vec![int(0), int(0), int(1), int(0)], Relation::Le, int(1));
        let sol = lp_solve(&lp).unwrap();
        assert_eq!(sol.objective, rat(1, 20));
        sol.certify(&lp).unwrap();
    }

    /// Best vertex by brute force: every choice of `n` tight constraints out
    /// of rows plus nonnegativity, solved exactly, filtered for feasibility.
    fn vertex_enumeration(lp: &LinearProgram) -> Option<Rational> {
        let n = lp.num_vars();
        let mut planes: Vec<(Vec<Rational>, Rational)> =
            lp.constraints.iter().map(|c| (c.coeffs.clone(), c.rhs.clone())).collect();
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            planes.push((e, Rational::zero()));
        }
        let total = planes.len();
        let mut best: Option<Rational> = None;
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            let m: Vec<Vec<Rational>> = idx.iter().map(|&i| planes[i].0.clone()).collect();
            let b: Vec<Rational> = idx.iter().map(|&i| planes[i].1.clone()).collect();
            if let Some(x) = solve_square(&m, &b) {
                if lp.is_feasible(&x) {
                    let v = lp.objective_value(&x);
                    best = Some(match best {
                        Some(bv) if bv >= v => bv,
                        _ => v,
                    });
                }
            }
            // next combination
            let mut k = n;
            loop {
                if k == 0 {
                    return best;
                }
                k -= 1;
                if idx[k] < total - n + k {
                    idx[k] += 1;
                    for t in k + 1..n {
                        idx[t] = idx[t - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn small_lp() -> impl Strategy<Value = LinearProgram> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(n, m)| {
            let coeff = (-6i64..=6, 1i64..=3).prop_map(|(a, b)| rat(a, b));
            (
                proptest::collection::vec(coeff.clone(), n),
                proptest::collection::vec(
                    (proptest::collection::vec(coeff.clone(), n), 0usize..3, -6i64..=6),
                    m,
                ),
                1i64..=5,
            )
                .prop_map(move |(obj, rows, cap)| {
                    let mut lp = LinearProgram::new(Sense::Maximize, obj);
                    for (coeffs, rel, rhs) in rows {
                        let rel = [Relation::Le, Relation::Ge, Relation::Eq][rel];
                        lp.add_constraint(coeffs, rel, int(rhs));
                    }
                    // Box rows keep the polytope bounded so a vertex optimum
                    // exists whenever the program is feasible.
                    for j in 0..n {
                        let mut e = vec![Rational::zero(); n];
                        e[j] = Rational::one();
                        lp.add_constraint(e, Relation::Le, int(cap));
                    }
                    lp
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn agrees_with_vertex_enumeration(lp in small_lp()) {
            prop_assume!(lp.constraints.len() <= 6 || lp.num_vars() <= 2);
            let sol = lp_solve(&lp).unwrap();
            match vertex_enumeration(&lp) {
                None => prop_assert_eq!(sol.status, LpStatus::Infeasible),
                Some(best) => {
                    prop_assert_eq!(sol.status, LpStatus::Optimal);
                    prop_assert_eq!(&sol.objective, &best);
                    prop_assert_eq!(sol.certify(&lp), Ok(()));
                }
            }
        }

        #[test]
        fn minimization_mirrors_maximization(lp in small_lp()) {
            let max = lp_solve(&lp).unwrap();
            let mut neg = lp.clone();
            neg.sense = Sense::Minimize;
            neg.objective = lp.objective.iter().map(|c| -c).collect();
            let min = lp_solve(&neg).unwrap();
            prop_assert_eq!(max.status, min.status);
            if min.is_optimal() {
                prop_assert_eq!(&max.objective, &(-&min.objective));
                prop_assert_eq!(min.certify(&neg), Ok(()));
            }
        }
    }
}
