//! Correlated and coarse correlated equilibria as explicit linear systems
//! over outcome probabilities, with membership checks, optimization and
//! price-of-anarchy reports.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::dynamics::{cce_from_trace, Trace};
use crate::error::{Error, Result};
use crate::games::{BimatrixGame, JointDistribution, NormalFormGame};
use crate::numeric::{lp_solve, LinearProgram, LpSolution, Rational, Relation, Sense};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquilibriumKind {
    Ce,
    Cce,
}

/// `sum_s coeffs[s] * x_s >= 0`: player `player` does not gain by switching
/// to `deviation`, either always (CCE) or whenever told `recommended` (CE).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncentiveConstraint {
    pub player: usize,
    pub recommended: Option<usize>,
    pub deviation: usize,
    pub coeffs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilibriumSystem {
    pub kind: EquilibriumKind,
    pub game: NormalFormGame,
    pub constraints: Vec<IncentiveConstraint>,
}

/// One variable per outcome. CE constraints use the probability-weighted
/// form, so no conditioning on zero-probability recommendations is needed.
pub fn build_system(g: &NormalFormGame, kind: EquilibriumKind, budget: &Budget) -> Result<EquilibriumSystem> {
    let outcomes = g.num_outcomes();
    budget.check_outcomes("outcomes", outcomes as u128)?;
    let mut constraints = Vec::new();
    for (player, &count) in g.strategy_counts().iter().enumerate() {
        match kind {
            EquilibriumKind::Cce => {
                for deviation in 0..count {
                    let coeffs = (0..outcomes)
                        .map(|s| g.payoff_at(s, player) - g.payoff_at(g.deviate(s, player, deviation), player))
                        .collect();
                    constraints.push(IncentiveConstraint {
                        player,
                        recommended: None,
                        deviation,
                        coeffs,
                    });
                }
            }
            EquilibriumKind::Ce => {
                for recommended in 0..count {
                    for deviation in (0..count).filter(|&d| d != recommended) {
                        let coeffs = (0..outcomes)
                            .map(|s| {
                                if g.profile_of(s)[player] != recommended {
                                    return Rational::zero();
                                }
                                g.payoff_at(s, player) - g.payoff_at(g.deviate(s, player, deviation), player)
                            })
                            .collect();
                        constraints.push(IncentiveConstraint {
                            player,
                            recommended: Some(recommended),
                            deviation,
                            coeffs,
                        });
                    }
                }
            }
        }
    }
    Ok(EquilibriumSystem {
        kind,
        game: g.clone(),
        constraints,
    })
}

impl EquilibriumSystem {
    pub fn num_outcomes(&self) -> usize {
        self.game.num_outcomes()
    }

    /// The system as an LP with the given objective.
    pub fn to_lp(&self, objective: Vec<Rational>, sense: Sense) -> Result<LinearProgram> {
        let n = self.num_outcomes();
        if objective.len() != n {
            return Err(Error::input(format!("objective has {} entries for {} outcomes", objective.len(), n)));
        }
        let mut lp = LinearProgram::new(sense, objective);
        for c in &self.constraints {
            lp.add_constraint(c.coeffs.clone(), Relation::Ge, Rational::zero());
        }
        lp.add_constraint(vec![Rational::one(); n], Relation::Eq, Rational::one());
        Ok(lp)
    }

    pub fn welfare(&self) -> Vec<Rational> {
        (0..self.num_outcomes()).map(|s| self.game.welfare_at(s)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub holds: bool,
    pub epsilon: Rational,
    /// Smallest constraint value; membership needs it to be at least `-eps`.
    pub worst_gap: Rational,
    pub worst: Option<IncentiveConstraint>,
}

pub fn check_membership(system: &EquilibriumSystem, rho: &JointDistribution, epsilon: &Rational) -> Result<MembershipReport> {
    if rho.shape() != system.game.strategy_counts() {
        return Err(Error::input("distribution shape does not match the game"));
    }
    if epsilon.is_negative() {
        return Err(Error::input("epsilon must be nonnegative"));
    }
    let probs = rho.probs();
    let mut worst_gap: Option<Rational> = None;
    let mut worst = None;
    for c in &system.constraints {
        let gap: Rational = c
            .coeffs
            .iter()
            .zip(probs)
            .filter(|(_, p)| !p.is_zero())
            .map(|(a, p)| a * p)
            .sum();
        if worst_gap.as_ref().is_none_or(|w| gap < *w) {
            worst_gap = Some(gap);
            worst = Some(c.clone());
        }
    }
    let worst_gap = worst_gap.unwrap_or_else(Rational::zero);
    Ok(MembershipReport {
        holds: worst_gap >= -epsilon.clone(),
        epsilon: epsilon.clone(),
        worst_gap,
        worst,
    })
}

/// Exact optimum of a linear objective over the equilibrium polytope.
pub fn optimize_over(system: &EquilibriumSystem, objective: Vec<Rational>, sense: Sense) -> Result<LpSolution> {
    let lp = system.to_lp(objective, sense)?;
    let sol = lp_solve(&lp)?;
    if !sol.is_optimal() {
        return Err(Error::invariant(format!("equilibrium LP ended {:?}", sol.status)));
    }
    sol.certify(&lp).map_err(Error::invariant)?;
    Ok(sol)
}

/// Converts an LP point over outcomes into a distribution.
pub fn point_distribution(system: &EquilibriumSystem, sol: &LpSolution) -> Result<JointDistribution> {
    JointDistribution::new(system.game.strategy_counts().to_vec(), sol.point.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoAReport {
    pub kind: EquilibriumKind,
    pub objective: String,
    /// Best objective value over all outcomes.
    pub optimum: Rational,
    /// Minimum of the objective over the equilibrium polytope.
    pub worst_equilibrium: Rational,
    pub worst_distribution: JointDistribution,
    /// `optimum / worst_equilibrium`, when both are positive.
    pub ratio: Option<Rational>,
    /// Every outcome has the same objective value.
    pub degenerate: bool,
}

/// Price of anarchy with the welfare objective unless `objective` is given.
pub fn poa_report(
    g: &NormalFormGame,
    kind: EquilibriumKind,
    objective: Option<Vec<Rational>>,
    budget: &Budget,
) -> Result<PoAReport> {
    let system = build_system(g, kind, budget)?;
    let (name, objective) = match objective {
        Some(o) => ("custom".to_string(), o),
        None => ("welfare".to_string(), system.welfare()),
    };
    if objective.len() != system.num_outcomes() {
        return Err(Error::input("objective length differs from the outcome count"));
    }
    let optimum = objective.iter().max().expect("at least one outcome").clone();
    let degenerate = objective.iter().all(|v| *v == optimum);
    let sol = optimize_over(&system, objective, Sense::Minimize)?;
    let worst_distribution = point_distribution(&system, &sol)?;
    let worst_equilibrium = sol.objective;
    let ratio = (optimum.is_positive() && worst_equilibrium.is_positive()).then(|| &optimum / &worst_equilibrium);
    Ok(PoAReport {
        kind,
        objective: name,
        optimum,
        worst_equilibrium,
        worst_distribution,
        ratio,
        degenerate,
    })
}

/// Checks that the time-averaged joint play of a two-player trace is an
/// `eps`-CCE of `g`.
pub fn certify_sfp_cce(g: &BimatrixGame, trace: &Trace, epsilon: &Rational) -> Result<MembershipReport> {
    let nf = g.to_normal_form();
    let system = build_system(&nf, EquilibriumKind::Cce, &Budget::unlimited())?;
    let rho = cce_from_trace(trace)?;
    check_membership(&system, &rho, epsilon)
}
