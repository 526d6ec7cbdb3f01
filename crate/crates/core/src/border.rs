//! Single-item Bayesian auctions: monopoly pricing, interim allocation
//! rules, Border's inequalities, feasibility by max-flow with ex-post
//! witnesses and cut certificates, and the optimal BIC revenue LP.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::numeric::{lp_solve, max_flow, FlowNetwork, LinearProgram, Rational, Relation, Sense};

/// One bidder's discrete valuation distribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BidderPrior {
    pub support: Vec<Rational>,
    pub probs: Vec<Rational>,
}

impl BidderPrior {
    pub fn new(support: Vec<Rational>, probs: Vec<Rational>) -> Result<Self> {
        let b = BidderPrior { support, probs };
        b.validate()?;
        Ok(b)
    }

    pub fn uniform(support: Vec<Rational>) -> Result<Self> {
        let n = support.len() as i64;
        let probs = vec![Rational::new(1, n.max(1)); support.len()];
        BidderPrior::new(support, probs)
    }

    fn validate(&self) -> Result<()> {
        if self.support.is_empty() || self.support.len() != self.probs.len() {
            return Err(Error::input("support and probabilities must be nonempty and of equal length"));
        }
        if self.probs.iter().any(|p| p.is_negative()) || !self.probs.iter().sum::<Rational>().is_one() {
            return Err(Error::input("probabilities must be nonnegative and sum to 1"));
        }
        for (a, v) in self.support.iter().enumerate() {
            if self.support[..a].contains(v) {
                return Err(Error::input(format!("valuation {} listed twice", v)));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

/// Independent bidders. Valuations are referred to by `(bidder, index)`,
/// so equal numbers for different bidders never collide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Prior {
    pub bidders: Vec<BidderPrior>,
}

impl Prior {
    pub fn new(bidders: Vec<BidderPrior>) -> Result<Self> {
        if bidders.is_empty() {
            return Err(Error::input("a prior needs at least one bidder"));
        }
        for b in &bidders {
            b.validate()?;
        }
        Ok(Prior { bidders })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: Prior = serde_json::from_str(text).map_err(|e| Error::input(format!("bad prior: {}", e)))?;
        Prior::new(p.bidders)
    }

    pub fn n(&self) -> usize {
        self.bidders.len()
    }

    pub fn f(&self, i: usize, v: usize) -> &Rational {
        &self.bidders[i].probs[v]
    }

    pub fn value(&self, i: usize, v: usize) -> &Rational {
        &self.bidders[i].support[v]
    }

    pub fn num_profiles(&self) -> u128 {
        self.bidders.iter().fold(1u128, |acc, b| acc.saturating_mul(b.len() as u128))
    }

    /// All valuation profiles, last bidder varying fastest.
    pub fn profiles(&self) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for b in &self.bidders {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..b.len()).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn profile_prob(&self, profile: &[usize]) -> Rational {
        profile.iter().enumerate().map(|(i, &v)| self.f(i, v).clone()).product()
    }

    fn total_valuations(&self) -> usize {
        self.bidders.iter().map(|b| b.len()).sum()
    }
}

/// Interim winning probabilities `y[i][v]` and optional payments `q[i][v]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterimRule {
    pub y: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<Vec<Rational>>>,
}

impl InterimRule {
    pub fn new(y: Vec<Vec<Rational>>, q: Option<Vec<Vec<Rational>>>) -> Result<Self> {
        if y.iter().flatten().any(|v| v.is_negative() || *v > Rational::one()) {
            return Err(Error::input("winning probabilities must lie in [0, 1]"));
        }
        if let Some(q) = &q {
            if q.iter().flatten().any(|v| v.is_negative()) {
                return Err(Error::input("payments must be nonnegative"));
            }
            if q.len() != y.len() || q.iter().zip(&y).any(|(a, b)| a.len() != b.len()) {
                return Err(Error::input("payments and probabilities differ in shape"));
            }
        }
        Ok(InterimRule { y, q })
    }

    fn check_shape(&self, prior: &Prior) -> Result<()> {
        if self.y.len() != prior.n() || self.y.iter().zip(&prior.bidders).any(|(y, b)| y.len() != b.len()) {
            return Err(Error::input("interim rule does not match the prior"));
        }
        Ok(())
    }
}

/// `r` in the support maximizing `r * P(v >= r)`, lowest on ties.
pub fn monopoly_price(bidder: &BidderPrior) -> Result<(Rational, Rational)> {
    bidder.validate()?;
    let mut best: Option<(Rational, Rational)> = None;
    for r in &bidder.support {
        let sale: Rational = bidder
            .support
            .iter()
            .zip(&bidder.probs)
            .filter(|(v, _)| *v >= r)
            .map(|(_, p)| p.clone())
            .sum();
        let revenue = r * sale;
        let better = match &best {
            None => true,
            Some((br, bv)) => revenue > *bv || (revenue == *bv && r < br),
        };
        if better {
            best = Some((r.clone(), revenue));
        }
    }
    Ok(best.expect("nonempty support"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessaryReport {
    pub holds: bool,
    /// `1 - sum_i sum_v f_i(v) y_i(v)`.
    pub slack: Rational,
}

/// At most one winner in expectation.
pub fn necessary_condition(prior: &Prior, rule: &InterimRule) -> Result<NecessaryReport> {
    rule.check_shape(prior)?;
    let total = expected_winners(prior, rule);
    let slack = Rational::one() - total;
    Ok(NecessaryReport {
        holds: !slack.is_negative(),
        slack,
    })
}

fn expected_winners(prior: &Prior, rule: &InterimRule) -> Rational {
    (0..prior.n())
        .flat_map(|i| (0..prior.bidders[i].len()).map(move |v| (i, v)))
        .map(|(i, v)| prior.f(i, v) * &rule.y[i][v])
        .sum()
}

/// Border's inequality for distinguished sets `sets[i]` (indices into
/// bidder `i`'s support).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorderInequality {
    pub sets: Vec<Vec<usize>>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl BorderInequality {
    pub fn evaluate(prior: &Prior, rule: &InterimRule, sets: Vec<Vec<usize>>) -> Self {
        let lhs = sets
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&v| (i, v)))
            .map(|(i, v)| prior.f(i, v) * &rule.y[i][v])
            .sum();
        let rhs = border_rhs(prior, &sets);
        BorderInequality { sets, lhs, rhs }
    }

    pub fn violation(&self) -> Rational {
        &self.lhs - &self.rhs
    }

    pub fn is_violated(&self) -> bool {
        self.lhs > self.rhs
    }
}

fn border_rhs(prior: &Prior, sets: &[Vec<usize>]) -> Rational {
    let miss: Rational = sets
        .iter()
        .enumerate()
        .map(|(i, s)| Rational::one() - s.iter().map(|&v| prior.f(i, v).clone()).sum::<Rational>())
        .product();
    Rational::one() - miss
}

/// Every choice of distinguished sets, the empty choice included, with each
/// bidder's subsets in bitmask order and the last bidder varying fastest.
pub fn border_set_choices(prior: &Prior, budget: &Budget) -> Result<Vec<Vec<Vec<usize>>>> {
    let total = prior.total_valuations();
    budget.check_profiles("Border inequalities", 1u128.checked_shl(total as u32).unwrap_or(u128::MAX))?;
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for b in &prior.bidders {
        let subsets: Vec<Vec<usize>> = (0..1usize << b.len())
            .map(|mask| (0..b.len()).filter(|v| mask & (1 << v) != 0).collect())
            .collect();
        out = out
            .into_iter()
            .flat_map(|choice| {
                subsets.iter().map(move |s| {
                    let mut c = choice.clone();
                    c.push(s.clone());
                    c
                })
            })
            .collect();
    }
    Ok(out)
}

/// All violated inequalities, largest violation first (ties keep
/// enumeration order).
pub fn enumerate_border_violations(prior: &Prior, rule: &InterimRule, budget: &Budget) -> Result<Vec<BorderInequality>> {
    rule.check_shape(prior)?;
    let mut out: Vec<BorderInequality> = border_set_choices(prior, budget)?
        .into_iter()
        .map(|sets| BorderInequality::evaluate(prior, rule, sets))
        .filter(|b| b.is_violated())
        .collect();
    out.sort_by(|a, b| b.violation().cmp(&a.violation()));
    Ok(out)
}

/// Ex-post allocation `x[p][i]` for profile `profiles[p]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExPostRule {
    pub profiles: Vec<Vec<usize>>,
    pub x: Vec<Vec<Rational>>,
}

impl ExPostRule {
    /// Induced interim rule `y_i(v) = E[x_i | v_i = v]`; valuations of zero
    /// probability get 0.
    pub fn interim(&self, prior: &Prior) -> Vec<Vec<Rational>> {
        let mut mass: Vec<Vec<Rational>> = prior.bidders.iter().map(|b| vec![Rational::zero(); b.len()]).collect();
        for (profile, x) in self.profiles.iter().zip(&self.x) {
            let p = prior.profile_prob(profile);
            if p.is_zero() {
                continue;
            }
            for (i, &v) in profile.iter().enumerate() {
                mass[i][v] += &p * &x[i];
            }
        }
        mass.into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(v, m)| {
                        let f = prior.f(i, v);
                        if f.is_zero() {
                            Rational::zero()
                        } else {
                            m / f
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Nonnegative and at most one item per profile.
    pub fn is_feasible(&self) -> bool {
        self.x
            .iter()
            .all(|row| row.iter().all(|v| !v.is_negative()) && row.iter().sum::<Rational>() <= Rational::one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowFeasibility {
    pub feasible: bool,
    pub max_flow: Rational,
    pub witness: Option<ExPostRule>,
    /// Violated inequality read off the minimum cut.
    pub violated: Option<BorderInequality>,
}

/// Four-layer network: source to each profile with capacity equal to its
/// probability; each profile to its `(i, v_i)` nodes and to a no-winner
/// node with unbounded capacity; `(i, v)` to the sink with capacity
/// `f_i(v) y_i(v)`; no-winner to the sink with the remaining mass. The rule
/// is feasible iff the maximum flow is 1.
pub fn feasibility_via_maxflow(prior: &Prior, rule: &InterimRule, budget: &Budget) -> Result<FlowFeasibility> {
    rule.check_shape(prior)?;
    budget.check_profiles("valuation profiles", prior.num_profiles())?;
    let all_sets: Vec<Vec<usize>> = prior.bidders.iter().map(|b| (0..b.len()).collect()).collect();
    let nec = necessary_condition(prior, rule)?;
    if !nec.holds {
        let ineq = BorderInequality::evaluate(prior, rule, all_sets);
        return Ok(FlowFeasibility {
            feasible: false,
            max_flow: Rational::zero(),
            witness: None,
            violated: Some(ineq),
        });
    }
    let profiles = prior.profiles();
    let live: Vec<usize> = (0..profiles.len())
        .filter(|&p| !prior.profile_prob(&profiles[p]).is_zero())
        .collect();
    // Vertex layout: 0 source, 1 sink, 2 no-winner, then (i, v), then live profiles.
    let mut offsets = Vec::with_capacity(prior.n());
    let mut next = 3;
    for b in &prior.bidders {
        offsets.push(next);
        next += b.len();
    }
    let profile_base = next;
    let mut net = FlowNetwork::new(profile_base + live.len(), 0, 1)?;
    let mut assign_arcs = Vec::with_capacity(live.len());
    for (k, &p) in live.iter().enumerate() {
        let node = profile_base + k;
        net.add_finite(0, node, prior.profile_prob(&profiles[p]))?;
        let arcs: Vec<usize> = profiles[p]
            .iter()
            .enumerate()
            .map(|(i, &v)| net.add_infinite(node, offsets[i] + v))
            .collect::<Result<_>>()?;
        net.add_infinite(node, 2)?;
        assign_arcs.push(arcs);
    }
    for (i, b) in prior.bidders.iter().enumerate() {
        for v in 0..b.len() {
            net.add_finite(offsets[i] + v, 1, prior.f(i, v) * &rule.y[i][v])?;
        }
    }
    net.add_finite(2, 1, nec.slack.clone())?;
    let flow = max_flow(&net)?;
    if flow.value.is_one() {
        let mut x = vec![vec![Rational::zero(); prior.n()]; profiles.len()];
        for (k, &p) in live.iter().enumerate() {
            let mass = prior.profile_prob(&profiles[p]);
            for (i, &arc) in assign_arcs[k].iter().enumerate() {
                x[p][i] = &flow.flows[arc] / &mass;
            }
        }
        let witness = ExPostRule { profiles, x };
        if witness.interim(prior) != zeroed_rule(prior, rule) || !witness.is_feasible() {
            return Err(Error::invariant("extracted ex-post rule does not reproduce the interim rule"));
        }
        return Ok(FlowFeasibility {
            feasible: true,
            max_flow: flow.value,
            witness: Some(witness),
            violated: None,
        });
    }
    // S_i: valuations of i not represented among source-side profiles.
    let mut represented: Vec<Vec<bool>> = prior.bidders.iter().map(|b| vec![false; b.len()]).collect();
    for (k, &p) in live.iter().enumerate() {
        if flow.source_side[profile_base + k] {
            for (i, &v) in profiles[p].iter().enumerate() {
                represented[i][v] = true;
            }
        }
    }
    let sets: Vec<Vec<usize>> = represented
        .iter()
        .map(|r| (0..r.len()).filter(|&v| !r[v]).collect())
        .collect();
    let ineq = BorderInequality::evaluate(prior, rule, sets);
    if !ineq.is_violated() {
        return Err(Error::invariant("minimum cut did not yield a violated Border inequality"));
    }
    Ok(FlowFeasibility {
        feasible: false,
        max_flow: flow.value,
        witness: None,
        violated: Some(ineq),
    })
}

fn zeroed_rule(prior: &Prior, rule: &InterimRule) -> Vec<Vec<Rational>> {
    rule.y
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(v, y)| if prior.f(i, v).is_zero() { Rational::zero() } else { y.clone() })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicLpResult {
    pub rule: InterimRule,
    pub revenue: Rational,
}

/// Maximizes `sum_i sum_v f_i(v) q_i(v)` subject to interim BIC, interim IR
/// and every Border inequality, with `y` in `[0, 1]` and `q >= 0`.
pub fn optimal_bic_revenue(prior: &Prior, budget: &Budget) -> Result<BicLpResult> {
    let choices = border_set_choices(prior, budget)?;
    // Variables: y for every (i, v), then q for every (i, v).
    let index: Vec<(usize, usize)> = (0..prior.n())
        .flat_map(|i| (0..prior.bidders[i].len()).map(move |v| (i, v)))
        .collect();
    let t = index.len();
    let pos = |i: usize, v: usize| index.iter().position(|&p| p == (i, v)).expect("valuation");
    let mut objective = vec![Rational::zero(); 2 * t];
    for (k, &(i, v)) in index.iter().enumerate() {
        objective[t + k] = prior.f(i, v).clone();
    }
    let mut lp = LinearProgram::new(Sense::Maximize, objective);
    for k in 0..t {
        lp.set_bounds(k, Some(Rational::zero()), Some(Rational::one()));
    }
    for (i, b) in prior.bidders.iter().enumerate() {
        for v in 0..b.len() {
            let val = prior.value(i, v);
            // v y(v) - q(v) >= v y(w) - q(w)
            for w in (0..b.len()).filter(|&w| w != v) {
                let mut row = vec![Rational::zero(); 2 * t];
                row[pos(i, v)] = val.clone();
                row[t + pos(i, v)] = -Rational::one();
                row[pos(i, w)] = -val.clone();
                row[t + pos(i, w)] = Rational::one();
                lp.add_constraint(row, Relation::Ge, Rational::zero());
            }
            let mut row = vec![Rational::zero(); 2 * t];
            row[pos(i, v)] = val.clone();
            row[t + pos(i, v)] = -Rational::one();
            lp.add_constraint(row, Relation::Ge, Rational::zero());
        }
    }
    for sets in choices.iter().filter(|s| s.iter().any(|x| !x.is_empty())) {
        let mut row = vec![Rational::zero(); 2 * t];
        for (i, s) in sets.iter().enumerate() {
            for &v in s {
                row[pos(i, v)] = prior.f(i, v).clone();
            }
        }
        lp.add_constraint(row, Relation::Le, border_rhs(prior, sets));
    }
    let sol = lp_solve(&lp)?;
    if !sol.is_optimal() {
        return Err(Error::invariant(format!("revenue LP ended {:?}", sol.status)));
    }
    sol.certify(&lp).map_err(Error::invariant)?;
    let mut y: Vec<Vec<Rational>> = prior.bidders.iter().map(|b| vec![Rational::zero(); b.len()]).collect();
    let mut q = y.clone();
    for (k, &(i, v)) in index.iter().enumerate() {
        y[i][v] = sol.point[k].clone();
        q[i][v] = sol.point[t + k].clone();
    }
    let rule = InterimRule::new(y, Some(q))?;
    if !feasibility_via_maxflow(prior, &rule, budget)?.feasible {
        return Err(Error::invariant("optimal interim rule is not max-flow feasible"));
    }
    Ok(BicLpResult {
        rule,
        revenue: sol.objective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    fn two_uniform() -> Prior {
        let b = BidderPrior::uniform(vec![int(1), int(2)]).unwrap();
        Prior::new(vec![b.clone(), b]).unwrap()
    }

    fn rule(y: [[Rational; 2]; 2]) -> InterimRule {
        InterimRule::new(y.iter().map(|r| r.to_vec()).collect(), None).unwrap()
    }

    fn example_feasible() -> InterimRule {
        rule([[rat(1, 2), rat(7, 8)], [rat(1, 8), rat(1, 2)]])
    }

    fn example_infeasible() -> InterimRule {
        rule([[rat(1, 4), rat(7, 8)], [rat(1, 8), rat(3, 4)]])
    }

    #[test]
    fn monopoly_prices() {
        let b = BidderPrior::uniform(vec![int(1), int(2)]).unwrap();
        assert_eq!(monopoly_price(&b).unwrap(), (int(1), int(1)));
        let c = BidderPrior::new(vec![rat(5, 3)], vec![int(1)]).unwrap();
        assert_eq!(monopoly_price(&c).unwrap(), (rat(5, 3), rat(5, 3)));
    }

    #[test]
    fn first_example_is_feasible() {
        let p = two_uniform();
        let r = example_feasible();
        assert!(necessary_condition(&p, &r).unwrap().holds);
        assert!(enumerate_border_violations(&p, &r, &Budget::default()).unwrap().is_empty());
        assert_eq!(border_set_choices(&p, &Budget::default()).unwrap().len(), 16);
        let f = feasibility_via_maxflow(&p, &r, &Budget::default()).unwrap();
        assert!(f.feasible);
        let w = f.witness.unwrap();
        assert_eq!(w.interim(&p), r.y);
        // The printed table is another witness.
        let table = ExPostRule {
            profiles: p.profiles(),
            x: vec![
                vec![int(1), int(0)],
                vec![int(0), int(1)],
                vec![rat(3, 4), rat(1, 4)],
                vec![int(1), int(0)],
            ],
        };
        assert!(table.is_feasible());
        assert_eq!(table.interim(&p), r.y);
    }

    #[test]
    fn second_example_is_infeasible() {
        let p = two_uniform();
        let r = example_infeasible();
        assert!(necessary_condition(&p, &r).unwrap().holds);
        let v = enumerate_border_violations(&p, &r, &Budget::default()).unwrap();
        let target = v.iter().find(|b| b.sets == vec![vec![1], vec![1]]).unwrap();
        assert_eq!(target.lhs, rat(13, 16));
        assert_eq!(target.rhs, rat(3, 4));
        let f = feasibility_via_maxflow(&p, &r, &Budget::default()).unwrap();
        assert!(!f.feasible);
        let cut = f.violated.unwrap();
        assert!(v.iter().any(|b| b.sets == cut.sets));
    }

    #[test]
    fn trivial_rules() {
        let p = two_uniform();
        let zero = rule([[int(0), int(0)], [int(0), int(0)]]);
        assert!(enumerate_border_violations(&p, &zero, &Budget::default()).unwrap().is_empty());
        let f = feasibility_via_maxflow(&p, &zero, &Budget::default()).unwrap();
        assert!(f.witness.unwrap().x.iter().flatten().all(|v| v.is_zero()));
        let ones = rule([[int(1), int(1)], [int(1), int(1)]]);
        let nec = necessary_condition(&p, &ones).unwrap();
        assert!(!nec.holds);
        assert_eq!(nec.slack, int(-1));
        assert!(!feasibility_via_maxflow(&p, &ones, &Budget::default()).unwrap().feasible);
    }

    #[test]
    fn zero_probability_valuations_are_pruned() {
        let b = BidderPrior::new(vec![int(1), int(2), int(3)], vec![rat(1, 2), rat(1, 2), int(0)]).unwrap();
        let p = Prior::new(vec![b.clone(), b]).unwrap();
        let r = InterimRule::new(vec![vec![rat(1, 2), rat(7, 8), int(1)], vec![rat(1, 8), rat(1, 2), int(1)]], None).unwrap();
        let f = feasibility_via_maxflow(&p, &r, &Budget::default()).unwrap();
        assert!(f.feasible);
    }

    #[test]
    fn revenue_lp() {
        let single = Prior::new(vec![BidderPrior::uniform(vec![int(1), int(2)]).unwrap()]).unwrap();
        assert_eq!(optimal_bic_revenue(&single, &Budget::default()).unwrap().revenue, int(1));
        let point = Prior::new(vec![BidderPrior::new(vec![rat(7, 3)], vec![int(1)]).unwrap()]).unwrap();
        assert_eq!(optimal_bic_revenue(&point, &Budget::default()).unwrap().revenue, rat(7, 3));
        let two = optimal_bic_revenue(&two_uniform(), &Budget::default()).unwrap();
        assert_eq!(two.revenue, rat(3, 2));
    }

    #[test]
    fn prior_json() {
        let p = Prior::from_json(r#"{"bidders":[{"support":["1","2"],"probs":["1/2","1/2"]}]}"#).unwrap();
        assert_eq!(p.n(), 1);
        assert!(Prior::from_json(r#"{"bidders":[{"support":["1"],"probs":["1/2"]}]}"#).is_err());
    }
}
