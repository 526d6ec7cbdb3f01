//! Walrasian equilibria of markets with indivisible items: the demand
//! oracle, equilibrium verification, brute-force welfare maximization and
//! the configuration LP with its dual prices.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::numeric::{lp_solve, LinearProgram, Rational, Relation, Sense};

/// Bundles are bitmasks over the items.
pub type Bundle = u32;

pub const MAX_ITEMS: usize = 16;

/// `k` players with valuations given as full tables indexed by bundle mask.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MarketFile", into = "MarketFile")]
pub struct Market {
    items: Vec<String>,
    valuations: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleValue {
    bundle: Vec<String>,
    value: Rational,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MarketFile {
    items: Vec<String>,
    valuations: Vec<Vec<BundleValue>>,
}

impl TryFrom<MarketFile> for Market {
    type Error = Error;

    fn try_from(f: MarketFile) -> Result<Self> {
        let m = f.items.len();
        if m > MAX_ITEMS {
            return Err(Error::input(format!("at most {} items are supported", MAX_ITEMS)));
        }
        let mut valuations = Vec::with_capacity(f.valuations.len());
        for (i, table) in f.valuations.iter().enumerate() {
            let mut v: Vec<Option<Rational>> = vec![None; 1 << m];
            v[0] = Some(Rational::zero());
            for entry in table {
                let mut mask: Bundle = 0;
                for name in &entry.bundle {
                    let j = f
                        .items
                        .iter()
                        .position(|it| it == name)
                        .ok_or_else(|| Error::input(format!("player {}: unknown item {:?}", i, name)))?;
                    mask |= 1 << j;
                }
                if mask == 0 && !entry.value.is_zero() {
                    return Err(Error::input(format!("player {}: the empty bundle must be worth 0", i)));
                }
                v[mask as usize] = Some(entry.value.clone());
            }
            let full = v
                .into_iter()
                .enumerate()
                .map(|(mask, val)| {
                    val.ok_or_else(|| Error::input(format!("player {}: no value for bundle mask {:#b}", i, mask)))
                })
                .collect::<Result<Vec<_>>>()?;
            valuations.push(full);
        }
        Market::new(f.items, valuations)
    }
}

impl From<Market> for MarketFile {
    fn from(m: Market) -> Self {
        let valuations = m
            .valuations
            .iter()
            .map(|table| {
                table
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(mask, v)| BundleValue {
                        bundle: m.bundle_names(mask as Bundle),
                        value: v.clone(),
                    })
                    .collect()
            })
            .collect();
        MarketFile {
            items: m.items,
            valuations,
        }
    }
}

impl Market {
    pub fn new(items: Vec<String>, valuations: Vec<Vec<Rational>>) -> Result<Self> {
        let m = items.len();
        if m > MAX_ITEMS {
            return Err(Error::input(format!("at most {} items are supported", MAX_ITEMS)));
        }
        if valuations.is_empty() {
            return Err(Error::input("a market needs at least one player"));
        }
        for (i, v) in valuations.iter().enumerate() {
            if v.len() != 1 << m {
                return Err(Error::input(format!("player {}: expected {} bundle values", i, 1usize << m)));
            }
            if !v[0].is_zero() {
                return Err(Error::input(format!("player {}: the empty bundle must be worth 0", i)));
            }
            for s in 0..v.len() {
                if v[s].is_negative() {
                    return Err(Error::input(format!("player {}: negative value", i)));
                }
                for j in 0..m {
                    let t = s | (1 << j);
                    if v[s] > v[t] {
                        return Err(Error::input(format!(
                            "player {}: valuation is not monotone ({:?} is worth more than {:?})",
                            i,
                            bundle_indices(s as Bundle),
                            bundle_indices(t as Bundle)
                        )));
                    }
                }
            }
        }
        Ok(Market { items, valuations })
    }

    pub fn from_fn(items: Vec<String>, players: usize, f: impl Fn(usize, Bundle) -> Rational) -> Result<Self> {
        let m = items.len();
        let valuations = (0..players)
            .map(|i| (0..1u32 << m).map(|s| f(i, s)).collect())
            .collect();
        Market::new(items, valuations)
    }

    /// `v_i(S) = sum_{j in S} alpha[i][j]`.
    pub fn additive(items: Vec<String>, alpha: Vec<Vec<Rational>>) -> Result<Self> {
        let players = alpha.len();
        Market::from_fn(items, players, |i, s| {
            bundle_indices(s).into_iter().map(|j| alpha[i][j].clone()).sum()
        })
    }

    /// `v_i(S) = max_{j in S} alpha[i][j]`.
    pub fn unit_demand(items: Vec<String>, alpha: Vec<Vec<Rational>>) -> Result<Self> {
        let players = alpha.len();
        Market::from_fn(items, players, |i, s| {
            bundle_indices(s)
                .into_iter()
                .map(|j| alpha[i][j].clone())
                .max()
                .unwrap_or_else(Rational::zero)
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("bad market file: {}", e)))
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn num_items(&self) -> usize {
        self.items.len()
    }

    pub fn num_players(&self) -> usize {
        self.valuations.len()
    }

    pub fn valuation(&self, player: usize) -> &[Rational] {
        &self.valuations[player]
    }

    pub fn value(&self, player: usize, bundle: Bundle) -> &Rational {
        &self.valuations[player][bundle as usize]
    }

    pub fn bundle_names(&self, bundle: Bundle) -> Vec<String> {
        bundle_indices(bundle).into_iter().map(|j| self.items[j].clone()).collect()
    }

    fn all_items(&self) -> Bundle {
        ((1u64 << self.items.len()) - 1) as Bundle
    }
}

pub fn bundle_indices(bundle: Bundle) -> Vec<usize> {
    (0..32).filter(|j| bundle & (1 << j) != 0).collect()
}

fn price_of(bundle: Bundle, prices: &[Rational]) -> Rational {
    bundle_indices(bundle).into_iter().map(|j| prices[j].clone()).sum()
}

/// Item prices, one per item.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PriceVector(pub Vec<Rational>);

impl PriceVector {
    pub fn new(prices: Vec<Rational>) -> Result<Self> {
        if prices.iter().any(|p| p.is_negative()) {
            return Err(Error::input("prices must be nonnegative"));
        }
        Ok(PriceVector(prices))
    }
}

/// One bundle per player; `bundles[i]` is a mask.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Allocation {
    pub bundles: Vec<Bundle>,
}

impl Allocation {
    pub fn welfare(&self, market: &Market) -> Rational {
        self.bundles.iter().enumerate().map(|(i, &s)| market.value(i, s).clone()).sum()
    }
}

fn bundle_key(bundle: Bundle) -> (u32, Vec<usize>) {
    (bundle.count_ones(), bundle_indices(bundle))
}

/// A utility-maximizing bundle, preferring fewer items and then the
/// lexicographically smallest item list.
pub fn demand_oracle(valuation: &[Rational], prices: &[Rational]) -> (Bundle, Rational) {
    let mut best: Bundle = 0;
    let mut best_utility = valuation[0].clone();
    for s in 1..valuation.len() as Bundle {
        let u = &valuation[s as usize] - price_of(s, prices);
        if u > best_utility || (u == best_utility && bundle_key(s) < bundle_key(best)) {
            best = s;
            best_utility = u;
        }
    }
    (best, best_utility)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition")]
pub enum WalrasianViolation {
    /// Player prefers `demanded` to `held` by `gain`.
    W1 {
        player: usize,
        held: Bundle,
        demanded: Bundle,
        gain: Rational,
    },
    /// Two players hold the same item.
    W2 { players: (usize, usize), item: usize },
    /// An item is not allocated.
    W3 { item: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalrasianReport {
    pub holds: bool,
    pub violation: Option<WalrasianViolation>,
}

pub fn verify_walrasian(market: &Market, alloc: &Allocation, prices: &PriceVector) -> Result<WalrasianReport> {
    let m = market.num_items();
    if alloc.bundles.len() != market.num_players() || prices.0.len() != m {
        return Err(Error::input("allocation or prices do not match the market"));
    }
    if alloc.bundles.iter().any(|&s| s & !market.all_items() != 0) {
        return Err(Error::input("allocation names an unknown item"));
    }
    if prices.0.iter().any(|p| p.is_negative()) {
        return Err(Error::input("prices must be nonnegative"));
    }
    let fail = |v| {
        Ok(WalrasianReport {
            holds: false,
            violation: Some(v),
        })
    };
    for i in 0..alloc.bundles.len() {
        for k in i + 1..alloc.bundles.len() {
            let common = alloc.bundles[i] & alloc.bundles[k];
            if common != 0 {
                return fail(WalrasianViolation::W2 {
                    players: (i, k),
                    item: common.trailing_zeros() as usize,
                });
            }
        }
    }
    for (i, &held) in alloc.bundles.iter().enumerate() {
        let (demanded, best) = demand_oracle(market.valuation(i), &prices.0);
        let utility = market.value(i, held) - price_of(held, &prices.0);
        if utility < best {
            return fail(WalrasianViolation::W1 {
                player: i,
                held,
                demanded,
                gain: best - utility,
            });
        }
    }
    let sold = alloc.bundles.iter().fold(0, |acc, &s| acc | s);
    if let Some(item) = (0..m).find(|&j| sold & (1 << j) == 0) {
        return fail(WalrasianViolation::W3 { item });
    }
    Ok(WalrasianReport {
        holds: true,
        violation: None,
    })
}

/// Exhaustive search over assignments of each item to a player or to
/// nobody. Returns the first optimum in enumeration order.
pub fn max_welfare_bruteforce(market: &Market, budget: &Budget) -> Result<(Allocation, Rational)> {
    let (k, m) = (market.num_players(), market.num_items());
    let count = (k as u128 + 1).saturating_pow(m as u32);
    budget.check_outcomes("item assignments", count)?;
    let mut owner = vec![0usize; m]; // 0 = nobody, i + 1 = player i
    let mut best: Option<(Vec<Bundle>, Rational)> = None;
    loop {
        let mut bundles = vec![0 as Bundle; k];
        for (j, &o) in owner.iter().enumerate() {
            if o > 0 {
                bundles[o - 1] |= 1 << j;
            }
        }
        let w: Rational = bundles.iter().enumerate().map(|(i, &s)| market.value(i, s).clone()).sum();
        if best.as_ref().is_none_or(|(_, b)| w > *b) {
            best = Some((bundles, w));
        }
        // Odometer with the first item most significant.
        let Some(j) = (0..m).rev().find(|&j| owner[j] < k) else {
            break;
        };
        owner[j] += 1;
        for o in owner.iter_mut().skip(j + 1) {
            *o = 0;
        }
    }
    let (bundles, value) = best.expect("at least one assignment");
    Ok((Allocation { bundles }, value))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigLpResult {
    /// Variable `t` is `x_{i S}` for `(i, S) = columns[t]`.
    pub columns: Vec<(usize, Bundle)>,
    pub x: Vec<Rational>,
    pub value: Rational,
    /// Dual of "player i receives one bundle" (free).
    pub u: Vec<Rational>,
    /// Dual of "item j is sold at most once" (nonnegative).
    pub p: Vec<Rational>,
}

impl ConfigLpResult {
    pub fn support(&self) -> Vec<((usize, Bundle), Rational)> {
        self.columns
            .iter()
            .zip(&self.x)
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (*c, v.clone()))
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.x.iter().all(|v| v.is_integer())
    }

    /// Conditions (i) and (ii): used bundles are utility-maximizing at the
    /// dual prices, and priced items are fully sold.
    pub fn complementary_slackness(&self, market: &Market) -> Result<(), String> {
        for ((i, s), v) in self.columns.iter().zip(&self.x) {
            if v.is_positive() && self.u[*i] != market.value(*i, *s) - price_of(*s, &self.p) {
                return Err(format!("x[{}][{:#b}] > 0 but the bundle is not utility-maximizing", i, s));
            }
        }
        for (j, pj) in self.p.iter().enumerate() {
            let sold: Rational = self
                .columns
                .iter()
                .zip(&self.x)
                .filter(|((_, s), _)| s & (1 << j) != 0)
                .map(|(_, v)| v.clone())
                .sum();
            if pj.is_positive() && !sold.is_one() {
                return Err(format!("item {} has a positive price but is not fully sold", j));
            }
        }
        Ok(())
    }
}

pub fn solve_configuration_lp(market: &Market, budget: &Budget) -> Result<ConfigLpResult> {
    let (k, m) = (market.num_players(), market.num_items());
    budget.check_bundles("bundles", 1u128 << m)?;
    budget.check_outcomes("configuration LP variables", (k as u128) << m)?;
    let columns: Vec<(usize, Bundle)> = (0..k).flat_map(|i| (0..1u32 << m).map(move |s| (i, s))).collect();
    let objective = columns.iter().map(|&(i, s)| market.value(i, s).clone()).collect();
    let mut lp = LinearProgram::new(Sense::Maximize, objective);
    for j in 0..m {
        let row = columns
            .iter()
            .map(|&(_, s)| Rational::from(i64::from(s & (1 << j) != 0)))
            .collect();
        lp.add_constraint(row, Relation::Le, Rational::one());
    }
    for i in 0..k {
        let row = columns.iter().map(|&(p, _)| Rational::from(i64::from(p == i))).collect();
        lp.add_constraint(row, Relation::Eq, Rational::one());
    }
    let sol = lp_solve(&lp)?;
    if !sol.is_optimal() {
        return Err(Error::invariant(format!("configuration LP ended {:?}", sol.status)));
    }
    sol.certify(&lp).map_err(Error::invariant)?;
    Ok(ConfigLpResult {
        columns,
        x: sol.point,
        value: sol.objective,
        p: sol.duals[..m].to_vec(),
        u: sol.duals[m..].to_vec(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Exists,
    NotExists,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalrasianCertificate {
    pub verdict: Verdict,
    pub lp_value: Rational,
    pub integral_value: Rational,
    pub allocation: Option<Allocation>,
    pub prices: Option<PriceVector>,
    /// Fractional LP optimum, listed by support, when no equilibrium exists.
    pub fractional: Option<Vec<((usize, Bundle), Rational)>>,
}

/// An equilibrium exists iff the configuration LP has an integral optimum,
/// i.e. iff its value equals the brute-force integral optimum. Prices come
/// from the LP duals.
pub fn walrasian_exists(market: &Market, budget: &Budget) -> Result<WalrasianCertificate> {
    let lp = solve_configuration_lp(market, budget)?;
    lp.complementary_slackness(market).map_err(Error::invariant)?;
    let (mut alloc, integral_value) = max_welfare_bruteforce(market, budget)?;
    if lp.value < integral_value {
        return Err(Error::invariant("LP relaxation below the integral optimum"));
    }
    if lp.value > integral_value {
        return Ok(WalrasianCertificate {
            verdict: Verdict::NotExists,
            fractional: Some(lp.support()),
            lp_value: lp.value,
            integral_value,
            allocation: None,
            prices: None,
        });
    }
    // Unsold items carry price 0; the first player takes them.
    let sold = alloc.bundles.iter().fold(0, |acc, &s| acc | s);
    alloc.bundles[0] |= market.all_items() & !sold;
    let prices = PriceVector::new(lp.p.clone())?;
    let report = verify_walrasian(market, &alloc, &prices)?;
    if !report.holds {
        return Err(Error::invariant(format!("dual prices fail verification: {:?}", report.violation)));
    }
    Ok(WalrasianCertificate {
        verdict: Verdict::Exists,
        lp_value: lp.value,
        integral_value,
        allocation: Some(alloc),
        prices: Some(prices),
        fractional: None,
    })
}

/// Welfare of a verified equilibrium equals the brute-force optimum.
pub fn first_welfare_check(market: &Market, alloc: &Allocation, prices: &PriceVector, budget: &Budget) -> Result<bool> {
    if !verify_walrasian(market, alloc, prices)?.holds {
        return Err(Error::input("allocation and prices are not a Walrasian equilibrium"));
    }
    let (_, best) = max_welfare_bruteforce(market, budget)?;
    Ok(alloc.welfare(market) == best)
}
