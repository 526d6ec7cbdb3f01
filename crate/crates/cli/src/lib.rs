//! Command-line driver: reads JSON, text or CSV inputs, runs one eqlab
//! operation and prints a JSON report.
//!
//! Exit codes: 0 success, 2 input error, 3 resource budget or output
//! failure, 4 internal invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use eqlab::border::{self, InterimRule, Prior};
use eqlab::correlated::{self, EquilibriumKind};
use eqlab::dynamics::{fictitious_play_run, smooth_fp_run, DynamicsConfig, EtaSchedule, FeedbackMode};
use eqlab::games::io::NamedGame;
use eqlab::games::nash::support_enumeration;
use eqlab::games::{BimatrixGame, JointDistribution};
use eqlab::markets::{self, Allocation, Market, PriceVector};
use eqlab::numeric::Sense;
use eqlab::reductions::{self, DiscretizedHypercube, GridMap, SeparableFunction};
use eqlab::sparse::{self, SuccessCriterion};
use eqlab::tfnp::{self, BrouwerFunction, EolInstance, GridSpec, SpernerInstance};
use eqlab::zerosum::{self, ZeroSumGame};
use eqlab::{Budget, Error, Matrix, Rational};

pub mod report;
pub mod trace;

pub use report::{contains_float, digest, emit_report_json, Report, VERSION};
pub use trace::{emit_trace_csv, write_trace_csv};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

/// Environment variable overriding budget flags, e.g.
/// `outcomes=5000,bundles=64,profiles=100`.
pub const BUDGET_ENV: &str = "EQLAB_BUDGET_OVERRIDE";

#[derive(Debug, Parser)]
#[command(name = "eqlab", version, about = "Exact equilibria, dynamics, reductions, markets and auctions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel searches.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, global = true)]
    pub budget_outcomes: Option<u128>,
    #[arg(long, global = true)]
    pub budget_bundles: Option<u128>,
    #[arg(long, global = true)]
    pub budget_profiles: Option<u128>,
    /// Report destination; for `dynamics run` the CSV trace goes here and
    /// the report to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact minimax solutions of zero-sum games
    #[command(subcommand)]
    Zerosum(ZerosumCmd),
    /// Fictitious play and smooth fictitious play traces
    #[command(subcommand)]
    Dynamics(DynamicsCmd),
    /// Small-support approximate equilibria
    #[command(subcommand)]
    Sparse(SparseCmd),
    /// End-of-line, Sperner and Brouwer search
    #[command(subcommand)]
    Tfnp(TfnpCmd),
    /// Game constructions from fixed-point problems and Althöfer games
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Correlated and coarse correlated equilibria
    #[command(subcommand)]
    Ce(CeCmd),
    /// Walrasian equilibria and the configuration LP
    #[command(subcommand)]
    Market(MarketCmd),
    /// Interim feasibility and optimal BIC revenue
    #[command(subcommand)]
    Border(BorderCmd),
}

#[derive(Debug, Subcommand)]
pub enum ZerosumCmd {
    /// Minimax value and optimal strategies of a two-player zero-sum game.
    Solve { game: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Algo {
    Fp,
    Sfp,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Feedback {
    Exact,
    Sampled,
}

#[derive(Debug, Subcommand)]
pub enum DynamicsCmd {
    Run {
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        steps: usize,
        /// `sqrt_t`, `sqrt_t:<c>` or `const:<eta>`.
        #[arg(long, default_value = "sqrt_t")]
        eta: String,
        #[arg(long, value_enum, default_value_t = Feedback::Exact)]
        feedback: Feedback,
        /// Rescale payoffs onto [-1, 1] first.
        #[arg(long)]
        normalize: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Criterion {
    WellSupported,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum SparseCmd {
    /// Smallest-first search over uniform multiset strategies.
    Qptas {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        epsilon: Rational,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        normalize: bool,
    },
    /// Samples multisets from an exact equilibrium.
    Lmm {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        epsilon: Rational,
        #[arg(long, value_enum, default_value_t = Criterion::WellSupported)]
        criterion: Criterion,
        #[arg(long)]
        normalize: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum TfnpCmd {
    /// Follows the line from vertex 0 in an edge-list file.
    Eol { file: PathBuf },
    /// Counts trichromatic cells and follows doors to one.
    Sperner { file: PathBuf },
    /// Approximate fixed point of a map of the 2-simplex.
    Brouwer {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        epsilon: Rational,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReduceCmd {
    /// Imitation game whose equilibria give fixed points.
    Mt {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        eps: Rational,
    },
    Coordinatewise {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        eps: Rational,
    },
    Glued {
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        eps: Rational,
    },
    Althofer {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Ce,
    Cce,
}

impl From<Kind> for EquilibriumKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Ce => EquilibriumKind::Ce,
            Kind::Cce => EquilibriumKind::Cce,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SenseArg {
    Max,
    Min,
}

#[derive(Debug, Clone, Args)]
pub struct CeArgs {
    #[arg(long)]
    pub game: PathBuf,
    #[arg(long, value_enum)]
    pub kind: Kind,
}

#[derive(Debug, Subcommand)]
pub enum CeCmd {
    Build {
        #[command(flatten)]
        common: CeArgs,
    },
    Check {
        #[command(flatten)]
        common: CeArgs,
        /// `{"shape": [..], "probs": [..]}`.
        #[arg(long)]
        rho: PathBuf,
        #[arg(long, default_value = "0")]
        epsilon: Rational,
    },
    /// Optimizes welfare, or one player's payoff, over the polytope.
    Optimize {
        #[command(flatten)]
        common: CeArgs,
        #[arg(long, value_enum, default_value_t = SenseArg::Max)]
        sense: SenseArg,
        #[arg(long)]
        player: Option<usize>,
    },
    Poa {
        #[command(flatten)]
        common: CeArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum MarketCmd {
    Exists {
        #[arg(long)]
        market: PathBuf,
    },
    /// Checks `{"allocation": [[item, ..], ..], "prices": [..]}`.
    Verify {
        #[arg(long)]
        market: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    Lp {
        #[arg(long)]
        market: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum BorderCmd {
    /// All violated Border inequalities of `{"prior": .., "rule": ..}`.
    Check { file: PathBuf },
    /// Max-flow feasibility with witness or cut certificate.
    Flow { file: PathBuf },
    /// Optimal interim BIC revenue for a prior.
    Revenue { prior: PathBuf },
    Monopoly {
        prior: PathBuf,
        #[arg(long, default_value_t = 0)]
        bidder: usize,
    },
}

/// Failure of a whole run, already mapped to an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) | Error::Unbounded(_) => EXIT_INPUT,
            Error::Budget { .. } => EXIT_BUDGET,
            Error::Invariant(_) => EXIT_INVARIANT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: format!("input error: {}", msg.into()),
    }
}

fn output_error(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_BUDGET,
        message: format!("output error: {}", msg.into()),
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Collects input bytes for the report digest.
struct Inputs {
    files: Vec<Vec<u8>>,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Outcome<String> {
        let bytes = std::fs::read(path).map_err(|e| input_error(format!("cannot read {}: {}", path.display(), e)))?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| input_error(format!("{} is not UTF-8", path.display())))?;
        self.files.push(bytes);
        Ok(text)
    }

    fn json<T: for<'de> Deserialize<'de>>(&mut self, path: &Path) -> Outcome<T> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {}", path.display(), e)))
    }

    fn bimatrix(&mut self, path: &Path, normalize: bool) -> Outcome<BimatrixGame> {
        let g = NamedGame::from_json(&self.read(path)?)?.to_bimatrix()?;
        Ok(if normalize { g.normalize_payoffs() } else { g })
    }
}

pub fn budget_from(global: &GlobalArgs, env: Option<&str>) -> Outcome<Budget> {
    let mut b = Budget::default();
    if let Some(v) = global.budget_outcomes {
        b.max_outcomes = v;
    }
    if let Some(v) = global.budget_bundles {
        b.max_bundles = v;
    }
    if let Some(v) = global.budget_profiles {
        b.max_profiles = v;
    }
    if let Some(spec) = env.filter(|s| !s.trim().is_empty()) {
        for part in spec.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| input_error(format!("{} entry {:?} lacks '='", BUDGET_ENV, part)))?;
            let value: u128 = value
                .trim()
                .parse()
                .map_err(|_| input_error(format!("{} value {:?} is not a count", BUDGET_ENV, value)))?;
            match key.trim() {
                "outcomes" => b.max_outcomes = value,
                "bundles" => b.max_bundles = value,
                "profiles" => b.max_profiles = value,
                other => return Err(input_error(format!("unknown budget {:?} in {}", other, BUDGET_ENV))),
            }
        }
    }
    if b.max_outcomes == 0 || b.max_bundles == 0 || b.max_profiles == 0 {
        return Err(input_error("budgets must be positive"));
    }
    Ok(b)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn parse_eta(s: &str) -> Outcome<EtaSchedule> {
    let bad = || input_error(format!("unknown eta schedule {:?}", s));
    if s == "sqrt_t" {
        return Ok(EtaSchedule::sqrt_t());
    }
    if let Some(c) = s.strip_prefix("sqrt_t:") {
        let c: Rational = c.parse().map_err(|_| bad())?;
        return Ok(EtaSchedule::SqrtT { c });
    }
    if let Some(c) = s.strip_prefix("const:") {
        let c: Rational = c.parse().map_err(|_| bad())?;
        return Ok(EtaSchedule::Constant(c));
    }
    Err(bad())
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum BrouwerSpec {
    Identity,
    Centroid,
    Constant([Rational; 3]),
    /// Column-stochastic 3x3 matrix, rows given top to bottom.
    Affine(Vec<Vec<Rational>>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BorderFile {
    prior: Prior,
    rule: InterimRule,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MarketSolution {
    allocation: Vec<Vec<String>>,
    prices: Vec<Rational>,
}

fn separable(inputs: &mut Inputs, path: &Path) -> Outcome<SeparableFunction> {
    Ok(SeparableFunction::from_json(&inputs.read(path)?)?)
}

fn game_json(g: &BimatrixGame) -> Value {
    to_value(&NamedGame::from_bimatrix(g).to_file())
}

/// Runs one parsed command and returns its name and results.
fn dispatch(cli: &Cli, budget: &Budget, inputs: &mut Inputs) -> Outcome<(String, Value)> {
    let seed = cli.global.seed;
    let (name, results) = match &cli.command {
        Command::Zerosum(ZerosumCmd::Solve { game }) => {
            let g = ZeroSumGame::from_bimatrix(&inputs.bimatrix(game, false)?)?;
            let c = zerosum::solve_minimax_certified(&g)?;
            (
                "zerosum solve",
                json!({
                    "value": c.solution.value,
                    "x": c.solution.x,
                    "y": c.solution.y,
                    "row_lp_value": c.row_lp_value,
                    "column_lp_value": c.column_lp_value,
                }),
            )
        }
        Command::Dynamics(DynamicsCmd::Run {
            algo,
            game,
            steps,
            eta,
            feedback,
            normalize,
        }) => {
            let g = inputs.bimatrix(game, *normalize)?;
            let cfg = DynamicsConfig {
                eta: parse_eta(eta)?,
                feedback: match feedback {
                    Feedback::Exact => FeedbackMode::ExactMixed,
                    Feedback::Sampled => FeedbackMode::Sampled,
                },
                seed,
            };
            let trace = match algo {
                Algo::Fp => fictitious_play_run(&g, *steps, &cfg)?,
                Algo::Sfp => smooth_fp_run(&g, *steps, &cfg)?,
            };
            if let Some(path) = &cli.global.out {
                emit_trace_csv(&trace, path).map_err(|e| output_error(format!("{}: {}", path.display(), e)))?;
            }
            let last = trace.steps.last().expect("at least one step");
            (
                "dynamics run",
                json!({
                    "algorithm": trace.algorithm,
                    "steps": trace.len(),
                    "average_x": trace.average_x()?,
                    "average_y": trace.average_y()?,
                    "row_regret": last.row_regret,
                    "column_regret": last.column_regret,
                }),
            )
        }
        Command::Sparse(SparseCmd::Qptas {
            game,
            epsilon,
            max_size,
            normalize,
        }) => {
            let g = inputs.bimatrix(game, *normalize)?;
            let r = sparse::qptas_search(&g, epsilon, *max_size, budget)?;
            ("sparse qptas", to_value(&r))
        }
        Command::Sparse(SparseCmd::Lmm {
            game,
            epsilon,
            criterion,
            normalize,
        }) => {
            let g = inputs.bimatrix(game, *normalize)?;
            let eqs = support_enumeration(&g, None, budget)?;
            let (x, y) = eqs.first().ok_or_else(|| Error::invariant("support enumeration found no equilibrium"))?;
            let criterion = match criterion {
                Criterion::WellSupported => SuccessCriterion::WellSupported,
                Criterion::Plain => SuccessCriterion::Plain,
            };
            let r = sparse::lmm_sample(&g, (x, y), epsilon, seed, criterion)?;
            (
                "sparse lmm",
                json!({"sample_size": r.row_multiset.size(), "exact_x": x, "exact_y": y, "result": r}),
            )
        }
        Command::Tfnp(TfnpCmd::Eol { file }) => {
            let inst = EolInstance::parse(&inputs.read(file)?)?;
            let (sol, counter) = tfnp::eol_solve(&inst)?;
            let verified = tfnp::eol_verify(&inst, &sol)?;
            (
                "tfnp eol",
                json!({"solution": sol, "vertex": inst.format_vertex(sol.vertex), "queries": counter.count(), "verified": verified}),
            )
        }
        Command::Tfnp(TfnpCmd::Sperner { file }) => {
            let inst = SpernerInstance::parse(&inputs.read(file)?)?;
            let (count, cells) = tfnp::sperner_count(&inst);
            let path = tfnp::sperner_find(&inst)?;
            ("tfnp sperner", json!({"count": count, "cells": cells, "found": path}))
        }
        Command::Tfnp(TfnpCmd::Brouwer { function, epsilon }) => {
            let spec: BrouwerSpec = inputs.json(function)?;
            let f = match spec {
                BrouwerSpec::Identity => BrouwerFunction::identity(),
                BrouwerSpec::Centroid => BrouwerFunction::centroid(),
                BrouwerSpec::Constant(c) => BrouwerFunction::constant(c)?,
                BrouwerSpec::Affine(rows) => BrouwerFunction::affine(Matrix::from_rows(rows)?)?,
            };
            let grid = GridSpec::for_function(&f, epsilon.clone())?;
            let r = tfnp::brouwer_fixed_point(&f, &grid)?;
            ("tfnp brouwer", json!({"grid": grid, "result": r}))
        }
        Command::Reduce(ReduceCmd::Mt { function, eps }) => {
            let f = separable(inputs, function)?;
            let cube = DiscretizedHypercube::new(f.dim(), eps.clone())?;
            let map: GridMap = Arc::new(move |x: &[Rational]| f.eval(x));
            let mt = reductions::build_mt_game(map, &cube, budget)?;
            ("reduce mt", json!({"points": mt.points, "game": game_json(&mt.game)}))
        }
        Command::Reduce(ReduceCmd::Coordinatewise { function, eps }) => {
            let f = separable(inputs, function)?;
            let cube = DiscretizedHypercube::new(f.dim(), eps.clone())?;
            let g = reductions::build_coordinatewise_game(&f, &cube, budget)?;
            ("reduce coordinatewise", json!({"strategies": g.strategies, "game": game_json(&g.game)}))
        }
        Command::Reduce(ReduceCmd::Glued { function, eps }) => {
            let f = separable(inputs, function)?;
            let cube = DiscretizedHypercube::new(f.dim(), eps.clone())?;
            let g = reductions::build_glued_game(&f, &cube, budget)?;
            (
                "reduce glued",
                json!({"subsets": g.subsets, "strategies": g.strategies, "game": game_json(&g.game)}),
            )
        }
        Command::Reduce(ReduceCmd::Althofer { k }) => {
            let g = reductions::build_althofer(*k)?;
            let value = zerosum::solve_minimax(&g.game)?.value;
            (
                "reduce althofer",
                json!({"subsets": g.subsets, "value": value, "game": game_json(&g.game.to_bimatrix())}),
            )
        }
        Command::Ce(cmd) => ce(cmd, budget, inputs)?,
        Command::Market(cmd) => market(cmd, budget, inputs)?,
        Command::Border(cmd) => border_cmd(cmd, budget, inputs)?,
    };
    Ok((name.to_string(), results))
}

fn ce(cmd: &CeCmd, budget: &Budget, inputs: &mut Inputs) -> Outcome<(&'static str, Value)> {
    let common = match cmd {
        CeCmd::Build { common } | CeCmd::Check { common, .. } | CeCmd::Optimize { common, .. } | CeCmd::Poa { common } => {
            common
        }
    };
    let game = NamedGame::from_json(&inputs.read(&common.game)?)?.game;
    let kind: EquilibriumKind = common.kind.into();
    Ok(match cmd {
        CeCmd::Build { .. } => {
            let system = correlated::build_system(&game, kind, budget)?;
            (
                "ce build",
                json!({"kind": kind, "outcomes": system.num_outcomes(), "constraints": system.constraints}),
            )
        }
        CeCmd::Check { rho, epsilon, .. } => {
            let system = correlated::build_system(&game, kind, budget)?;
            let raw: JointDistribution = inputs.json(rho)?;
            let rho = JointDistribution::new(raw.shape().to_vec(), raw.probs().to_vec())?;
            ("ce check", to_value(&correlated::check_membership(&system, &rho, epsilon)?))
        }
        CeCmd::Optimize { sense, player, .. } => {
            let system = correlated::build_system(&game, kind, budget)?;
            let objective = match player {
                None => system.welfare(),
                Some(p) if *p < game.players() => (0..game.num_outcomes()).map(|k| game.payoff_at(k, *p).clone()).collect(),
                Some(p) => return Err(input_error(format!("no player {}", p))),
            };
            let sense = match sense {
                SenseArg::Max => Sense::Maximize,
                SenseArg::Min => Sense::Minimize,
            };
            let sol = correlated::optimize_over(&system, objective, sense)?;
            let rho = correlated::point_distribution(&system, &sol)?;
            ("ce optimize", json!({"objective": sol.objective, "distribution": rho}))
        }
        CeCmd::Poa { .. } => ("ce poa", to_value(&correlated::poa_report(&game, kind, None, budget)?)),
    })
}

fn allocation_json(m: &Market, a: &Allocation) -> Value {
    json!(a.bundles.iter().map(|&b| m.bundle_names(b)).collect::<Vec<_>>())
}

fn market(cmd: &MarketCmd, budget: &Budget, inputs: &mut Inputs) -> Outcome<(&'static str, Value)> {
    let path = match cmd {
        MarketCmd::Exists { market } | MarketCmd::Verify { market, .. } | MarketCmd::Lp { market } => market,
    };
    let m = Market::from_json(&inputs.read(path)?)?;
    Ok(match cmd {
        MarketCmd::Exists { .. } => {
            let c = markets::walrasian_exists(&m, budget)?;
            let named = c.allocation.as_ref().map(|a| allocation_json(&m, a));
            let mut v = to_value(&c);
            v["allocation_items"] = named.unwrap_or(Value::Null);
            ("market exists", v)
        }
        MarketCmd::Verify { solution, .. } => {
            let s: MarketSolution = inputs.json(solution)?;
            if s.allocation.len() != m.num_players() {
                return Err(input_error("allocation needs one bundle per player"));
            }
            let mut bundles = Vec::with_capacity(s.allocation.len());
            for items in &s.allocation {
                let mut mask = 0u32;
                for name in items {
                    let j = m
                        .items()
                        .iter()
                        .position(|x| x == name)
                        .ok_or_else(|| input_error(format!("unknown item {:?}", name)))?;
                    mask |= 1 << j;
                }
                bundles.push(mask);
            }
            let alloc = Allocation { bundles };
            let prices = PriceVector::new(s.prices)?;
            let report = markets::verify_walrasian(&m, &alloc, &prices)?;
            ("market verify", to_value(&report))
        }
        MarketCmd::Lp { .. } => {
            let r = markets::solve_configuration_lp(&m, budget)?;
            let integral = r.is_integral();
            let mut v = to_value(&r);
            v["integral"] = json!(integral);
            ("market lp", v)
        }
    })
}

fn border_cmd(cmd: &BorderCmd, budget: &Budget, inputs: &mut Inputs) -> Outcome<(&'static str, Value)> {
    Ok(match cmd {
        BorderCmd::Check { file } => {
            let f: BorderFile = inputs.json(file)?;
            let prior = Prior::new(f.prior.bidders)?;
            let rule = InterimRule::new(f.rule.y, f.rule.q)?;
            let necessary = border::necessary_condition(&prior, &rule)?;
            let violations = border::enumerate_border_violations(&prior, &rule, budget)?;
            (
                "border check",
                json!({"feasible": violations.is_empty(), "necessary": necessary, "violations": violations}),
            )
        }
        BorderCmd::Flow { file } => {
            let f: BorderFile = inputs.json(file)?;
            let prior = Prior::new(f.prior.bidders)?;
            let rule = InterimRule::new(f.rule.y, f.rule.q)?;
            let flow = border::feasibility_via_maxflow(&prior, &rule, budget)?;
            let violations = border::enumerate_border_violations(&prior, &rule, budget)?;
            let mut v = to_value(&flow);
            v["violations"] = to_value(&violations);
            ("border flow", v)
        }
        BorderCmd::Revenue { prior } => {
            let p = Prior::from_json(&inputs.read(prior)?)?;
            ("border revenue", to_value(&border::optimal_bic_revenue(&p, budget)?))
        }
        BorderCmd::Monopoly { prior, bidder } => {
            let p = Prior::from_json(&inputs.read(prior)?)?;
            let b = p
                .bidders
                .get(*bidder)
                .ok_or_else(|| input_error(format!("no bidder {}", bidder)))?;
            let (price, revenue) = border::monopoly_price(b)?;
            ("border monopoly", json!({"bidder": bidder, "price": price, "revenue": revenue}))
        }
    })
}

/// Parses `argv` (program name first), runs the command and writes the
/// report to `--out` or `stdout`. Diagnostics go to `stderr`.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{}", text);
            } else {
                let _ = write!(stdout, "{}", text);
            }
            return code;
        }
    };
    match execute(&cli, std::env::var(BUDGET_ENV).ok().as_deref()) {
        Ok(report) => {
            let text = report.to_json();
            let to_file = cli.global.out.as_ref().filter(|_| !matches!(cli.command, Command::Dynamics(_)));
            let written = match to_file {
                Some(path) => emit_report_json(&report, path).map_err(|e| output_error(format!("{}: {}", path.display(), e))),
                None => writeln!(stdout, "{}", text).map_err(|e| output_error(e.to_string())),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(f) => {
                    let _ = writeln!(stderr, "{}", f.message);
                    f.code
                }
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.message);
            f.code
        }
    }
}

/// Runs a parsed command on a thread pool of `--jobs` workers.
pub fn execute(cli: &Cli, budget_env: Option<&str>) -> Outcome<Report> {
    let budget = budget_from(&cli.global, budget_env)?;
    if cli.global.jobs == 0 {
        return Err(input_error("--jobs must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs)
        .build()
        .map_err(|e| Failure {
            code: EXIT_INVARIANT,
            message: format!("thread pool: {}", e),
        })?;
    let mut inputs = Inputs { files: Vec::new() };
    let (name, results) = pool.install(|| dispatch(cli, &budget, &mut inputs))?;
    Ok(Report::new(&name, &inputs.files, results))
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
