//! Exact equilibrium computation for finite games, no-regret dynamics,
//! path-following for End-of-Line and Sperner instances, fixed-point game
//! gadgets, correlated equilibria, Walrasian markets and single-item auction
//! feasibility.
//!
//! All payoffs, probabilities and prices are exact rationals.

pub mod border;
pub mod budget;
pub mod correlated;
pub mod dynamics;
pub mod error;
pub mod games;
pub mod markets;
pub mod numeric;
pub mod reductions;
pub mod rng;
pub mod sparse;
pub mod tfnp;
pub mod zerosum;

pub use budget::Budget;
pub use error::{Error, Result};
pub use numeric::{int, rat, Matrix, Rational};
