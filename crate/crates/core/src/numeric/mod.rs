//! Exact arithmetic, dense linear programming and max-flow.

mod flow;
mod lp;
mod matrix;
pub mod precision;
mod rational;

pub use flow::{max_flow, Capacity, FlowArc, FlowNetwork, MaxFlow};
pub use lp::{lp_solve, Constraint, LinearProgram, LpSolution, LpStatus, Relation, Sense, VarBounds};
pub use matrix::{dot, scale_to_integers, solve_square, Matrix};
pub use rational::{int, rat, ParseRationalError, Rational};
