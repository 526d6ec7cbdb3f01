//! Path-following for End-of-Line and Sperner instances, and approximate
//! Brouwer fixed points on the 2-simplex via Sperner colorings.

mod brouwer;
mod eol;
mod sperner;

pub use brouwer::{
    brouwer_fixed_point, coloring_from_function, BrouwerFunction, BrouwerResult, ColoringOutcome, GridSpec,
    RESIDUAL_CONSTANT,
};
pub use eol::{eol_solve, eol_verify, EolCase, EolInstance, EolSolution, QueryCounter};
pub use sperner::{sperner_count, sperner_find, Cell, Color, LatticePoint, SpernerInstance, SpernerPath};
