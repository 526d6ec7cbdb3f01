//! Game representations and equilibrium verification.

mod bimatrix;
pub mod io;
pub mod nash;
mod normal_form;
mod strategy;
mod verify;

pub use bimatrix::{BimatrixGame, Player};
pub use normal_form::{NormalFormGame, ProfileIter};
pub use strategy::{JointDistribution, MixedStrategy};
pub use verify::{
    verify_epsilon_ne, verify_well_supported, NeReport, Offender, VerificationQuery, WellSupportedReport,
};
