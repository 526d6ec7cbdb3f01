//! Exponential Weights, fictitious play, smooth fictitious play and regret.

mod ew;
mod fp;
mod regret;
mod trace;

pub use ew::{ew_update, run_ew, EtaSchedule, LearnerState, RewardVector};
pub use fp::{fictitious_play_run, smooth_fp_run, DynamicsConfig, FeedbackMode, SFP_HORIZON_CONSTANT};
pub use regret::{regret_of, regret_of_actions};
pub use trace::{cce_from_trace, Step, Trace};
