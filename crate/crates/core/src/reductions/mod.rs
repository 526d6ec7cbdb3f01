//! Games whose equilibria encode fixed points: the McLennan–Tourky
//! imitation game, coordinatewise play for separable functions, Althöfer
//! games and their combination with coordinatewise play.

mod althofer;
mod coordinatewise;
mod cube;
mod glued;
mod mt;

pub use althofer::{althofer_punishment, build_althofer, AlthoferGame, Punishment};
pub use coordinatewise::{build_coordinatewise_game, CoordinatewiseGame};
pub use cube::{DiscretizedHypercube, PiecewiseLinear, SeparableFunction};
pub use glued::{build_glued_game, GluedGame, GluedStrategy, GLUE_WEIGHTS};
pub use mt::{build_mt_game, extract_fixed_point, ExtractedPoint, GridMap, MtGame};
