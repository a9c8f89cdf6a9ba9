//! The group `K` of the non-flat homogeneous model and its Lie algebra data.

pub mod checks;
pub mod group;
pub mod model;
pub mod nil;

pub use checks::{check_k, displayed_sbar, g_minus_one, s_and_sbar, KCheckReport};
pub use group::{KElement, KGroup};
pub use model::KModel;
pub use nil::NilAlgebra;
