//! State spaces of resolution webs, edge maps between them, and the twisted sl2-action.

pub mod foams;
pub mod models;
pub mod space;
pub mod tower;

pub use foams::{
    action_defect, as_complex, check_flat, commutator, foam_matrix, lincomb_matrix, slice_matrix, sl2_ops, solve_dots, DotSlot, GradedMap, WebSpace,
};
pub use models::{cup_twist, LocalCrossing, Model, Res, TurnbackModel, TwoStrandModel};
pub use space::{equivariance_defect, EdgeMap, StateSpace, Twist};
pub use tower::{Tower, TowerVar};
