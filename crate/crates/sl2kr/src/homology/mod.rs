//! Truncated homology over `R = k[E_1..E_N]` with its sl2-action, and the structure of the
//! resulting sl2-modules.

pub mod module;
pub mod realize;
pub mod sl2mod;
pub mod window;

pub use module::{Homology, Piece};
pub use realize::{Op, Realization, Relation};
pub use sl2mod::{r_span_dims, Constituent, Kind, Sl2Report, WeightRow};
pub use window::{monomials, Window};

