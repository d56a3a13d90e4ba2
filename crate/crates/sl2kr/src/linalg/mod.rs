//! Sparse exact linear algebra over a field and dense matrices over the base ring.

pub mod echelon;
pub mod pmat;

pub use echelon::{apply, axpy, kernel, rank, solve, Echelon, SVec};
pub use pmat::PMat;
