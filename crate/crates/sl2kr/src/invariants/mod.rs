//! Invariants derived from the homology: the MOY polynomial (an independent oracle for the
//! Euler characteristic), the Rasmussen invariant, and the two p-DG theories.

pub mod moy;
pub mod pdg;
pub mod rasmussen;

pub use moy::{braid_state_sum, circle_state_sum, moy_polynomial};
pub use pdg::{
    grothendieck_image, jordan_blocks, pdg_e_homology, pdg_f_homology, slash_classes, Block, CyclotomicValue, PComplex,
    PdgReport,
};
pub use rasmussen::{lee_levels, rasmussen_s, Rasmussen};
