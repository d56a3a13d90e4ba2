//! sl2-equivariant gl(N) Khovanov–Rozansky homology at desk scale.
//!
//! The pipeline goes diagram → cube of resolutions ([`complex`]) built from
//! state spaces ([`tqft`]) → degreewise homology with the sl2-action ([`homology`])
//! → derived invariants ([`invariants`]). [`ring`] holds the exact arithmetic and
//! [`webfoam`] the symbolic web/foam layer.

pub mod complex;
pub mod error;
pub mod exec;
pub mod homology;
pub mod invariants;
pub mod linalg;
pub mod ring;
pub mod tqft;
pub mod webfoam;

pub use error::{Error, Result};
