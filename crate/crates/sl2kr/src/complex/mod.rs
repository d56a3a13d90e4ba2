//! Link diagrams, the cube of resolutions, equivariant twists and simplification.

pub mod chain;
pub mod cube;
pub mod diagram;
pub mod invariance;
pub mod local;
pub mod ops;

pub use chain::{ChainComplex, Failure, Simplified};
pub use cube::{Cube, CubeOptions, Framing, GreenDot};
pub use diagram::LinkDiagram;
pub use local::{resolve_crossing, LocalComplex, LocalTerm};
pub use ops::{across, check_equivariance, cobordism_map, frame_correct, slide_green_dot, ChainMap, Elementary, EquivarianceReport};
pub use invariance::{invariance_suite, run_case, suite_cases, CanonicalReport, CaseResult, Outcome, Setup, SuiteCase};
