//! Green-dotted webs, foams in good position as words of basic slices, their degrees, and
//! the sl2-action on foams with green-dot twists.

pub mod action;
pub mod foam;
pub mod web;

pub use action::{dot_twist, sl2_on_basic, sl2_on_decoration, sl2_on_word, Params};
pub use foam::{foam_degree, foam_degree_from_data, BasicFoam, Decoration, FoamKind, FoamLinComb, FoamWord};
pub use web::{greendot_normalize, DotKind, Edge, GreenDot, GreenDottedWeb, Shape, Vertex, VertexKind, Web};
