//! Exact scalars, sparse graded polynomials, symmetric functions, quantum integers
//! and the sl2-action on polynomial algebras.

pub mod laurent;
pub mod poly;
pub mod scalar;
pub mod sl2;
pub mod symfunc;

pub use laurent::{qbinom, quantum_factorial, quantum_int, LaurentQ};
pub use poly::{Alphabet, Exps, Poly};
pub use scalar::{Field, Rat, Scalar};
pub use sl2::{base_alphabet, base_images, sl2_on_base, sl2_on_poly, Sl2};
pub use symfunc::{newton_convert, SymBasis, SymFunc};
