//! Geometric algebra engine for arbitrary nondegenerate signatures `(p, q)`
//! with `p + q <= 8`.

mod cayley;
mod multivector;
mod ops;
mod signature;

pub use cayley::{blade_product, Blade};
pub use multivector::Multivector;
pub use signature::{Signature, MAX_DIM};
