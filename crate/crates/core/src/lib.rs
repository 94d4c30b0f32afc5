//! Conformal geometric algebra for 2D and 3D Euclidean geometry.
//!
//! Euclidean points are embedded as null vectors of the conformal algebra
//! `G(d+1, 1)`. Lines, circles, planes and spheres are blades built by
//! wedging points; Euclidean motions are versors acting by sandwich
//! products; intersections come from contracting one primitive with the
//! dual of another.
//!
//! ```
//! use cga::conformal::{distance, embed, EuclideanPoint};
//!
//! let a = embed(&EuclideanPoint::new(vec![0.0, 0.0, 0.0]).unwrap());
//! let b = embed(&EuclideanPoint::new(vec![3.0, 4.0, 0.0]).unwrap());
//! assert!((distance(a.vector(), b.vector()).unwrap() - 5.0).abs() < 1e-12);
//! ```

pub mod algebra;
pub mod bounce;
pub mod conformal;
pub mod error;
pub mod meet;
pub mod primitives;
pub mod transforms;

pub use algebra::{blade_product, Blade, Multivector, Signature};
pub use error::{Error, Result};
