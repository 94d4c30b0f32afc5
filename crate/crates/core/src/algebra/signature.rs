use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of basis vectors.
pub const MAX_DIM: usize = 8;

/// Metric signature `(p, q)` of a nondegenerate quadratic space.
///
/// Basis vectors `0..p` square to `+1`, vectors `p..p+q` square to `-1`.
/// The conformal algebras place the Euclidean vectors first, then `e`
/// (square `+1`) and finally `ē` (square `-1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    p: u8,
    q: u8,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 || p + q > MAX_DIM {
            return Err(Error::UnsupportedSignature { p, q });
        }
        Ok(Self {
            p: p as u8,
            q: q as u8,
        })
    }

    /// The conformal signature `(d + 1, 1)` for Euclidean dimension `d`.
    pub fn conformal(d: usize) -> Result<Self> {
        if !(2..=3).contains(&d) {
            return Err(Error::UnsupportedDimension(d));
        }
        Self::new(d + 1, 1)
    }

    pub fn p(self) -> usize {
        self.p as usize
    }

    pub fn q(self) -> usize {
        self.q as usize
    }

    /// Number of basis vectors.
    pub fn dim(self) -> usize {
        (self.p + self.q) as usize
    }

    /// Number of basis blades, `2^(p+q)`.
    pub fn blade_count(self) -> usize {
        1 << self.dim()
    }

    /// Square of basis vector `i`.
    pub fn metric(self, i: usize) -> f64 {
        debug_assert!(i < self.dim());
        if i < self.p() {
            1.0
        } else {
            -1.0
        }
    }

    /// Bitmask of the basis vectors that square to `-1`.
    pub(crate) fn negative_mask(self) -> usize {
        ((1usize << self.q) - 1) << self.p
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.p, self.q)
    }
}
