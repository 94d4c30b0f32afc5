//! Basis-blade products and the per-signature Cayley table.
//!
//! Blades are bitmasks: bit `i` set means basis vector `i` is a factor, and
//! the blade is the product of its factors in ascending index order. The
//! product of two blades is the XOR of their masks; the sign comes from the
//! transpositions needed to bring the concatenated factor list into
//! ascending order, times the metric of every factor that cancels.

use std::sync::OnceLock;

use super::signature::{Signature, MAX_DIM};

/// Basis blade bitmask.
pub type Blade = usize;

/// Parity of the number of transpositions needed to merge `a` followed by
/// `b` into ascending order.
fn reorder_sign(a: Blade, b: Blade) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Geometric product of two basis blades: `(sign, blade)`.
///
/// The sign is never zero because degenerate metrics are not supported.
pub fn blade_product(a: Blade, b: Blade, sig: Signature) -> (f64, Blade) {
    let mut sign = reorder_sign(a, b);
    if ((a & b) & sig.negative_mask()).count_ones() & 1 == 1 {
        sign = -sign;
    }
    (sign, a ^ b)
}

/// Dense table of blade-product signs. The result blade is always `a ^ b`,
/// so only the sign is stored, row-major by the left operand.
pub(crate) struct CayleyTable {
    size: usize,
    signs: Vec<f64>,
}

impl CayleyTable {
    fn build(sig: Signature) -> Self {
        let size = sig.blade_count();
        let mut signs = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                signs.push(blade_product(a, b, sig).0);
            }
        }
        Self { size, signs }
    }

    #[inline]
    pub(crate) fn row(&self, a: Blade) -> &[f64] {
        &self.signs[a * self.size..(a + 1) * self.size]
    }
}

static TABLES: [OnceLock<CayleyTable>; (MAX_DIM + 1) * (MAX_DIM + 1)] =
    [const { OnceLock::new() }; (MAX_DIM + 1) * (MAX_DIM + 1)];

/// Table for `sig`, built on first use and shared read-only afterwards.
pub(crate) fn table(sig: Signature) -> &'static CayleyTable {
    TABLES[sig.p() * (MAX_DIM + 1) + sig.q()].get_or_init(|| CayleyTable::build(sig))
}
