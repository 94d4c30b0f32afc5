use std::fmt;

use super::cayley::{table, Blade};
use super::signature::Signature;
use crate::error::{Error, Result};

/// Dense multivector: one real coefficient per basis blade, indexed by blade
/// bitmask.
#[derive(Clone, PartialEq)]
pub struct Multivector {
    sig: Signature,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            coeffs: vec![0.0; sig.blade_count()],
        }
    }

    pub fn scalar(sig: Signature, value: f64) -> Self {
        Self::blade(sig, 0, value)
    }

    /// `value` times the basis blade `blade`.
    pub fn blade(sig: Signature, blade: Blade, value: f64) -> Self {
        let mut mv = Self::zero(sig);
        mv.coeffs[blade] = value;
        mv
    }

    pub fn basis_vector(sig: Signature, index: usize) -> Result<Self> {
        if index >= sig.dim() {
            return Err(Error::BasisOutOfRange { index, sig });
        }
        Ok(Self::blade(sig, 1 << index, 1.0))
    }

    /// Grade-1 element with the given components along each basis vector.
    pub fn vector(sig: Signature, components: &[f64]) -> Result<Self> {
        if components.len() != sig.dim() {
            return Err(Error::CoefficientCount {
                expected: sig.dim(),
                actual: components.len(),
            });
        }
        let mut mv = Self::zero(sig);
        for (i, &c) in components.iter().enumerate() {
            mv.coeffs[1 << i] = c;
        }
        mv.check_finite()?;
        Ok(mv)
    }

    pub fn from_coeffs(sig: Signature, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != sig.blade_count() {
            return Err(Error::CoefficientCount {
                expected: sig.blade_count(),
                actual: coeffs.len(),
            });
        }
        let mv = Self { sig, coeffs };
        mv.check_finite()?;
        Ok(mv)
    }

    /// Unit pseudoscalar `e_0 e_1 ... e_{n-1}` in ascending basis order.
    pub fn pseudoscalar(sig: Signature) -> Self {
        Self::blade(sig, sig.blade_count() - 1, 1.0)
    }

    fn check_finite(&self) -> Result<()> {
        if self.coeffs.iter().all(|c| c.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, blade: Blade) -> f64 {
        self.coeffs[blade]
    }

    pub fn set_coeff(&mut self, blade: Blade, value: f64) {
        self.coeffs[blade] = value;
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Coefficients of the grade-1 part, in basis order.
    pub fn vector_part(&self) -> Vec<f64> {
        (0..self.sig.dim()).map(|i| self.coeffs[1 << i]).collect()
    }

    /// Euclidean (coefficient-space) norm. Not a metric quantity; used as a
    /// scale reference for relative tolerances.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Largest coefficient magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.assert_same(other);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Grades with at least one nonzero coefficient.
    pub fn grades(&self) -> Vec<usize> {
        let mut present = vec![false; self.sig.dim() + 1];
        for (blade, &c) in self.coeffs.iter().enumerate() {
            if c != 0.0 {
                present[blade.count_ones() as usize] = true;
            }
        }
        present
            .iter()
            .enumerate()
            .filter_map(|(g, &p)| p.then_some(g))
            .collect()
    }

    /// True when every coefficient outside grade `r` is below
    /// `rel_tol * coeff_norm()`.
    pub fn is_homogeneous(&self, r: usize, rel_tol: f64) -> bool {
        let limit = rel_tol * self.coeff_norm();
        self.coeffs
            .iter()
            .enumerate()
            .all(|(blade, &c)| blade.count_ones() as usize == r || c.abs() <= limit)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            sig: self.sig,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.sig == other.sig {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                left: self.sig,
                right: other.sig,
            })
        }
    }

    fn assert_same(&self, other: &Self) {
        if let Err(e) = self.check_same(other) {
            panic!("{e}");
        }
    }

    /// Grade-`r` part.
    pub fn grade_project(&self, r: usize) -> Result<Self> {
        if r > self.sig.dim() {
            return Err(Error::GradeOutOfRange {
                grade: r,
                sig: self.sig,
            });
        }
        Ok(self.grade(r))
    }

    /// Grade-`r` part; out-of-range grades give zero.
    pub fn grade(&self, r: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(blade, &c)| {
                if blade.count_ones() as usize == r {
                    c
                } else {
                    0.0
                }
            })
            .collect();
        Self {
            sig: self.sig,
            coeffs,
        }
    }

    /// Reversion: grade `r` picks up `(-1)^(r(r-1)/2)`.
    pub fn reverse(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(blade, &c)| if reverse_flips(blade) { -c } else { c })
            .collect();
        Self {
            sig: self.sig,
            coeffs,
        }
    }

    /// Geometric product.
    pub fn geometric_product(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(self.gp(rhs))
    }

    /// Outer (wedge) product.
    pub fn outer_product(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(self.filtered_product(rhs, |a, b| a & b == 0))
    }

    /// Inner product: for grades `r, s >= 1` the grade-`|r - s|` part of the
    /// geometric product, extended bilinearly. Scalars give zero.
    pub fn inner_product(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(self.filtered_product(rhs, |a, b| {
            let (ga, gb) = (a.count_ones(), b.count_ones());
            ga > 0 && gb > 0 && (a ^ b).count_ones() == ga.abs_diff(gb)
        }))
    }

    pub(crate) fn gp(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        let t = table(self.sig);
        let mut out = vec![0.0; self.coeffs.len()];
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let row = t.row(a);
            for (b, &y) in rhs.coeffs.iter().enumerate() {
                out[a ^ b] += row[b] * x * y;
            }
        }
        Self {
            sig: self.sig,
            coeffs: out,
        }
    }

    fn filtered_product(&self, rhs: &Self, keep: impl Fn(Blade, Blade) -> bool) -> Self {
        self.assert_same(rhs);
        let t = table(self.sig);
        let mut out = vec![0.0; self.coeffs.len()];
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let row = t.row(a);
            for (b, &y) in rhs.coeffs.iter().enumerate() {
                if y != 0.0 && keep(a, b) {
                    out[a ^ b] += row[b] * x * y;
                }
            }
        }
        Self {
            sig: self.sig,
            coeffs: out,
        }
    }

    /// `sqrt(|<A rev(A)>|)`.
    pub fn magnitude(&self) -> f64 {
        self.gp(&self.reverse()).scalar_part().abs().sqrt()
    }

    /// Scalar part of `self * self`, for elements known to square to a scalar.
    pub fn scalar_square(&self) -> f64 {
        // <AA> = sum over blades of c_b^2 * (b*b sign); avoids the full product.
        let t = table(self.sig);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0.0)
            .map(|(b, &c)| c * c * t.row(b)[b])
            .sum()
    }

    /// Exponential of a simple bivector.
    ///
    /// Uses the closed forms for `B² = 0`, `B² < 0` and `B² > 0`; any
    /// bivector whose square has non-scalar parts is rejected.
    pub fn exp_bivector(&self) -> Result<Self> {
        if !self.is_homogeneous(2, 1e-12) {
            return Err(Error::WrongGrade { expected: 2 });
        }
        let b = self.grade(2);
        let sq = b.gp(&b);
        let scale = b.coeff_norm().powi(2);
        if !sq.is_homogeneous(0, 1e-10) && sq.coeff_norm() > 1e-10 * scale {
            return Err(Error::NonSimpleBivector);
        }
        let s = sq.scalar_part();
        let one = Self::scalar(self.sig, 1.0);
        if s.abs() <= 1e-14 * scale {
            return Ok(&one + &b);
        }
        let theta = s.abs().sqrt();
        let (c, k) = if s < 0.0 {
            (theta.cos(), theta.sin() / theta)
        } else {
            (theta.cosh(), theta.sinh() / theta)
        };
        Ok(&one.scale(c) + &b.scale(k))
    }
}

/// Whether reversion negates the blade.
pub(crate) fn reverse_flips(blade: Blade) -> bool {
    let r = blade.count_ones();
    (r * r.saturating_sub(1) / 2) % 2 == 1
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.sig)?;
        let mut first = true;
        for (blade, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if blade != 0 {
                write!(f, "*e")?;
                for i in 0..self.sig.dim() {
                    if blade & (1 << i) != 0 {
                        write!(f, "{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "]")
    }
}
