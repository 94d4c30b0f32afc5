//! The conformal model: Euclidean points as null vectors of `G(d+1, 1)`.
//!
//! Basis layout for Euclidean dimension `d`: `e_1..e_d` occupy bits
//! `0..d`, `e` (square `+1`) bit `d` and `ē` (square `-1`) bit `d + 1`.
//! The null vectors `n = e + ē` (point at infinity) and `n̄ = e - ē`
//! satisfy `n·n̄ = 2`, and a point `x` maps to `F(x) = 2x + x² n - n̄`.

use crate::algebra::{Blade, Multivector, Signature};
use crate::error::{Error, Result};

/// Default relative tolerance for the null test `|X²| <= ε (X·n)²`.
pub const DEFAULT_NULL_TOLERANCE: f64 = 1e-9;

/// `|X·n|` below this fraction of `|X|` means the vector has no finite
/// Euclidean image.
const INFINITY_TOLERANCE: f64 = 1e-14;

/// Conformal algebra for Euclidean dimension 2 or 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Space {
    dim: usize,
    sig: Signature,
}

impl Space {
    pub fn new(dim: usize) -> Result<Self> {
        Ok(Self {
            dim,
            sig: Signature::conformal(dim)?,
        })
    }

    pub fn from_signature(sig: Signature) -> Result<Self> {
        if sig.q() != 1 || !(3..=4).contains(&sig.p()) {
            return Err(Error::NotConformal(sig));
        }
        Ok(Self {
            dim: sig.p() - 1,
            sig,
        })
    }

    /// The space a multivector lives in.
    pub fn of(mv: &Multivector) -> Result<Self> {
        Self::from_signature(mv.signature())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    /// Euclidean basis vector `e_{i+1}`.
    pub fn e(&self, i: usize) -> Multivector {
        assert!(i < self.dim, "Euclidean index {i} out of range");
        Multivector::blade(self.sig, 1 << i, 1.0)
    }

    /// `e`, squaring to `+1`.
    pub fn e_plus(&self) -> Multivector {
        Multivector::blade(self.sig, self.e_plus_bit(), 1.0)
    }

    /// `ē`, squaring to `-1`.
    pub fn e_minus(&self) -> Multivector {
        Multivector::blade(self.sig, self.e_minus_bit(), 1.0)
    }

    pub(crate) fn e_plus_bit(&self) -> Blade {
        1 << self.dim
    }

    pub(crate) fn e_minus_bit(&self) -> Blade {
        1 << (self.dim + 1)
    }

    pub(crate) fn euclidean_mask(&self) -> Blade {
        (1 << self.dim) - 1
    }

    /// Point at infinity `n = e + ē`.
    pub fn n(&self) -> Multivector {
        &self.e_plus() + &self.e_minus()
    }

    /// `n̄ = e - ē`; `-n̄` represents the origin.
    pub fn nbar(&self) -> Multivector {
        &self.e_plus() - &self.e_minus()
    }

    /// `N = e ē`, with `N² = 1`.
    pub fn minkowski_plane(&self) -> Multivector {
        Multivector::blade(self.sig, self.e_plus_bit() | self.e_minus_bit(), 1.0)
    }

    /// Euclidean vector with the given coordinates.
    pub fn vector(&self, coords: &[f64]) -> Result<Multivector> {
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: coords.len(),
            });
        }
        let mut v = Multivector::zero(self.sig);
        for (i, &c) in coords.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFinite);
            }
            v.set_coeff(1 << i, c);
        }
        Ok(v)
    }

    /// Unit Euclidean bivector `e_{i+1} e_{j+1}`.
    pub fn euclidean_plane(&self, i: usize, j: usize) -> Multivector {
        &self.e(i) * &self.e(j)
    }

    /// True when only blades built from `e_1..e_d` carry weight.
    pub fn is_euclidean(&self, mv: &Multivector) -> bool {
        let outside = !self.euclidean_mask();
        let limit = 1e-12 * mv.coeff_norm();
        mv.coeffs()
            .iter()
            .enumerate()
            .all(|(blade, &c)| blade & outside == 0 || c.abs() <= limit)
    }

    /// Coefficients of `e_1..e_d`.
    pub fn euclidean_coords(&self, mv: &Multivector) -> Vec<f64> {
        (0..self.dim).map(|i| mv.coeff(1 << i)).collect()
    }

    /// Pseudoscalar with the conventional ordering of the extra vectors:
    /// `e1 e2 ē e` in the plane and `e1 e2 e3 e ē` in space.
    pub fn pseudoscalar(&self) -> Multivector {
        let ascending = Multivector::pseudoscalar(self.sig);
        if self.dim == 2 {
            -ascending
        } else {
            ascending
        }
    }

    /// Dual `I A`.
    pub fn dual(&self, a: &Multivector) -> Multivector {
        &self.pseudoscalar() * a
    }

    pub(crate) fn check(&self, mv: &Multivector) -> Result<()> {
        if mv.signature() == self.sig {
            Ok(())
        } else {
            Err(Error::SignatureMismatch {
                left: self.sig,
                right: mv.signature(),
            })
        }
    }
}

/// A point of the Euclidean plane or space.
#[derive(Clone, Debug, PartialEq)]
pub struct EuclideanPoint {
    coords: Vec<f64>,
}

impl EuclideanPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if !(2..=3).contains(&coords.len()) {
            return Err(Error::UnsupportedDimension(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { coords })
    }

    pub fn origin(dim: usize) -> Result<Self> {
        Self::new(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn space(&self) -> Space {
        Space::new(self.dim()).expect("dimension validated on construction")
    }

    /// Position vector in the conformal algebra.
    pub fn to_vector(&self) -> Multivector {
        self.space()
            .vector(&self.coords)
            .expect("coordinates validated on construction")
    }

    pub fn norm_squared(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum()
    }

    /// Plain Euclidean distance.
    pub fn euclidean_distance(&self, other: &Self) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// A finite point as a null vector normalised to `X·n = -2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalPoint {
    vec: Multivector,
}

impl ConformalPoint {
    pub fn vector(&self) -> &Multivector {
        &self.vec
    }

    pub fn into_vector(self) -> Multivector {
        self.vec
    }

    pub fn space(&self) -> Space {
        Space::of(&self.vec).expect("constructed in a conformal space")
    }

    /// Euclidean coordinates `x_i = X_i / 2`.
    pub fn to_euclidean(&self) -> EuclideanPoint {
        let coords = self
            .space()
            .euclidean_coords(&self.vec)
            .into_iter()
            .map(|c| c / 2.0)
            .collect();
        EuclideanPoint { coords }
    }
}

/// Stereographic image of `x` on the unit sphere in `span{e_1..e_d, e}`:
/// `S(x) = 2x/(1+x²) - (1-x²)/(1+x²) e`.
pub fn stereographic(x: &EuclideanPoint) -> Multivector {
    let space = x.space();
    let r2 = x.norm_squared();
    let denom = 1.0 + r2;
    &x.to_vector().scale(2.0 / denom) - &space.e_plus().scale((1.0 - r2) / denom)
}

/// `F(x) = 2x + x² n - n̄`.
pub fn embed(x: &EuclideanPoint) -> ConformalPoint {
    let space = x.space();
    let vec = &(&x.to_vector().scale(2.0) + &space.n().scale(x.norm_squared())) - &space.nbar();
    ConformalPoint { vec }
}

/// `X ↦ -2 X / (X·n)` with the default null tolerance.
pub fn normalize_point(x: &Multivector) -> Result<ConformalPoint> {
    normalize_point_with(x, DEFAULT_NULL_TOLERANCE)
}

/// Like [`normalize_point`] with an explicit relative null tolerance.
pub fn normalize_point_with(x: &Multivector, null_tolerance: f64) -> Result<ConformalPoint> {
    let space = Space::of(x)?;
    if x.is_zero() || !x.is_homogeneous(1, 1e-12) {
        return Err(Error::NotAPoint);
    }
    let x = x.grade(1);
    let xn = (&x | &space.n()).scalar_part();
    let x2 = x.scalar_square();
    let norm = x.coeff_norm();
    if xn.abs() <= INFINITY_TOLERANCE * norm {
        return if x2.abs() <= null_tolerance * norm * norm {
            Err(Error::PointAtInfinity)
        } else {
            Err(Error::NotAPoint)
        };
    }
    if x2.abs() > null_tolerance * xn * xn {
        return Err(Error::NotAPoint);
    }
    Ok(ConformalPoint {
        vec: x.scale(-2.0 / xn),
    })
}

/// Normalises a vector computed inside the kernel (a centre, a decoded
/// intersection). Rounding leaves a residual square proportional to the
/// squared coefficient norm, so the null test is measured against that
/// rather than against `(X·n)²`.
pub(crate) fn normalize_derived(x: &Multivector) -> Result<ConformalPoint> {
    let space = Space::of(x)?;
    let xn = (x | &space.n()).scalar_part();
    let norm = x.coeff_norm();
    let spread = if xn == 0.0 {
        1.0
    } else {
        (norm / xn).powi(2).max(1.0)
    };
    normalize_point_with(x, DEFAULT_NULL_TOLERANCE * spread)
}

/// Euclidean point of a (possibly unnormalised) conformal point.
pub fn extract_point(x: &Multivector) -> Result<EuclideanPoint> {
    Ok(normalize_point(x)?.to_euclidean())
}

/// Euclidean distance from the conformal inner product,
/// `|x - y|² = -2 X·Y / ((X·n)(Y·n))`.
pub fn distance(x: &Multivector, y: &Multivector) -> Result<f64> {
    distance_with(x, y, DEFAULT_NULL_TOLERANCE)
}

pub fn distance_with(x: &Multivector, y: &Multivector, null_tolerance: f64) -> Result<f64> {
    // validation only: both must be finite null vectors
    normalize_point_with(x, null_tolerance)?;
    normalize_point_with(y, null_tolerance)?;
    let n = Space::of(x)?.n();
    let xy = x.inner_product(y)?.scalar_part();
    let xn = (x | &n).scalar_part();
    let yn = (y | &n).scalar_part();
    let d2 = -2.0 * xy / (xn * yn);
    Ok(d2.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[f64]) -> EuclideanPoint {
        EuclideanPoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn null_basis_relations() {
        for d in [2, 3] {
            let s = Space::new(d).unwrap();
            assert_eq!(s.n().scalar_square(), 0.0);
            assert_eq!(s.nbar().scalar_square(), 0.0);
            assert_eq!((&s.n() | &s.nbar()).scalar_part(), 2.0);
            assert_eq!(s.minkowski_plane().scalar_square(), 1.0);
        }
    }

    #[test]
    fn pseudoscalar_orderings() {
        // plane: I = e1 e2 ē e = -(e1 e2 e ē)
        let s2 = Space::new(2).unwrap();
        let expected2 = &(&(&s2.e(0) * &s2.e(1)) * &s2.e_minus()) * &s2.e_plus();
        assert_eq!(s2.pseudoscalar(), expected2);
        let s3 = Space::new(3).unwrap();
        let expected3 = &(&(&(&s3.e(0) * &s3.e(1)) * &s3.e(2)) * &s3.e_plus()) * &s3.e_minus();
        assert_eq!(s3.pseudoscalar(), expected3);
    }

    #[test]
    fn pseudoscalar_identities() {
        for d in [2, 3] {
            let s = Space::new(d).unwrap();
            let i = s.pseudoscalar();
            assert_eq!((&i * &i).scalar_part(), -1.0);
            for k in 0..d + 2 {
                let a = Multivector::basis_vector(s.signature(), k).unwrap();
                let ia = &i * &a;
                let ai = &a * &i;
                if d == 2 {
                    assert_eq!(ia, -ai);
                } else {
                    assert_eq!(ia, ai);
                }
            }
        }
    }

    #[test]
    fn stereographic_unit_circle_is_fixed() {
        let x = pt(&[0.6, 0.8, 0.0]);
        let s = stereographic(&x);
        assert!(s.max_abs_diff(&x.to_vector()) < 1e-15);
    }

    #[test]
    fn stereographic_origin_maps_to_minus_nbar() {
        let x = pt(&[0.0, 0.0]);
        let s = stereographic(&x);
        let space = x.space();
        assert_eq!(&s + &space.e_minus(), -space.nbar());
    }

    #[test]
    fn stereographic_is_unit_and_scales_to_embedding() {
        let x = pt(&[1.5, -0.25, 3.0]);
        let s = stereographic(&x);
        assert!((s.scalar_square() - 1.0).abs() < 1e-14);
        let lifted = (&s + &x.space().e_minus()).scale(1.0 + x.norm_squared());
        assert!(lifted.max_abs_diff(embed(&x).vector()) < 1e-13);
    }

    #[test]
    fn embed_origin_is_minus_nbar() {
        let x = pt(&[0.0, 0.0, 0.0]);
        assert_eq!(*embed(&x).vector(), -x.space().nbar());
    }

    #[test]
    fn embed_unit_x() {
        let x = pt(&[1.0, 0.0, 0.0]);
        let s = x.space();
        let big_x = embed(&x);
        let expected = &(&s.e(0).scale(2.0) + &s.n()) - &s.nbar();
        assert_eq!(*big_x.vector(), expected);
        assert_eq!((big_x.vector() | &s.n()).scalar_part(), -2.0);
        assert_eq!(big_x.vector().scalar_square(), 0.0);
    }

    #[test]
    fn normalize_is_homogeneous_and_idempotent() {
        let x = pt(&[3.0, 4.0, 0.0]);
        let big = embed(&x).vector().scale(5.0);
        let once = normalize_point(&big).unwrap();
        assert!(once.vector().max_abs_diff(embed(&x).vector()) < 1e-14);
        let twice = normalize_point(once.vector()).unwrap();
        assert_eq!(once, twice);
        assert_eq!(extract_point(&embed(&x).vector().scale(7.0)).unwrap(), x);
        assert_eq!(extract_point(&embed(&x).vector().scale(-0.5)).unwrap(), x);
    }

    #[test]
    fn normalize_rejects_infinity_and_non_null() {
        let s = Space::new(3).unwrap();
        assert_eq!(normalize_point(&s.n()), Err(Error::PointAtInfinity));
        assert_eq!(
            normalize_point(&s.n().scale(4.0)),
            Err(Error::PointAtInfinity)
        );
        assert_eq!(normalize_point(&s.e(0)), Err(Error::NotAPoint));
        assert_eq!(normalize_point(&s.e_plus()), Err(Error::NotAPoint));
        assert_eq!(
            normalize_point(&Multivector::zero(s.signature())),
            Err(Error::NotAPoint)
        );
        assert_eq!(normalize_point(&s.minkowski_plane()), Err(Error::NotAPoint));
    }

    #[test]
    fn distance_examples() {
        let a = embed(&pt(&[1.0, 0.0, 0.0]));
        let b = embed(&pt(&[-1.0, 0.0, 0.0]));
        assert!((distance(a.vector(), b.vector()).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(distance(a.vector(), &a.vector().scale(3.0)).unwrap(), 0.0);
        let n = Space::new(3).unwrap().n();
        assert_eq!(distance(a.vector(), &n), Err(Error::PointAtInfinity));
    }

    #[test]
    fn inner_product_encodes_squared_distance() {
        let x = pt(&[1.0, 2.0]);
        let y = pt(&[-0.5, 4.0]);
        let xy = (embed(&x).vector() | embed(&y).vector()).scalar_part();
        let d2 = x.euclidean_distance(&y).powi(2);
        assert!((xy + 2.0 * d2).abs() < 1e-12);
    }

    #[test]
    fn space_from_signature() {
        assert_eq!(
            Space::from_signature(Signature::new(4, 1).unwrap())
                .unwrap()
                .dim(),
            3
        );
        assert!(Space::from_signature(Signature::new(3, 0).unwrap()).is_err());
        assert!(Space::new(4).is_err());
        assert!(EuclideanPoint::new(vec![1.0]).is_err());
        assert!(EuclideanPoint::new(vec![1.0, f64::NAN]).is_err());
    }
}
