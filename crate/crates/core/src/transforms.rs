//! Versors and reflections.
//!
//! A versor `V` acts on any multivector by the sandwich `V A rev(V)`. Even
//! unit versors generated by Euclidean bivectors rotate about the origin;
//! those generated by `n a` (null, since `n·a = 0`) translate. Both fix the
//! point at infinity, so they map rounds to rounds and flats to flats.

use std::ops::Mul;

use crate::algebra::Multivector;
use crate::conformal::Space;
use crate::error::{Error, Result};

/// Tolerance on `V rev(V) = 1`.
pub const VERSOR_TOLERANCE: f64 = 1e-10;

/// Even multivector with `V rev(V) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Versor(Multivector);

impl Versor {
    pub fn new(mv: Multivector) -> Result<Self> {
        Space::of(&mv)?;
        let norm = mv.coeff_norm();
        let odd = mv
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(blade, _)| blade.count_ones() % 2 == 1)
            .any(|(_, c)| c.abs() > 1e-12 * norm);
        if odd {
            return Err(Error::NotVersor {
                scalar: f64::NAN,
                residual: f64::NAN,
            });
        }
        let vv = &mv * &mv.reverse();
        let one = Multivector::scalar(mv.signature(), 1.0);
        let residual = vv.max_abs_diff(&one);
        if residual > VERSOR_TOLERANCE {
            return Err(Error::NotVersor {
                scalar: vv.scalar_part(),
                residual,
            });
        }
        Ok(Self(mv))
    }

    pub fn identity(space: &Space) -> Self {
        Self(Multivector::scalar(space.signature(), 1.0))
    }

    /// `exp(B)` for a simple bivector `B`.
    pub fn exp(bivector: &Multivector) -> Result<Self> {
        Space::of(bivector)?;
        Ok(Self(bivector.exp_bivector()?))
    }

    pub fn multivector(&self) -> &Multivector {
        &self.0
    }

    pub fn reverse(&self) -> Self {
        Self(self.0.reverse())
    }

    /// `V A rev(V)`.
    pub fn apply(&self, a: &Multivector) -> Multivector {
        &(&self.0 * a) * &self.0.reverse()
    }

    /// Versor applying `other` first, then `self`.
    pub fn then_after(&self, other: &Versor) -> Versor {
        Versor(&self.0 * &other.0)
    }
}

impl Mul for &Versor {
    type Output = Versor;
    fn mul(self, rhs: &Versor) -> Versor {
        self.then_after(rhs)
    }
}

/// `V A rev(V)`.
pub fn apply_versor(v: &Versor, a: &Multivector) -> Multivector {
    v.apply(a)
}

/// Reflection of `a` in the hyperplane orthogonal to `m`: `-m a m`.
///
/// `m` is renormalised when `|m² - 1| < 1e-6` and rejected otherwise.
pub fn reflect_vector(a: &Multivector, m: &Multivector) -> Result<Multivector> {
    let space = Space::of(m)?;
    space.check(a)?;
    if !a.is_homogeneous(1, 1e-12) {
        return Err(Error::WrongGrade { expected: 1 });
    }
    if !m.is_homogeneous(1, 1e-12) {
        return Err(Error::WrongGrade { expected: 1 });
    }
    if !space.is_euclidean(m) {
        return Err(Error::NotEuclidean);
    }
    let m2 = m.scalar_square();
    if (m2 - 1.0).abs() >= 1e-6 {
        return Err(Error::NotUnit { square: m2 });
    }
    let m = m.scale(1.0 / m2.sqrt());
    Ok(-(&(&m * a) * &m).grade(1))
}

/// `T_a = 1 + n a / 2` for a Euclidean vector `a`.
pub fn translator(a: &Multivector) -> Result<Versor> {
    let space = Space::of(a)?;
    if !a.is_homogeneous(1, 1e-12) || !space.is_euclidean(a) {
        return Err(Error::NotEuclidean);
    }
    let a = a.grade(1);
    Versor::exp(&(&space.n() * &a).scale(0.5))
}

/// Translator by the given coordinates.
pub fn translator_by(space: &Space, offset: &[f64]) -> Result<Versor> {
    translator(&space.vector(offset)?)
}

/// Rotor `exp(-θ B / 2)` turning by `θ` in the oriented unit Euclidean
/// plane `B` (so `e1 e2` at `π/2` takes `e1` to `e2`).
pub fn rotor(plane: &Multivector, angle: f64) -> Result<Versor> {
    let space = Space::of(plane)?;
    if !plane.is_homogeneous(2, 1e-12) {
        return Err(Error::WrongGrade { expected: 2 });
    }
    if !space.is_euclidean(plane) {
        return Err(Error::NotEuclidean);
    }
    let b = plane.grade(2);
    let sq = &b * &b;
    if !sq.is_homogeneous(0, 1e-9) || (sq.scalar_part() + 1.0).abs() > 1e-9 {
        return Err(Error::NotUnit {
            square: sq.scalar_part(),
        });
    }
    Versor::exp(&b.scale(-angle / 2.0))
}

/// `T_a R rev(T_a)`: the rotation `R` carried to the center `a`.
pub fn rotor_about_point(r: &Versor, a: &Multivector) -> Result<Versor> {
    let t = translator(a)?;
    Ok(Versor(&(&t.0 * &r.0) * &t.0.reverse()))
}

/// Reflection of a blade in a plane (or line, in 2D) `P`: `P L P`,
/// projected back to the grade of `L`. A round `P` gives inversion in the
/// sphere (or circle). Inputs and output are unnormalised.
pub fn reflect_in(l: &Multivector, p: &Multivector) -> Result<Multivector> {
    let space = Space::of(p)?;
    space.check(l)?;
    let grade = blade_grade(l).ok_or(Error::Degenerate)?;
    if !l.is_homogeneous(grade, 1e-10) {
        return Err(Error::WrongGrade { expected: grade });
    }
    let p2 = p.scalar_square();
    if p2.abs() <= 1e-12 * p.coeff_norm().powi(2) {
        return Err(Error::NullBlade);
    }
    Ok((&(p * l) * p).grade(grade))
}

/// Grade carrying the largest coefficient.
pub(crate) fn blade_grade(mv: &Multivector) -> Option<usize> {
    mv.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .max_by(|(_, a), (_, b)| a.abs().total_cmp(&b.abs()))
        .map(|(blade, _)| blade.count_ones() as usize)
}

/// Tangent hyperplane `(X·S) ∧ n` to the round `S` at its point `X`.
pub fn tangent_plane(s: &Multivector, x: &Multivector) -> Result<Multivector> {
    let space = Space::of(s)?;
    space.check(x)?;
    let residual = (x ^ s).coeff_norm() / (x.coeff_norm() * s.coeff_norm());
    if residual > 1e-9 {
        return Err(Error::NotIncident(residual));
    }
    let plane = &(x | s) ^ &space.n();
    if plane.coeff_norm() <= 1e-12 * x.coeff_norm() * s.coeff_norm() {
        return Err(Error::Degenerate);
    }
    Ok(plane)
}
