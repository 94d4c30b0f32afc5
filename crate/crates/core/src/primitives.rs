//! Rounds and flats as blades: point pairs (grade 2), circles and lines
//! (grade 3), spheres and planes (grade 4, space only).
//!
//! All blades are homogeneous: any nonzero multiple represents the same
//! object. A primitive is flat (passes through infinity) when its wedge
//! with `n` vanishes.

use crate::algebra::Multivector;
use crate::conformal::{normalize_derived, EuclideanPoint, Space};
use crate::error::{Error, Result};

/// A construction blade smaller than this fraction of the product of its
/// input magnitudes is degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

/// `|A ∧ n|` below this fraction of `|A|` counts as flat.
pub const FLAT_TOLERANCE: f64 = 1e-10;

/// `|B²|` below this fraction of `|B|²` counts as zero when classifying
/// point pairs and meets.
pub const SQUARE_SIGN_TOLERANCE: f64 = 1e-9;

/// Sign of a blade square with the scale-aware zero band.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareSign {
    Positive,
    Zero,
    Negative,
}

pub fn square_sign(blade: &Multivector) -> SquareSign {
    let sq = blade.scalar_square();
    let scale = blade.coeff_norm().powi(2);
    if sq.abs() <= SQUARE_SIGN_TOLERANCE * scale {
        SquareSign::Zero
    } else if sq > 0.0 {
        SquareSign::Positive
    } else {
        SquareSign::Negative
    }
}

fn require_grade(blade: &Multivector, grade: usize) -> Result<()> {
    if blade.is_zero() {
        return Err(Error::Degenerate);
    }
    if !blade.is_homogeneous(grade, 1e-10) {
        return Err(Error::WrongGrade { expected: grade });
    }
    Ok(())
}

fn is_flat_blade(blade: &Multivector) -> bool {
    let n = Space::of(blade).expect("validated on construction").n();
    (blade ^ &n).coeff_norm() <= FLAT_TOLERANCE * blade.coeff_norm() * n.coeff_norm()
}

/// Wedge of the inputs, rejected when it (nearly) vanishes.
fn wedge_all(factors: &[&Multivector]) -> Result<Multivector> {
    let space = Space::of(factors[0])?;
    for f in factors {
        space.check(f)?;
    }
    let blade = factors[1..]
        .iter()
        .fold(factors[0].clone(), |acc, f| &acc ^ *f);
    let scale: f64 = factors.iter().map(|f| f.coeff_norm()).product();
    if blade.coeff_norm() <= DEGENERACY_TOLERANCE * scale {
        return Err(Error::Degenerate);
    }
    Ok(blade)
}

/// Bivector through two points; encodes zero, one or two points by the
/// sign of its square.
#[derive(Clone, Debug, PartialEq)]
pub struct PointPair(Multivector);

/// Decoded content of a point pair. Vectors are null but unnormalised and
/// may be the point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum PairContent {
    Two(Multivector, Multivector),
    One(Multivector),
    Empty,
}

impl PointPair {
    pub fn new(blade: Multivector) -> Result<Self> {
        Space::of(&blade)?;
        require_grade(&blade, 2)?;
        Ok(Self(blade.grade(2)))
    }

    pub fn blade(&self) -> &Multivector {
        &self.0
    }

    pub fn decode(&self) -> PairContent {
        decode_blade(&self.0)
    }
}

/// `X ∧ Y`; zero when the points coincide.
pub fn point_pair(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    x.outer_product(y)
}

/// Splits a point pair into its null vectors.
pub fn decode_point_pair(pair: &Multivector) -> Result<PairContent> {
    Ok(PointPair::new(pair.clone())?.decode())
}

fn probe_vectors(space: &Space) -> Vec<Multivector> {
    let mut probes = vec![space.n(), space.nbar()];
    probes.extend((0..space.dim()).map(|i| space.e(i)));
    probes.push(space.e_plus());
    probes.push(space.e_minus());
    probes
}

fn decode_blade(b: &Multivector) -> PairContent {
    let space = Space::of(b).expect("validated on construction");
    let norm = b.coeff_norm();
    match square_sign(b) {
        SquareSign::Negative => PairContent::Empty,
        SquareSign::Zero => {
            // The single null direction of a degenerate plane is (w·B)·B for
            // any probe w not orthogonal to it.
            let best = probe_vectors(&space)
                .iter()
                .map(|w| &(w | b) | b)
                .max_by(|x, y| x.coeff_norm().total_cmp(&y.coeff_norm()))
                .expect("probe list is nonempty");
            PairContent::One(best)
        }
        SquareSign::Positive => {
            let bhat = b.scale(1.0 / b.scalar_square().sqrt());
            let mut best: Option<(f64, Multivector, Multivector)> = None;
            for w in probe_vectors(&space) {
                let v = &w | b;
                let vb = &v | &bhat;
                let (xp, xm) = (&v + &vb, &v - &vb);
                let quality = xp.coeff_norm().min(xm.coeff_norm()) / (norm * w.coeff_norm());
                if quality > 1e-3 {
                    return PairContent::Two(xp, xm);
                }
                if best.as_ref().is_none_or(|(q, _, _)| quality > *q) {
                    best = Some((quality, xp, xm));
                }
            }
            let (_, xp, xm) = best.expect("probe list is nonempty");
            PairContent::Two(xp, xm)
        }
    }
}

/// Trivector: a circle, or a straight line when flat.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleOrLine(Multivector);

impl CircleOrLine {
    pub fn new(blade: Multivector) -> Result<Self> {
        Space::of(&blade)?;
        require_grade(&blade, 3)?;
        Ok(Self(blade.grade(3)))
    }

    pub fn blade(&self) -> &Multivector {
        &self.0
    }

    pub fn into_blade(self) -> Multivector {
        self.0
    }

    pub fn space(&self) -> Space {
        Space::of(&self.0).expect("validated on construction")
    }

    pub fn is_flat(&self) -> bool {
        is_flat_blade(&self.0)
    }
}

/// 4-vector in the conformal algebra of space: a sphere, or a plane when
/// flat.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereOrPlane(Multivector);

impl SphereOrPlane {
    pub fn new(blade: Multivector) -> Result<Self> {
        let space = Space::of(&blade)?;
        if space.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                actual: space.dim(),
            });
        }
        require_grade(&blade, 4)?;
        Ok(Self(blade.grade(4)))
    }

    pub fn blade(&self) -> &Multivector {
        &self.0
    }

    pub fn into_blade(self) -> Multivector {
        self.0
    }

    pub fn is_flat(&self) -> bool {
        is_flat_blade(&self.0)
    }
}

/// Center and radius of a round.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterRadius {
    pub center: EuclideanPoint,
    pub radius: f64,
}

/// A straight line as a point (the one closest to the origin) and a unit
/// direction following the blade's orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct LineData {
    pub point: EuclideanPoint,
    pub direction: Vec<f64>,
}

/// A hyperplane (a plane in space, a line in the plane) as its point
/// closest to the origin and a unit normal.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneData {
    pub point: EuclideanPoint,
    pub normal: Vec<f64>,
}

/// `A1 ∧ A2 ∧ A3`.
pub fn circle_through(
    a1: &Multivector,
    a2: &Multivector,
    a3: &Multivector,
) -> Result<CircleOrLine> {
    CircleOrLine::new(wedge_all(&[a1, a2, a3])?)
}

/// `A ∧ B ∧ n`.
pub fn line_through(a: &Multivector, b: &Multivector) -> Result<CircleOrLine> {
    let n = Space::of(a)?.n();
    CircleOrLine::new(wedge_all(&[a, b, &n])?)
}

/// `A1 ∧ A2 ∧ A3 ∧ A4`.
pub fn sphere_through(
    a1: &Multivector,
    a2: &Multivector,
    a3: &Multivector,
    a4: &Multivector,
) -> Result<SphereOrPlane> {
    require_space_3d(a1)?;
    SphereOrPlane::new(wedge_all(&[a1, a2, a3, a4])?)
}

/// `A ∧ B ∧ C ∧ n`.
pub fn plane_through(a: &Multivector, b: &Multivector, c: &Multivector) -> Result<SphereOrPlane> {
    let space = require_space_3d(a)?;
    SphereOrPlane::new(wedge_all(&[a, b, c, &space.n()])?)
}

fn require_space_3d(mv: &Multivector) -> Result<Space> {
    let space = Space::of(mv)?;
    if space.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            actual: space.dim(),
        });
    }
    Ok(space)
}

/// Blade of grade `d + 1` for the round of given center and radius: a
/// circle in the plane, a sphere in space. Its dual is `F(c) - ρ² n`.
pub fn round_from_center_radius(center: &EuclideanPoint, radius: f64) -> Result<Multivector> {
    if !radius.is_finite() || radius < 0.0 {
        return Err(Error::Imaginary(radius * radius.abs()));
    }
    let space = center.space();
    let dual = &crate::conformal::embed(center).into_vector() - &space.n().scale(radius * radius);
    // I² = -1, so the inverse dual is -I s.
    Ok(-space.dual(&dual))
}

pub fn sphere_from_center_radius(center: &EuclideanPoint, radius: f64) -> Result<SphereOrPlane> {
    require_space_3d(&center.to_vector())?;
    SphereOrPlane::new(round_from_center_radius(center, radius)?)
}

/// Circle of the plane with given center and radius.
pub fn circle_from_center_radius(center: &EuclideanPoint, radius: f64) -> Result<CircleOrLine> {
    if center.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: center.dim(),
        });
    }
    CircleOrLine::new(round_from_center_radius(center, radius)?)
}

/// Radius from the ratio `ρ² = -sign · A² / (A ∧ n)²` and center from
/// the sandwich `A n A`, shared by circles (sign +1) and spheres (-1).
fn round_center_radius(blade: &Multivector, sign: f64) -> Result<CenterRadius> {
    let space = Space::of(blade)?;
    let n = space.n();
    let wn = blade ^ &n;
    if is_flat_blade(blade) {
        return Err(Error::Flat);
    }
    let wn2 = wn.scalar_square();
    let a2 = blade.scalar_square();
    let rho2 = if a2.abs() <= SQUARE_SIGN_TOLERANCE * blade.coeff_norm().powi(2) {
        0.0
    } else {
        -sign * a2 / wn2
    };
    if rho2 < 0.0 {
        return Err(Error::Imaginary(rho2));
    }
    let c = (&(blade * &n) * blade).grade(1);
    let center = normalize_derived(&c)?.to_euclidean();
    Ok(CenterRadius {
        center,
        radius: rho2.sqrt(),
    })
}

/// Center and radius of a (non-flat) circle in the plane or in space.
pub fn circle_center_radius(circle: &CircleOrLine) -> Result<CenterRadius> {
    round_center_radius(circle.blade(), 1.0)
}

pub fn sphere_center_radius(sphere: &SphereOrPlane) -> Result<CenterRadius> {
    round_center_radius(sphere.blade(), -1.0)
}

/// `-(L ∧ n)² / L²`, the inverse squared circumradius; zero for lines.
pub fn straightness(l: &CircleOrLine) -> Result<f64> {
    curvature_measure(l.blade(), 1.0)
}

/// `(S ∧ n)² / S²`, the inverse squared radius; zero for planes.
pub fn flatness(s: &SphereOrPlane) -> Result<f64> {
    curvature_measure(s.blade(), -1.0)
}

fn curvature_measure(blade: &Multivector, sign: f64) -> Result<f64> {
    let n = Space::of(blade)?.n();
    let a2 = blade.scalar_square();
    if a2 == 0.0 || a2.abs() <= 1e-15 * blade.coeff_norm().powi(2) {
        return Err(Error::NullBlade);
    }
    let wn2 = (blade ^ &n).scalar_square();
    Ok(-sign * wn2 / a2 + 0.0)
}

/// Whether the circle is straight to within `eps` in straightness.
pub fn is_line(l: &CircleOrLine, eps: f64) -> Result<bool> {
    Ok(straightness(l)? < eps)
}

pub fn is_plane(s: &SphereOrPlane, eps: f64) -> Result<bool> {
    Ok(flatness(s)? < eps)
}

/// Angle between two lines (or circles) at an intersection, from
/// `cos θ = <L1 L2> / (|L1| |L2|)`.
pub fn angle_between_lines(l1: &CircleOrLine, l2: &CircleOrLine) -> Result<f64> {
    let (a, b) = (l1.blade(), l2.blade());
    let m = a.magnitude() * b.magnitude();
    if m == 0.0 || m <= 1e-15 * a.coeff_norm() * b.coeff_norm() {
        return Err(Error::NullBlade);
    }
    let cos = (a.geometric_product(b)?.scalar_part() / m).clamp(-1.0, 1.0);
    Ok(cos.acos())
}

/// Point and direction of a straight line.
pub fn line_data(l: &CircleOrLine) -> Result<LineData> {
    if !l.is_flat() {
        return Err(Error::NotFlat);
    }
    let space = l.space();
    let blade = l.blade();
    let d = space.dim();
    let (ep, em) = (space.e_plus_bit(), space.e_minus_bit());
    // L ∝ a∧b∧n + (b - a)∧e∧ē for points a, b on the line
    let dir: Vec<f64> = (0..d).map(|i| blade.coeff((1 << i) | ep | em)).collect();
    let dir_v = space.vector(&dir)?;
    let dir2 = dir_v.scalar_square();
    if dir2 <= 1e-24 * blade.coeff_norm().powi(2) {
        return Err(Error::Degenerate);
    }
    let mut moment = Multivector::zero(space.signature());
    for i in 0..d {
        for j in i + 1..d {
            let ij = (1 << i) | (1 << j);
            moment.set_coeff(ij, 0.5 * (blade.coeff(ij | ep) + blade.coeff(ij | em)));
        }
    }
    // (p ∧ d) d = d² p for the foot point p
    let foot = (&moment * &dir_v).grade(1).scale(1.0 / dir2);
    let len = dir2.sqrt();
    Ok(LineData {
        point: EuclideanPoint::new(space.euclidean_coords(&foot))?,
        direction: dir.iter().map(|c| c / len).collect(),
    })
}

/// Point and normal of a flat hyperplane blade (grade `d + 1`): a plane in
/// space or a straight line in the plane.
pub fn plane_data(p: &Multivector) -> Result<PlaneData> {
    let space = Space::of(p)?;
    require_grade(p, space.dim() + 1)?;
    if !is_flat_blade(p) {
        return Err(Error::NotFlat);
    }
    // dual is m + δ n for the hyperplane x·m = δ
    let dual = space.dual(p).grade(1);
    let m = space.euclidean_coords(&dual);
    let len = m.iter().map(|c| c * c).sum::<f64>().sqrt();
    if len <= 1e-12 * dual.coeff_norm() {
        return Err(Error::Degenerate);
    }
    let delta = (&dual | &space.nbar()).scalar_part() / 2.0;
    let normal: Vec<f64> = m.iter().map(|c| c / len).collect();
    let offset = delta / len;
    Ok(PlaneData {
        point: EuclideanPoint::new(normal.iter().map(|c| c * offset).collect())?,
        normal,
    })
}

/// Unit normal of the plane carrying a circle in space.
pub fn circle_normal(circle: &CircleOrLine) -> Result<Vec<f64>> {
    let space = circle.space();
    let carrier = circle.blade() ^ &space.n();
    Ok(plane_data(&carrier)?.normal)
}
