//! Intersections through the dual: for primitives whose join is the whole
//! space the meet is `(I A)·B`, a blade whose grade and square classify
//! the result.

use crate::algebra::Multivector;
use crate::conformal::{normalize_derived, EuclideanPoint, Space};
use crate::error::{Error, Result};
use crate::primitives::{
    circle_center_radius, line_data, square_sign, CenterRadius, CircleOrLine, LineData,
    PairContent, PointPair, SphereOrPlane, SquareSign,
};

/// A meet blade below this fraction of the product of its input
/// magnitudes means the inputs coincide (or one contains the other).
const COINCIDENCE_TOLERANCE: f64 = 1e-10;

/// A decoded intersection point, possibly the point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum Endpoint {
    Finite(EuclideanPoint),
    Infinity,
}

impl Endpoint {
    pub fn finite(&self) -> Option<&EuclideanPoint> {
        match self {
            Endpoint::Finite(p) => Some(p),
            Endpoint::Infinity => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeetKind {
    TwoPoints,
    TangentPoint,
    Empty,
    Circle,
    Line,
}

/// Classified intersection with its decoded data and the raw meet blade.
#[derive(Clone, Debug, PartialEq)]
pub enum MeetOutcome {
    TwoPoints {
        points: [Endpoint; 2],
        raw: Multivector,
    },
    TangentPoint {
        point: Endpoint,
        raw: Multivector,
    },
    Empty {
        raw: Multivector,
    },
    Circle {
        circle: CenterRadius,
        raw: Multivector,
    },
    Line {
        line: LineData,
        raw: Multivector,
    },
}

impl MeetOutcome {
    pub fn kind(&self) -> MeetKind {
        match self {
            MeetOutcome::TwoPoints { .. } => MeetKind::TwoPoints,
            MeetOutcome::TangentPoint { .. } => MeetKind::TangentPoint,
            MeetOutcome::Empty { .. } => MeetKind::Empty,
            MeetOutcome::Circle { .. } => MeetKind::Circle,
            MeetOutcome::Line { .. } => MeetKind::Line,
        }
    }

    pub fn raw(&self) -> &Multivector {
        match self {
            MeetOutcome::TwoPoints { raw, .. }
            | MeetOutcome::TangentPoint { raw, .. }
            | MeetOutcome::Empty { raw }
            | MeetOutcome::Circle { raw, .. }
            | MeetOutcome::Line { raw, .. } => raw,
        }
    }

    /// Finite intersection points, if the outcome is made of points.
    pub fn finite_points(&self) -> Vec<&EuclideanPoint> {
        match self {
            MeetOutcome::TwoPoints { points, .. } => {
                points.iter().filter_map(Endpoint::finite).collect()
            }
            MeetOutcome::TangentPoint { point, .. } => point.finite().into_iter().collect(),
            _ => Vec::new(),
        }
    }
}

fn to_endpoint(x: &Multivector) -> Result<Endpoint> {
    match normalize_derived(x) {
        Ok(p) => Ok(Endpoint::Finite(p.to_euclidean())),
        Err(Error::PointAtInfinity) => Ok(Endpoint::Infinity),
        Err(e) => Err(e),
    }
}

fn pair_outcome(raw: Multivector) -> Result<MeetOutcome> {
    Ok(match PointPair::new(raw.clone())?.decode() {
        PairContent::Two(a, b) => MeetOutcome::TwoPoints {
            points: [to_endpoint(&a)?, to_endpoint(&b)?],
            raw,
        },
        PairContent::One(x) => MeetOutcome::TangentPoint {
            point: to_endpoint(&x)?,
            raw,
        },
        PairContent::Empty => MeetOutcome::Empty { raw },
    })
}

fn dual_contraction(a: &Multivector, b: &Multivector, grade: usize) -> Result<Multivector> {
    let space = Space::of(a)?;
    space.check(b)?;
    Ok(space.dual(a).inner_product(b)?.grade(grade))
}

fn nearly_zero(meet: &Multivector, a: &Multivector, b: &Multivector) -> bool {
    meet.coeff_norm() <= COINCIDENCE_TOLERANCE * a.coeff_norm() * b.coeff_norm()
}

/// Meet of two circles or lines in the plane: `B = (I L1)·L2`.
///
/// Two straight lines meet twice, once at infinity; parallel lines touch
/// at infinity.
pub fn meet_lines_2d(l1: &CircleOrLine, l2: &CircleOrLine) -> Result<MeetOutcome> {
    let space = l1.space();
    if space.dim() != 2 || l2.space().dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: space.dim().max(l2.space().dim()),
        });
    }
    let b = dual_contraction(l1.blade(), l2.blade(), 2)?;
    if nearly_zero(&b, l1.blade(), l2.blade()) {
        return Err(Error::Coincident);
    }
    pair_outcome(b)
}

/// Meet of a circle or line with a sphere or plane in space: `L·(I P)`.
pub fn meet_line_sphere(l: &CircleOrLine, p: &SphereOrPlane) -> Result<MeetOutcome> {
    let space = Space::of(p.blade())?;
    space.check(l.blade())?;
    let ip = space.dual(p.blade()).grade(1);
    let b = l.blade().inner_product(&ip)?.grade(2);
    if nearly_zero(&b, l.blade(), p.blade()) {
        return Err(Error::Contained);
    }
    pair_outcome(b)
}

/// Meet of two spheres or planes: `L = (I P1)·P2`.
pub fn meet_spheres(p1: &SphereOrPlane, p2: &SphereOrPlane) -> Result<MeetOutcome> {
    let raw = dual_contraction(p1.blade(), p2.blade(), 3)?;
    if nearly_zero(&raw, p1.blade(), p2.blade()) {
        return Err(Error::Coincident);
    }
    let l = CircleOrLine::new(raw.clone())?;
    let sign = square_sign(&raw);
    if l.is_flat() {
        // parallel planes meet only in a line at infinity (null square)
        return Ok(match sign {
            SquareSign::Positive => MeetOutcome::Line {
                line: line_data(&l)?,
                raw,
            },
            _ => MeetOutcome::Empty { raw },
        });
    }
    Ok(match sign {
        SquareSign::Positive => MeetOutcome::Circle {
            circle: circle_center_radius(&l)?,
            raw,
        },
        SquareSign::Zero => {
            let n = l.space().n();
            let c = (&(&raw * &n) * &raw).grade(1);
            MeetOutcome::TangentPoint {
                point: to_endpoint(&c)?,
                raw,
            }
        }
        SquareSign::Negative => MeetOutcome::Empty { raw },
    })
}

/// Dispatches on the grades of the inputs: circles/lines in the plane;
/// circle/line with sphere/plane (either order) or two spheres/planes in
/// space.
pub fn meet(a: &Multivector, b: &Multivector) -> Result<MeetOutcome> {
    let space = Space::of(a)?;
    space.check(b)?;
    let ga = crate::transforms::blade_grade(a).ok_or(Error::Degenerate)?;
    let gb = crate::transforms::blade_grade(b).ok_or(Error::Degenerate)?;
    match (space.dim(), ga, gb) {
        (2, 3, 3) => meet_lines_2d(
            &CircleOrLine::new(a.clone())?,
            &CircleOrLine::new(b.clone())?,
        ),
        (3, 3, 4) => meet_line_sphere(
            &CircleOrLine::new(a.clone())?,
            &SphereOrPlane::new(b.clone())?,
        ),
        (3, 4, 3) => meet_line_sphere(
            &CircleOrLine::new(b.clone())?,
            &SphereOrPlane::new(a.clone())?,
        ),
        (3, 4, 4) => meet_spheres(
            &SphereOrPlane::new(a.clone())?,
            &SphereOrPlane::new(b.clone())?,
        ),
        _ => Err(Error::WrongGrade {
            expected: space.dim() + 1,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::embed;
    use crate::primitives::{
        circle_from_center_radius, line_through, plane_through, sphere_from_center_radius,
    };

    fn p(c: &[f64]) -> Multivector {
        embed(&EuclideanPoint::new(c.to_vec()).unwrap()).into_vector()
    }

    fn pt(c: &[f64]) -> EuclideanPoint {
        EuclideanPoint::new(c.to_vec()).unwrap()
    }

    fn sorted(points: Vec<&EuclideanPoint>) -> Vec<Vec<f64>> {
        let mut v: Vec<Vec<f64>> = points.iter().map(|p| p.coords().to_vec()).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn unit_circle_meets_x_axis() {
        let circle = circle_from_center_radius(&pt(&[0.0, 0.0]), 1.0).unwrap();
        let axis = line_through(&p(&[-3.0, 0.0]), &p(&[5.0, 0.0])).unwrap();
        let out = meet_lines_2d(&circle, &axis).unwrap();
        assert_eq!(out.kind(), MeetKind::TwoPoints);
        let pts = sorted(out.finite_points());
        assert!(close(&pts[0], &[-1.0, 0.0], 1e-12));
        assert!(close(&pts[1], &[1.0, 0.0], 1e-12));
    }

    #[test]
    fn crossing_lines_meet_at_one_finite_point_and_infinity() {
        let l1 = line_through(&p(&[0.0, 0.0]), &p(&[1.0, 1.0])).unwrap();
        let l2 = line_through(&p(&[0.0, 2.0]), &p(&[2.0, 0.0])).unwrap();
        let out = meet_lines_2d(&l1, &l2).unwrap();
        let MeetOutcome::TwoPoints { points, .. } = &out else {
            panic!("expected two points, got {out:?}");
        };
        assert!(points.contains(&Endpoint::Infinity));
        let pts = out.finite_points();
        assert_eq!(pts.len(), 1);
        assert!(close(pts[0].coords(), &[1.0, 1.0], 1e-12));
    }

    #[test]
    fn parallel_lines_touch_at_infinity() {
        let l1 = line_through(&p(&[0.0, 0.0]), &p(&[1.0, 0.0])).unwrap();
        let l2 = line_through(&p(&[0.0, 1.0]), &p(&[1.0, 1.0])).unwrap();
        let out = meet_lines_2d(&l1, &l2).unwrap();
        assert_eq!(
            out,
            MeetOutcome::TangentPoint {
                point: Endpoint::Infinity,
                raw: out.raw().clone()
            }
        );
    }

    #[test]
    fn distant_circles_do_not_meet() {
        let c1 = circle_from_center_radius(&pt(&[0.0, 0.0]), 1.0).unwrap();
        let c2 = circle_from_center_radius(&pt(&[3.0, 0.0]), 1.0).unwrap();
        let out = meet_lines_2d(&c1, &c2).unwrap();
        assert_eq!(out.kind(), MeetKind::Empty);
        assert!(out.raw().scalar_square() < 0.0);
    }

    #[test]
    fn identical_lines_are_coincident() {
        let l1 = line_through(&p(&[0.0, 0.0]), &p(&[1.0, 0.0])).unwrap();
        let l2 = CircleOrLine::new(l1.blade().scale(-2.0)).unwrap();
        assert_eq!(meet_lines_2d(&l1, &l2), Err(Error::Coincident));
    }

    #[test]
    fn x_axis_against_spheres() {
        let axis = line_through(&p(&[0.0, 0.0, 0.0]), &p(&[1.0, 0.0, 0.0])).unwrap();

        let unit = sphere_from_center_radius(&pt(&[0.0, 0.0, 0.0]), 1.0).unwrap();
        let out = meet_line_sphere(&axis, &unit).unwrap();
        assert_eq!(out.kind(), MeetKind::TwoPoints);
        let pts = sorted(out.finite_points());
        assert!(close(&pts[0], &[-1.0, 0.0, 0.0], 1e-12));
        assert!(close(&pts[1], &[1.0, 0.0, 0.0], 1e-12));

        let far = sphere_from_center_radius(&pt(&[0.0, 0.0, 2.0]), 1.0).unwrap();
        assert_eq!(
            meet_line_sphere(&axis, &far).unwrap().kind(),
            MeetKind::Empty
        );

        let touching = sphere_from_center_radius(&pt(&[0.0, 0.0, 1.0]), 1.0).unwrap();
        let out = meet_line_sphere(&axis, &touching).unwrap();
        assert_eq!(out.kind(), MeetKind::TangentPoint);
        assert!(close(
            out.finite_points()[0].coords(),
            &[0.0, 0.0, 0.0],
            1e-9
        ));
    }

    #[test]
    fn line_through_plane_has_point_at_infinity() {
        let axis = line_through(&p(&[0.0, 0.0, 0.0]), &p(&[1.0, 1.0, 1.0])).unwrap();
        let plane = plane_through(
            &p(&[2.0, 0.0, 0.0]),
            &p(&[2.0, 1.0, 0.0]),
            &p(&[2.0, 0.0, 1.0]),
        )
        .unwrap();
        let out = meet_line_sphere(&axis, &plane).unwrap();
        assert_eq!(out.kind(), MeetKind::TwoPoints);
        let pts = out.finite_points();
        assert_eq!(pts.len(), 1);
        assert!(close(pts[0].coords(), &[2.0, 2.0, 2.0], 1e-12));
    }

    #[test]
    fn line_in_plane_is_contained() {
        let plane = plane_through(
            &p(&[0.0, 0.0, 0.0]),
            &p(&[1.0, 0.0, 0.0]),
            &p(&[0.0, 1.0, 0.0]),
        )
        .unwrap();
        let l = line_through(&p(&[0.0, 0.0, 0.0]), &p(&[1.0, 2.0, 0.0])).unwrap();
        assert_eq!(meet_line_sphere(&l, &plane), Err(Error::Contained));
    }

    #[test]
    fn overlapping_unit_spheres_meet_in_circle() {
        let s1 = sphere_from_center_radius(&pt(&[0.0, 0.0, 0.0]), 1.0).unwrap();
        let s2 = sphere_from_center_radius(&pt(&[1.0, 0.0, 0.0]), 1.0).unwrap();
        let MeetOutcome::Circle { circle, .. } = meet_spheres(&s1, &s2).unwrap() else {
            panic!("expected a circle");
        };
        assert!(close(circle.center.coords(), &[0.5, 0.0, 0.0], 1e-12));
        assert!((circle.radius - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn two_planes_meet_in_straight_line() {
        let xy = plane_through(
            &p(&[0.0, 0.0, 0.0]),
            &p(&[1.0, 0.0, 0.0]),
            &p(&[0.0, 1.0, 0.0]),
        )
        .unwrap();
        let xz = plane_through(
            &p(&[0.0, 0.0, 0.0]),
            &p(&[1.0, 0.0, 0.0]),
            &p(&[0.0, 0.0, 1.0]),
        )
        .unwrap();
        let out = meet_spheres(&xy, &xz).unwrap();
        let MeetOutcome::Line { line, raw } = &out else {
            panic!("expected a line, got {out:?}");
        };
        let n = Space::new(3).unwrap().n();
        assert!((raw ^ &n).coeff_norm() < 1e-12 * raw.coeff_norm());
        assert!(close(line.point.coords(), &[0.0, 0.0, 0.0], 1e-12));
        assert!((line.direction[0].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parallel_planes_do_not_meet() {
        let a = plane_through(
            &p(&[0.0, 0.0, 0.0]),
            &p(&[1.0, 0.0, 0.0]),
            &p(&[0.0, 1.0, 0.0]),
        )
        .unwrap();
        let b = plane_through(
            &p(&[0.0, 0.0, 1.0]),
            &p(&[1.0, 0.0, 1.0]),
            &p(&[0.0, 1.0, 1.0]),
        )
        .unwrap();
        assert_eq!(meet_spheres(&a, &b).unwrap().kind(), MeetKind::Empty);
    }

    #[test]
    fn separated_spheres_are_empty_and_touching_spheres_tangent() {
        let s1 = sphere_from_center_radius(&pt(&[0.0, 0.0, 0.0]), 1.0).unwrap();
        let s2 = sphere_from_center_radius(&pt(&[3.0, 0.0, 0.0]), 1.0).unwrap();
        let out = meet_spheres(&s1, &s2).unwrap();
        assert_eq!(out.kind(), MeetKind::Empty);
        assert!(out.raw().scalar_square() < 0.0);

        let s3 = sphere_from_center_radius(&pt(&[2.0, 0.0, 0.0]), 1.0).unwrap();
        let out = meet_spheres(&s1, &s3).unwrap();
        assert_eq!(out.kind(), MeetKind::TangentPoint);
        assert!(close(
            out.finite_points()[0].coords(),
            &[1.0, 0.0, 0.0],
            1e-9
        ));
    }

    #[test]
    fn same_sphere_is_coincident() {
        let s1 = sphere_from_center_radius(&pt(&[0.0, 1.0, 0.0]), 2.0).unwrap();
        assert_eq!(meet_spheres(&s1, &s1), Err(Error::Coincident));
    }

    #[test]
    fn dispatch_by_grade() {
        let axis = line_through(&p(&[0.0, 0.0, 0.0]), &p(&[1.0, 0.0, 0.0])).unwrap();
        let unit = sphere_from_center_radius(&pt(&[0.0, 0.0, 0.0]), 1.0).unwrap();
        assert_eq!(
            meet(unit.blade(), axis.blade()).unwrap().kind(),
            MeetKind::TwoPoints
        );
        assert!(meet(axis.blade(), axis.blade()).is_err());
    }
}
