//! Ray bouncing between mirrors: each hit reflects the ray's line in the
//! mirror itself when flat, or in the tangent plane at the hit point when
//! round.

use crate::algebra::Multivector;
use crate::conformal::{embed, EuclideanPoint, Space};
use crate::error::{Error, Result};
use crate::meet::meet;
use crate::primitives::{line_data, line_through, plane_data, CircleOrLine};
use crate::transforms::{reflect_in, tangent_plane};

/// Hits closer than this (in ray parameter) to the ray origin are ignored,
/// so a ray leaving a mirror does not hit it again immediately.
pub const MIN_HIT_DISTANCE: f64 = 1e-9;

/// Half-line from `origin` along the unit vector `direction`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ray {
    pub origin: EuclideanPoint,
    pub direction: Vec<f64>,
}

impl Ray {
    pub fn new(origin: EuclideanPoint, direction: Vec<f64>) -> Result<Self> {
        if direction.len() != origin.dim() {
            return Err(Error::DimensionMismatch {
                expected: origin.dim(),
                actual: direction.len(),
            });
        }
        let len = dot(&direction, &direction).sqrt();
        if !len.is_finite() || len == 0.0 {
            return Err(Error::Degenerate);
        }
        Ok(Self {
            origin,
            direction: direction.iter().map(|c| c / len).collect(),
        })
    }

    /// Ray from `a` towards `b`.
    pub fn through(a: &EuclideanPoint, b: &EuclideanPoint) -> Result<Self> {
        let dir = b
            .coords()
            .iter()
            .zip(a.coords())
            .map(|(x, y)| x - y)
            .collect();
        Self::new(a.clone(), dir)
    }

    /// Line blade of the ray, oriented from origin along direction.
    pub fn line(&self) -> Result<CircleOrLine> {
        let ahead: Vec<f64> = self
            .origin
            .coords()
            .iter()
            .zip(&self.direction)
            .map(|(o, d)| o + d)
            .collect();
        line_through(
            &embed(&self.origin).into_vector(),
            &embed(&EuclideanPoint::new(ahead)?).into_vector(),
        )
    }
}

/// One reflection: where the ray hit, which mirror, and the outgoing ray.
#[derive(Clone, Debug, PartialEq)]
pub struct Bounce {
    pub mirror: usize,
    pub hit: EuclideanPoint,
    pub outgoing: Ray,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest forward hit of the ray on any mirror, as (mirror, point, t).
fn nearest_hit(ray: &Ray, mirrors: &[Multivector]) -> Result<Option<(usize, EuclideanPoint, f64)>> {
    let line = ray.line()?;
    let mut best: Option<(usize, EuclideanPoint, f64)> = None;
    for (i, mirror) in mirrors.iter().enumerate() {
        let outcome = match meet(line.blade(), mirror) {
            Ok(o) => o,
            // a ray running inside a flat mirror never reflects off it
            Err(Error::Contained | Error::Coincident) => continue,
            Err(e) => return Err(e),
        };
        for point in outcome.finite_points() {
            let offset: Vec<f64> = point
                .coords()
                .iter()
                .zip(ray.origin.coords())
                .map(|(x, o)| x - o)
                .collect();
            let t = dot(&offset, &ray.direction);
            if t > MIN_HIT_DISTANCE && best.as_ref().is_none_or(|(_, _, bt)| t < *bt) {
                best = Some((i, point.clone(), t));
            }
        }
    }
    Ok(best)
}

/// Reflects the ray in the mirror at a point already known to lie on it.
fn reflect_at(ray: &Ray, mirror: &Multivector, hit: &EuclideanPoint) -> Result<Ray> {
    let space = Space::of(mirror)?;
    let flat = (mirror ^ &space.n()).coeff_norm() <= 1e-10 * mirror.coeff_norm();
    let plane = if flat {
        mirror.clone()
    } else {
        tangent_plane(mirror, &embed(hit).into_vector())?
    };
    let reflected = CircleOrLine::new(reflect_in(ray.line()?.blade(), &plane)?)?;
    let mut direction = line_data(&reflected)?.direction;
    // The outgoing ray leaves on the side it came from.
    let normal = plane_data(&plane)?.normal;
    let incoming = dot(&ray.direction, &normal);
    let outgoing = dot(&direction, &normal);
    let flip = if incoming.abs() > 1e-12 {
        incoming * outgoing > 0.0
    } else {
        dot(&direction, &ray.direction) < 0.0
    };
    if flip {
        direction.iter_mut().for_each(|c| *c = -*c);
    }
    Ray::new(hit.clone(), direction)
}

/// Follows the ray through up to `max_bounces` reflections, stopping early
/// when it escapes. Mirrors are hyperplane or round blades of grade `d + 1`.
pub fn trace(ray: &Ray, mirrors: &[Multivector], max_bounces: usize) -> Result<Vec<Bounce>> {
    let space = Space::new(ray.origin.dim())?;
    for m in mirrors {
        space.check(m)?;
    }
    let mut current = ray.clone();
    let mut path = Vec::new();
    for _ in 0..max_bounces {
        let Some((mirror, hit, _)) = nearest_hit(&current, mirrors)? else {
            break;
        };
        let outgoing = reflect_at(&current, &mirrors[mirror], &hit)?;
        path.push(Bounce {
            mirror,
            hit,
            outgoing: outgoing.clone(),
        });
        current = outgoing;
    }
    Ok(path)
}
