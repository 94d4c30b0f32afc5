#![allow(dead_code)]

use cga::conformal::{embed, EuclideanPoint, Space};
use cga::transforms::{rotor, translator_by, Versor};
use cga::Multivector;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn pt(c: &[f64]) -> EuclideanPoint {
    EuclideanPoint::new(c.to_vec()).unwrap()
}

pub fn up(c: &[f64]) -> Multivector {
    embed(&pt(c)).into_vector()
}

pub fn random_coords(rng: &mut ChaCha8Rng, dim: usize, range: f64) -> Vec<f64> {
    (0..dim).map(|_| rng.gen_range(-range..range)).collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Rigid motion as a composition of random rotors (in every coordinate
/// plane) and a random translation, together with the same map applied on
/// the Euclidean side.
pub struct RandomMotion {
    pub versor: Versor,
    matrix: Vec<Vec<f64>>,
    offset: Vec<f64>,
}

impl RandomMotion {
    pub fn new(rng: &mut ChaCha8Rng, space: &Space) -> Self {
        let d = space.dim();
        let mut versor = Versor::identity(space);
        let mut matrix: Vec<Vec<f64>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        for i in 0..d {
            for j in i + 1..d {
                let theta = rng.gen_range(-3.0..3.0);
                let r = rotor(&space.euclidean_plane(i, j), theta).unwrap();
                versor = r.then_after(&versor);
                // rotation by theta taking e_i towards e_j
                let (c, s) = (f64::cos(theta), f64::sin(theta));
                let mut next = matrix.clone();
                for col in 0..d {
                    next[i][col] = c * matrix[i][col] - s * matrix[j][col];
                    next[j][col] = s * matrix[i][col] + c * matrix[j][col];
                }
                matrix = next;
            }
        }
        let offset = random_coords(rng, d, 5.0);
        let t = translator_by(space, &offset).unwrap();
        Self {
            versor: t.then_after(&versor),
            matrix,
            offset,
        }
    }

    pub fn apply_point(&self, x: &[f64]) -> Vec<f64> {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, o)| dot(row, x) + o)
            .collect()
    }
}
