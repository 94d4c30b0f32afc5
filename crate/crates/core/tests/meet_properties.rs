mod common;

use cga::conformal::Space;
use cga::meet::{meet, meet_spheres, MeetKind, MeetOutcome};
use cga::primitives::{line_through, round_from_center_radius, sphere_from_center_radius};
use cga::Multivector;
use common::{pt, random_coords, up, RandomMotion};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_blade(rng: &mut ChaCha8Rng, space: &Space, grade: usize) -> Multivector {
    let mut b = Multivector::scalar(space.signature(), 1.0);
    for _ in 0..grade {
        let coeffs: Vec<f64> = (0..space.dim() + 2)
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        let mut v = Multivector::zero(space.signature());
        for (i, c) in coeffs.iter().enumerate() {
            v.set_coeff(1 << i, *c);
        }
        b = &b ^ &v;
    }
    b
}

fn on(x: &Multivector, a: &Multivector) -> bool {
    (x ^ a).coeff_norm() <= 1e-8 * x.coeff_norm() * a.coeff_norm()
}

#[test]
fn dual_moves_across_the_inner_product_with_fixed_sign() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for dim in [2usize, 3] {
        let space = Space::new(dim).unwrap();
        let top = dim + 2;
        for r in 1..top {
            for s in 1..top {
                let mut sign = None;
                for _ in 0..20 {
                    let a = random_blade(&mut rng, &space, r);
                    let b = random_blade(&mut rng, &space, s);
                    let left = &space.dual(&a) | &b;
                    let right = &a | &space.dual(&b);
                    let scale = left.coeff_norm().max(1e-300);
                    let this = if left.max_abs_diff(&right) <= 1e-12 * scale {
                        1.0
                    } else if left.max_abs_diff(&-&right) <= 1e-12 * scale {
                        -1.0
                    } else {
                        panic!("no fixed sign for grades ({r},{s}) in dimension {dim}");
                    };
                    assert_eq!(*sign.get_or_insert(this), this, "grades ({r},{s})");
                }
            }
        }
    }
}

proptest! {

    #[test]
    fn decoded_points_lie_on_both_inputs(seed: u64, dim in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = line_through(&up(&random_coords(&mut rng, dim, 3.0)), &up(&random_coords(&mut rng, dim, 3.0))).unwrap();
        let round = round_from_center_radius(&pt(&random_coords(&mut rng, dim, 2.0)), rng.gen_range(0.5..4.0)).unwrap();
        let out = meet(l.blade(), &round).unwrap();
        for p in out.finite_points() {
            let x = up(p.coords());
            prop_assert!(on(&x, l.blade()));
            prop_assert!(on(&x, &round));
        }
    }

    #[test]
    fn meet_moves_with_motions(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = Space::new(3).unwrap();
        let motion = RandomMotion::new(&mut rng, &space);
        let c1 = random_coords(&mut rng, 3, 1.0);
        let c2 = random_coords(&mut rng, 3, 1.0);
        let s1 = round_from_center_radius(&pt(&c1), rng.gen_range(1.5..3.0)).unwrap();
        let s2 = round_from_center_radius(&pt(&c2), rng.gen_range(1.5..3.0)).unwrap();
        let direct = meet(&s1, &s2).unwrap();
        let moved = meet(&motion.versor.apply(&s1), &motion.versor.apply(&s2)).unwrap();
        let expected = motion.versor.apply(direct.raw());
        let got = moved.raw();
        let ratio = (got * &expected.reverse()).scalar_part() / (&expected * &expected.reverse()).scalar_part();
        prop_assert!(got.max_abs_diff(&expected.scale(ratio)) <= 1e-9 * got.coeff_norm());
        prop_assert_eq!(direct.kind(), moved.kind());
    }

    #[test]
    fn sphere_circle_radius_matches_formula(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c1 = random_coords(&mut rng, 3, 5.0);
        let r1: f64 = rng.gen_range(0.5..3.0);
        let r2: f64 = rng.gen_range(0.5..3.0);
        let dir = random_coords(&mut rng, 3, 1.0);
        let len = common::norm(&dir);
        prop_assume!(len > 1e-3);
        // separation strictly between |r1 - r2| and r1 + r2
        let d = rng.gen_range((r1 - r2).abs() + 1e-3..r1 + r2 - 1e-3);
        let c2: Vec<f64> = c1.iter().zip(&dir).map(|(c, u)| c + d * u / len).collect();
        let s1 = sphere_from_center_radius(&pt(&c1), r1).unwrap();
        let s2 = sphere_from_center_radius(&pt(&c2), r2).unwrap();
        let MeetOutcome::Circle { circle, .. } = meet_spheres(&s1, &s2).unwrap() else {
            return Err(TestCaseError::fail("expected a circle"));
        };
        let h = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
        let rho = (r1 * r1 - h * h).sqrt();
        prop_assert!((circle.radius - rho).abs() <= 1e-8);
    }
}

#[test]
fn classification_follows_the_discriminant() {
    // line y = h against the unit circle; tangency at h = 1
    for k in -200..=200 {
        let h = 1.0 + k as f64 * 1e-3;
        let l = line_through(&up(&[0.0, h]), &up(&[1.0, h])).unwrap();
        let c = round_from_center_radius(&pt(&[0.0, 0.0]), 1.0).unwrap();
        let kind = meet(l.blade(), &c).unwrap().kind();
        let expected = if h < 1.0 {
            MeetKind::TwoPoints
        } else if h > 1.0 {
            MeetKind::Empty
        } else {
            MeetKind::TangentPoint
        };
        assert_eq!(kind, expected, "h = {h}");
    }
}
