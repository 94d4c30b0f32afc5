//! Throughput of the table-driven geometric product against a direct
//! double sum over blade pairs.

use std::hint::black_box;
use std::time::{Duration, Instant};

use cga::{blade_product, Multivector, Signature};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random pairs compared against the oracle before any timing.
pub const CROSS_CHECK_SAMPLES: usize = 256;

/// The oracle is slow; it is timed on at most this many products.
pub const ORACLE_CAP: usize = 20_000;

/// Relative tolerance of the cross-check.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-12;

const POOL: usize = 64;

pub type Kernel = fn(&Multivector, &Multivector) -> Multivector;

pub fn engine_product(a: &Multivector, b: &Multivector) -> Multivector {
    a.geometric_product(b).expect("operands share a signature")
}

/// Double sum over all blade pairs.
pub fn oracle_product(a: &Multivector, b: &Multivector) -> Multivector {
    let sig = a.signature();
    let mut out = vec![0.0; sig.blade_count()];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            let (sign, k) = blade_product(i, j, sig);
            out[k] += sign * x * y;
        }
    }
    Multivector::from_coeffs(sig, out).expect("finite products")
}

/// Engine product with one coefficient disturbed, for exercising the
/// cross-check.
pub fn faulty_product(a: &Multivector, b: &Multivector) -> Multivector {
    let mut out = engine_product(a, b);
    out.set_coeff(1, out.coeff(1) + 1e-3);
    out
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("{sig}: cross-check failed on sample {sample} (relative deviation {deviation:e})")]
pub struct Mismatch {
    pub sig: Signature,
    pub sample: usize,
    pub deviation: f64,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub sig: Signature,
    pub iterations: usize,
    pub samples: usize,
    pub engine_time: Duration,
    pub oracle_iterations: usize,
    pub oracle_time: Duration,
}

fn rate(count: usize, time: Duration) -> f64 {
    count as f64 / time.as_secs_f64().max(1e-9)
}

impl Report {
    pub fn engine_rate(&self) -> f64 {
        rate(self.iterations, self.engine_time)
    }

    pub fn oracle_rate(&self) -> f64 {
        rate(self.oracle_iterations, self.oracle_time)
    }

    pub fn speedup(&self) -> f64 {
        self.engine_rate() / self.oracle_rate()
    }
}

fn random_multivector(rng: &mut ChaCha8Rng, sig: Signature) -> Multivector {
    let coeffs = (0..sig.blade_count())
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();
    Multivector::from_coeffs(sig, coeffs).expect("finite coefficients")
}

/// Compares `kernel` with the oracle on random pairs.
pub fn cross_check(sig: Signature, kernel: Kernel, samples: usize) -> Result<(), Mismatch> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for sample in 0..samples {
        let a = random_multivector(&mut rng, sig);
        let b = random_multivector(&mut rng, sig);
        let expected = oracle_product(&a, &b);
        let got = kernel(&a, &b);
        let deviation = got.max_abs_diff(&expected) / expected.coeff_norm().max(f64::MIN_POSITIVE);
        if deviation.is_nan() || deviation > CROSS_CHECK_TOLERANCE {
            return Err(Mismatch {
                sig,
                sample,
                deviation,
            });
        }
    }
    Ok(())
}

fn time(kernel: Kernel, pool: &[(Multivector, Multivector)], count: usize) -> Duration {
    let start = Instant::now();
    for i in 0..count {
        let (a, b) = &pool[i % pool.len()];
        black_box(kernel(black_box(a), black_box(b)));
    }
    start.elapsed()
}

/// Cross-checks `kernel`, then times `iterations` products with it and a
/// capped run of the oracle. Zero iterations produce no report.
pub fn run(sig: Signature, iterations: usize, kernel: Kernel) -> Result<Option<Report>, Mismatch> {
    if iterations == 0 {
        return Ok(None);
    }
    cross_check(sig, kernel, CROSS_CHECK_SAMPLES)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pool: Vec<_> = (0..POOL)
        .map(|_| {
            (
                random_multivector(&mut rng, sig),
                random_multivector(&mut rng, sig),
            )
        })
        .collect();
    let engine_time = time(kernel, &pool, iterations);
    let oracle_iterations = iterations.min(ORACLE_CAP);
    let oracle_time = time(oracle_product, &pool, oracle_iterations);
    Ok(Some(Report {
        sig,
        iterations,
        samples: CROSS_CHECK_SAMPLES,
        engine_time,
        oracle_iterations,
        oracle_time,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn engine_passes_and_fault_is_caught() {
        for (p, q) in [(3, 1), (4, 1)] {
            let sig = Signature::new(p, q).unwrap();
            assert_eq!(cross_check(sig, engine_product, 64), Ok(()));
            let err = cross_check(sig, faulty_product, 64).unwrap_err();
            assert_eq!(err.sample, 0);
        }
    }

    #[test]
    fn zero_iterations_is_empty() {
        let sig = Signature::new(4, 1).unwrap();
        assert!(run(sig, 0, faulty_product).unwrap().is_none());
    }

    #[test]
    fn small_run_reports_counts() {
        let sig = Signature::new(3, 1).unwrap();
        let report = run(sig, 100, engine_product).unwrap().unwrap();
        assert_eq!(report.iterations, 100);
        assert_eq!(report.oracle_iterations, 100);
        assert!(report.speedup() > 0.0);
    }
}
