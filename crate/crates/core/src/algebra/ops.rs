//! Operator sugar. `*` is the geometric product, `^` the outer product and
//! `|` the inner product. Operators panic on a signature mismatch; use the
//! named methods for a checked result.

use std::ops::{Add, BitOr, BitXor, Mul, Neg, Sub};

use super::multivector::Multivector;

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                let f: fn(&Multivector, &Multivector) -> Multivector = $body;
                f(self, rhs)
            }
        }
        impl $trait<Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Multivector> for Multivector {
            type Output = Multivector;
            fn $method(self, rhs: &Multivector) -> Multivector {
                (&self).$method(rhs)
            }
        }
        impl $trait<Multivector> for &Multivector {
            type Output = Multivector;
            fn $method(self, rhs: Multivector) -> Multivector {
                self.$method(&rhs)
            }
        }
    };
}

fn unwrap<T>(r: crate::Result<T>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => panic!("{e}"),
    }
}

forward_binop!(Mul, mul, |a, b| a.gp(b));
forward_binop!(BitXor, bitxor, |a, b| unwrap(a.outer_product(b)));
forward_binop!(BitOr, bitor, |a, b| unwrap(a.inner_product(b)));
forward_binop!(Add, add, |a, b| zip(a, b, |x, y| x + y));
forward_binop!(Sub, sub, |a, b| zip(a, b, |x, y| x - y));

fn zip(a: &Multivector, b: &Multivector, f: impl Fn(f64, f64) -> f64) -> Multivector {
    if a.signature() != b.signature() {
        panic!("signature mismatch: {} vs {}", a.signature(), b.signature());
    }
    let coeffs = a
        .coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(&x, &y)| f(x, y))
        .collect();
    unwrap(Multivector::from_coeffs(a.signature(), coeffs))
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<&Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        rhs.scale(self)
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs.scale(self)
    }
}
