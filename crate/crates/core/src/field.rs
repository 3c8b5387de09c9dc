//! The scalar abstraction every tensor routine is written against.
//!
//! Exact computations run over [`crate::ScalarExpr`]; numeric spot checks run the
//! same code over `Complex<f64>` (or `Complex<f32>`), where `star` is ordinary
//! complex conjugation.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Gaussian rational `a + b i` with `a, b` arbitrary-precision rationals.
pub type GaussRat = Complex<BigRational>;

/// A commutative field with an involutive automorphism `star`.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// The conjugation used by the reality conditions.
    fn star(&self) -> Self;

    fn from_i64(n: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    /// Zero test used by condition checks. Exact fields use `is_zero`; float
    /// fields use a fixed absolute tolerance.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    /// A square root of -1, when the field has one.
    fn imaginary_unit() -> Option<Self> {
        None
    }

    /// Image in `GF(MODULUS)` under a ring map, used to detect coprime
    /// polynomials cheaply. `None` when the field has no such map or the
    /// element is not in its domain.
    fn modular_image(&self) -> Option<u64> {
        None
    }
}

/// A prime `≡ 1 mod 4`, so `GF(MODULUS)` contains a square root of -1.
pub const MODULUS: u64 = 998_244_353;

pub fn mod_mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

pub fn mod_pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mod_mul(r, a);
        }
        a = mod_mul(a, a);
        e >>= 1;
    }
    r
}

pub fn mod_inv(a: u64) -> Option<u64> {
    (a % MODULUS != 0).then(|| mod_pow(a, MODULUS - 2))
}

/// `3` generates the multiplicative group, so this squares to -1.
fn mod_sqrt_minus_one() -> u64 {
    mod_pow(3, (MODULUS - 1) / 4)
}

fn rational_image(x: &BigRational) -> Option<u64> {
    let m = BigInt::from(MODULUS);
    let reduce = |n: &BigInt| -> u64 {
        let r = n % &m;
        let r = if r.sign() == num_bigint::Sign::Minus { r + &m } else { r };
        r.to_u64_digits().1.first().copied().unwrap_or(0)
    };
    let d = mod_inv(reduce(x.denom()))?;
    Some(mod_mul(reduce(x.numer()), d))
}

impl Field for GaussRat {
    fn star(&self) -> Self {
        self.conj()
    }

    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    fn imaginary_unit() -> Option<Self> {
        Some(gauss_i())
    }

    fn modular_image(&self) -> Option<u64> {
        let re = rational_image(&self.re)?;
        let im = rational_image(&self.im)?;
        Some((re + mod_mul(im, mod_sqrt_minus_one())) % MODULUS)
    }
}

macro_rules! numeric_field {
    ($f:ty, $tol:expr) => {
        impl Field for Complex<$f> {
            fn star(&self) -> Self {
                self.conj()
            }

            fn from_i64(n: i64) -> Self {
                Complex::new(n as $f, 0.0)
            }

            fn is_negligible(&self) -> bool {
                self.norm() <= $tol
            }

            fn imaginary_unit() -> Option<Self> {
                Some(Complex::i())
            }
        }
    };
}

numeric_field!(f64, 1e-10);
numeric_field!(f32, 1e-4);

/// `p / q` as a Gaussian rational.
pub fn gauss_ratio(p: i64, q: i64) -> GaussRat {
    Complex::new(
        BigRational::new(BigInt::from(p), BigInt::from(q)),
        BigRational::zero(),
    )
}

pub fn gauss_i() -> GaussRat {
    Complex::new(BigRational::zero(), BigRational::one())
}
