//! Exact scalars: rational functions in the formal variables over the
//! Gaussian rationals, with the star involution `r -> 1/r`, `i -> -i`.
//!
//! The deformation parameter is carried by a single variable `r` (the
//! square-root-free parameter q̃) with `q = r^-4` and `q^(1/2) = r^-2`, so every
//! exponent that shows up in the geometry is an integer power of `r`.

mod eval;
mod parse;
mod poly;
mod ratfunc;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use eval::UnitEval;
pub use parse::ParseError;
pub use poly::{Mono, Poly, Var, NVARS};
pub use ratfunc::RatFunc;

use crate::field::{Field, GaussRat};

/// Exact element of the coefficient field.
pub type ScalarExpr = RatFunc<GaussRat>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("pole at evaluation point: denominator {0} vanishes")]
    Pole(String),
    #[error("variable `{0}` has no value at the evaluation point")]
    Unbound(&'static str),
    #[error("q̃^4 = 1 is outside the deformed regime")]
    Undeformed,
}

impl<C: Field> Field for RatFunc<C> {
    /// Conjugates coefficients and sends `r` to `1/r`; every other variable is
    /// self-conjugate.
    fn star(&self) -> Self {
        let n = self.numer().map_coeffs(C::star);
        let d = self.denom().map_coeffs(C::star);
        let (nr, dn) = n.reverse_in(Var::R);
        let (dr, dd) = d.reverse_in(Var::R);
        // N(1/r)/D(1/r) = (r^-dn Ñ) / (r^-dd D̃) = Ñ r^dd / (D̃ r^dn)
        let num = nr.mul(&Poly::var_pow(Var::R, dd));
        let den = dr.mul(&Poly::var_pow(Var::R, dn));
        RatFunc::new(num, den)
    }

    fn from_i64(n: i64) -> Self {
        RatFunc::constant(C::from_i64(n))
    }

    fn inverse(&self) -> Option<Self> {
        self.checked_inv()
    }

    fn imaginary_unit() -> Option<Self> {
        C::imaginary_unit().map(RatFunc::constant)
    }
}

impl ScalarExpr {
    pub fn int(n: i64) -> Self {
        Self::constant(GaussRat::from_i64(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::constant(crate::field::gauss_ratio(p, q))
    }

    pub fn gauss(c: GaussRat) -> Self {
        Self::constant(c)
    }

    pub fn i() -> Self {
        Self::constant(crate::field::gauss_i())
    }

    /// q̃
    pub fn r() -> Self {
        Self::var(Var::R)
    }

    /// q = q̃^-4
    pub fn q() -> Self {
        Self::r().powi(-4)
    }

    /// q^(n/2) = q̃^(-2n)
    pub fn q_half_pow(n: i32) -> Self {
        Self::r().powi(-2 * n)
    }

    /// q^n
    pub fn q_pow(n: i32) -> Self {
        Self::r().powi(-4 * n)
    }

    pub fn h() -> Self {
        Self::var(Var::H)
    }

    pub fn zeta() -> Self {
        Self::var(Var::Z)
    }

    /// Parses the text grammar (see [`parse`](Self::parse)).
    pub fn parse(text: &str) -> Result<Self, ScalarError> {
        Ok(parse::parse(text)?)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_div(other).ok_or(ScalarError::DivisionByZero)
    }

    /// Value at `q̃ = 1` (the commutative point), exactly.
    pub fn at_r_one(&self) -> Result<Self, ScalarError> {
        self.substitute(Var::R, &Self::one())
            .ok_or_else(|| ScalarError::Pole(format!("{}", DisplayPoly(self.denom()))))
    }

    /// Substitutes a variable, reporting a pole if the denominator vanishes.
    pub fn subs(&self, v: Var, value: &Self) -> Result<Self, ScalarError> {
        self.substitute(v, value)
            .ok_or_else(|| ScalarError::Pole(format!("{}", DisplayPoly(self.denom()))))
    }

    pub fn is_real(&self) -> bool {
        &self.star() == self
    }
}

/// Writes a Gaussian rational as a grammar-valid factor.
fn write_coeff(f: &mut fmt::Formatter<'_>, c: &GaussRat, standalone: bool) -> fmt::Result {
    let re = &c.re;
    let im = &c.im;
    let one = BigRational::one();
    if im.is_zero() {
        if re == &one && !standalone {
            return Ok(());
        }
        return write_rational(f, re);
    }
    if re.is_zero() {
        if im == &one {
            return write!(f, "i");
        }
        write_rational(f, im)?;
        return write!(f, "*i");
    }
    write!(f, "(")?;
    write_rational(f, re)?;
    if im.is_negative() {
        write!(f, "-")?;
        let a = -im.clone();
        if a != one {
            write_rational(f, &a)?;
            write!(f, "*")?;
        }
    } else {
        write!(f, "+")?;
        if im != &one {
            write_rational(f, im)?;
            write!(f, "*")?;
        }
    }
    write!(f, "i)")
}

fn write_rational(f: &mut fmt::Formatter<'_>, x: &BigRational) -> fmt::Result {
    if x.is_integer() {
        write!(f, "{}", x.numer())
    } else {
        write!(f, "{}/{}", x.numer(), x.denom())
    }
}

/// Negative real or negative imaginary: the printer hoists the sign.
fn negative_real(c: &GaussRat) -> bool {
    (c.im.is_zero() && c.re.is_negative()) || (c.re.is_zero() && c.im.is_negative())
}

/// Grammar-valid rendering of a polynomial.
pub(crate) struct DisplayPoly<'a>(pub &'a Poly<GaussRat>);

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.0;
        if p.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in p.terms().rev() {
            let is_const = m.iter().all(|&e| e == 0);
            let (neg, c) = if negative_real(c) {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            write_coeff(f, &c, is_const)?;
            let unit = c.im.is_zero() && c.re.is_one();
            let mut need_star = !unit && !is_const;
            for v in Var::ALL {
                let e = m[v.index()];
                if e == 0 {
                    continue;
                }
                if need_star {
                    write!(f, "*")?;
                }
                need_star = true;
                if e == 1 {
                    write!(f, "{}", v.name())?;
                } else {
                    write!(f, "{}^{}", v.name(), e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            return write!(f, "{}", DisplayPoly(self.numer()));
        }
        let n = self.numer();
        if n.len() == 1 && n.is_constant() {
            write!(f, "{}", DisplayPoly(n))?;
        } else {
            write!(f, "({})", DisplayPoly(n))?;
        }
        write!(f, "/({})", DisplayPoly(self.denom()))
    }
}

/// Convenience for building exact integers.
pub fn int(n: i64) -> ScalarExpr {
    ScalarExpr::int(n)
}

pub(crate) fn gauss_from_ints(re: &BigInt, im: &BigInt) -> GaussRat {
    Complex::new(
        BigRational::from_integer(re.clone()),
        BigRational::from_integer(im.clone()),
    )
}
