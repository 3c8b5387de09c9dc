//! Reduced fractions of multivariate polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{Poly, Var};
use crate::field::Field;

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Zero is `0 / 1`.
///
/// Because the representation is canonical, `==` is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<C> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: Field> RatFunc<C> {
    /// Builds `num / den` and reduces it. Panics on a zero denominator.
    pub fn new(num: Poly<C>, den: Poly<C>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = d.leading_coeff();
        if !lc.is_one() {
            let inv = C::one() / lc;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn numer(&self) -> &Poly<C> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<C> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.num.is_zero() {
            return None;
        }
        Some(Self::new(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    /// Integer power; negative exponents invert. Panics on `0^-n`.
    pub fn powi(&self, e: i32) -> Self {
        if e >= 0 {
            RatFunc {
                num: self.num.pow(e as u32),
                den: self.den.pow(e as u32),
            }
            .renormalized()
        } else {
            self.checked_inv()
                .expect("negative power of zero")
                .powi(-e)
        }
    }

    // Powers of a reduced fraction stay reduced; only the leading coefficient
    // of the denominator may need fixing (it is already 1 here).
    fn renormalized(self) -> Self {
        if self.den.leading_coeff().is_one() {
            self
        } else {
            Self::new(self.num, self.den)
        }
    }

    /// Substitutes `v := value`.
    pub fn substitute(&self, v: Var, value: &Self) -> Option<Self> {
        if !self.num.contains_var(v) && !self.den.contains_var(v) {
            return Some(self.clone());
        }
        let n = substitute_poly(&self.num, v, value);
        let d = substitute_poly(&self.den, v, value);
        n.checked_div(&d)
    }

    pub fn degree_in(&self, v: Var) -> (u32, u32) {
        (self.num.degree_in(v), self.den.degree_in(v))
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        Self::new(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
    }
}

fn substitute_poly<C: Field>(p: &Poly<C>, v: Var, value: &RatFunc<C>) -> RatFunc<C> {
    let mut out = RatFunc::zero();
    for (e, coeff) in p.coefficients_in(v) {
        out = out + RatFunc::from_poly(coeff) * value.powi(e as i32);
    }
    out
}

impl<C: Field> Zero for RatFunc<C> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<C: Field> One for RatFunc<C> {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl<'a, C: Field> Add<&'a RatFunc<C>> for &'a RatFunc<C> {
    type Output = RatFunc<C>;

    fn add(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc::from_poly(self.num.add(&rhs.num));
            }
            return RatFunc::new(self.num.add(&rhs.num), self.den.clone());
        }
        // Both inputs are reduced, so any common factor of the sum's
        // numerator and denominator divides gcd(d1, d2).
        let g = Poly::gcd(&self.den, &rhs.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&rhs.num.mul(&d1));
        if num.is_zero() {
            return RatFunc::zero();
        }
        let h = Poly::gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).expect("gcd divides"), g.div_exact(&h).expect("gcd divides"))
        };
        let den = d1.mul(&d2).mul(&g);
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = C::one() / lc;
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }
}

impl<'a, C: Field> Sub<&'a RatFunc<C>> for &'a RatFunc<C> {
    type Output = RatFunc<C>;

    fn sub(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        self + &(-rhs)
    }
}

impl<'a, C: Field> Mul<&'a RatFunc<C>> for &'a RatFunc<C> {
    type Output = RatFunc<C>;

    fn mul(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&rhs.num));
        }
        // Cross-cancel first to keep intermediate sizes small.
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = C::one() / lc;
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }
}

impl<'a, C: Field> Div<&'a RatFunc<C>> for &'a RatFunc<C> {
    type Output = RatFunc<C>;

    /// Panics on division by zero; use [`RatFunc::checked_div`] to recover.
    fn div(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        let inv = rhs.checked_inv().expect("division by zero rational function");
        self * &inv
    }
}

impl<'a, C: Field> Neg for &'a RatFunc<C> {
    type Output = RatFunc<C>;

    fn neg(self) -> RatFunc<C> {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Field> $tr<RatFunc<C>> for RatFunc<C> {
            type Output = RatFunc<C>;
            fn $m(self, rhs: RatFunc<C>) -> RatFunc<C> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, C: Field> $tr<&'a RatFunc<C>> for RatFunc<C> {
            type Output = RatFunc<C>;
            fn $m(self, rhs: &RatFunc<C>) -> RatFunc<C> {
                (&self).$m(rhs)
            }
        }
        impl<'a, C: Field> $tr<RatFunc<C>> for &'a RatFunc<C> {
            type Output = RatFunc<C>;
            fn $m(self, rhs: RatFunc<C>) -> RatFunc<C> {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<C: Field> Neg for RatFunc<C> {
    type Output = RatFunc<C>;

    fn neg(self) -> RatFunc<C> {
        -&self
    }
}

impl<C: Field> fmt::Debug for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}
