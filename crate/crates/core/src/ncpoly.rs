//! The two-generator q-commuting Laurent algebra `G1 G2 = Q G2 G1`.
//!
//! Elements are kept in normal order (`G1` powers to the left), so two
//! elements are equal exactly when their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::Field;
use crate::scalars::{ScalarError, ScalarExpr, Var};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NcError {
    #[error("presentation mismatch: {0:?} vs {1:?}")]
    PresentationMismatch(PresentationKind, PresentationKind),
    #[error("operation needs the {0:?} presentation")]
    WrongPresentation(PresentationKind),
    #[error("`{0}` is not an invertible monomial")]
    NotInvertible(String),
    #[error("negative power of a sum has no polynomial image")]
    NegativePower,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PresentationKind {
    /// `x y = q̃ y x`
    Xy,
    /// `u v = q v u`
    Uv,
}

/// Generator names and the commutation unit `Q` with `G1 G2 = Q G2 G1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<T> {
    pub kind: PresentationKind,
    pub names: [&'static str; 2],
    pub unit: T,
}

impl Presentation<ScalarExpr> {
    pub fn xy() -> Self {
        Presentation {
            kind: PresentationKind::Xy,
            names: ["x", "y"],
            unit: ScalarExpr::r(),
        }
    }

    pub fn uv() -> Self {
        Presentation {
            kind: PresentationKind::Uv,
            names: ["u", "v"],
            unit: ScalarExpr::q(),
        }
    }
}

/// Star structures on the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarConvention {
    /// Induced from `x* = x, y* = y`: on `(u, v)` this is `u* = q^-1 u`,
    /// `v* = q^-1 v`.
    XyInduced,
    /// `u* = u, v* = v`.
    UvHermitian,
}

/// Integer power of a field element (negative powers invert).
pub fn field_powi<T: Field>(x: &T, e: i64) -> T {
    if e < 0 {
        let inv = x.inverse().expect("negative power of zero");
        return field_powi(&inv, -e);
    }
    let mut result = T::one();
    let mut base = x.clone();
    let mut e = e as u64;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base.clone();
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base;
        }
    }
    result
}

/// `Σ c_ab G1^a G2^b`.
#[derive(Clone, PartialEq)]
pub struct NcPoly<T> {
    pres: Presentation<T>,
    terms: BTreeMap<(i32, i32), T>,
}

impl<T: Field> NcPoly<T> {
    pub fn zero(pres: &Presentation<T>) -> Self {
        NcPoly {
            pres: pres.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(pres: &Presentation<T>, c: T) -> Self {
        Self::monomial(pres, c, 0, 0)
    }

    pub fn one(pres: &Presentation<T>) -> Self {
        Self::constant(pres, T::one())
    }

    pub fn monomial(pres: &Presentation<T>, c: T, a: i32, b: i32) -> Self {
        let mut out = Self::zero(pres);
        out.add_term((a, b), c);
        out
    }

    pub fn gen1(pres: &Presentation<T>) -> Self {
        Self::monomial(pres, T::one(), 1, 0)
    }

    pub fn gen2(pres: &Presentation<T>) -> Self {
        Self::monomial(pres, T::one(), 0, 1)
    }

    pub fn presentation(&self) -> &Presentation<T> {
        &self.pres
    }

    pub fn kind(&self) -> PresentationKind {
        self.pres.kind
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: i32, b: i32) -> T {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|k| *k == (0, 0))
    }

    fn add_term(&mut self, key: (i32, i32), c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), NcError> {
        if self.pres.kind != other.pres.kind {
            return Err(NcError::PresentationMismatch(self.pres.kind, other.pres.kind));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, NcError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, NcError> {
        self.try_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        NcPoly {
            pres: self.pres.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    /// Normal-ordered product, using `G2^b G1^c = Q^(-bc) G1^c G2^b`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, NcError> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.pres);
        let mut unit_powers: BTreeMap<i64, T> = BTreeMap::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let swaps = -(*b1 as i64) * (*a2 as i64);
                let phase = unit_powers
                    .entry(swaps)
                    .or_insert_with(|| field_powi(&self.pres.unit, swaps))
                    .clone();
                let a = a1.checked_add(*a2).expect("exponent overflow");
                let b = b1.checked_add(*b2).expect("exponent overflow");
                out.add_term((a, b), c1.clone() * c2.clone() * phase);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(&self.pres);
        for (k, x) in &self.terms {
            out.add_term(*k, x.clone() * c.clone());
        }
        out
    }

    /// `[a, b] = ab - ba`
    pub fn commutator(&self, other: &Self) -> Result<Self, NcError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// The single term of a one-term element.
    pub fn as_monomial(&self) -> Option<(T, i32, i32)> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms
            .iter()
            .next()
            .map(|((a, b), c)| (c.clone(), *a, *b))
    }

    /// Inverse of `k G1^m G2^n`: `k^-1 Q^(-mn) G1^-m G2^-n`.
    pub fn inverse_monomial(&self) -> Result<Self, NcError> {
        let (k, m, n) = self
            .as_monomial()
            .ok_or_else(|| NcError::NotInvertible(format!("{:?}", self)))?;
        let kinv = k
            .inverse()
            .ok_or_else(|| NcError::NotInvertible(format!("{:?}", self)))?;
        let phase = field_powi(&self.pres.unit, -(m as i64) * (n as i64));
        Ok(Self::monomial(&self.pres, kinv * phase, -m, -n))
    }

    /// Integer power; negative powers need a monomial.
    pub fn powi(&self, e: i32) -> Result<Self, NcError> {
        if e < 0 {
            return self.inverse_monomial()?.powi(-e);
        }
        let mut out = Self::one(&self.pres);
        for _ in 0..e {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    /// Antimultiplicative star `(c G1^a G2^b)* = c* (G2*)^b (G1*)^a`.
    ///
    /// On `(x, y)` both conventions mean `x* = x, y* = y`.
    pub fn star(&self, conv: StarConvention) -> Self
    where
        T: StarUnits,
    {
        let (k1, k2) = T::star_units(self.pres.kind, conv);
        let mut out = Self::zero(&self.pres);
        for ((a, b), c) in &self.terms {
            // (k2 G2)^b (k1 G1)^a = k1^a k2^b Q^(-ab) G1^a G2^b
            let phase = field_powi(&k1, *a as i64)
                * field_powi(&k2, *b as i64)
                * field_powi(&self.pres.unit, -(*a as i64) * (*b as i64));
            out.add_term((*a, *b), c.star() * phase);
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&T) -> T) -> Self {
        let mut out = Self::zero(&self.pres);
        for (k, c) in &self.terms {
            out.add_term(*k, f(c));
        }
        out
    }

    pub fn try_map_coeffs<E>(&self, f: impl Fn(&T) -> Result<T, E>) -> Result<Self, E> {
        let mut out = Self::zero(&self.pres);
        for (k, c) in &self.terms {
            out.add_term(*k, f(c)?);
        }
        Ok(out)
    }
}

/// Scalars that know the star images of the generators.
pub trait StarUnits: Field {
    /// `(k1, k2)` with `G1* = k1 G1`, `G2* = k2 G2`.
    fn star_units(kind: PresentationKind, conv: StarConvention) -> (Self, Self);
}

impl StarUnits for ScalarExpr {
    fn star_units(kind: PresentationKind, conv: StarConvention) -> (Self, Self) {
        match (kind, conv) {
            (PresentationKind::Uv, StarConvention::XyInduced) => {
                let k = ScalarExpr::q_pow(-1);
                (k.clone(), k)
            }
            _ => (ScalarExpr::one(), ScalarExpr::one()),
        }
    }
}

/// Exact algebra element.
pub type NCElement = NcPoly<ScalarExpr>;

impl NCElement {
    pub fn u() -> Self {
        Self::gen1(&Presentation::uv())
    }

    pub fn v() -> Self {
        Self::gen2(&Presentation::uv())
    }

    pub fn x() -> Self {
        Self::gen1(&Presentation::xy())
    }

    pub fn y() -> Self {
        Self::gen2(&Presentation::xy())
    }

    pub fn uv_scalar(c: ScalarExpr) -> Self {
        Self::constant(&Presentation::uv(), c)
    }

    pub fn uv_monomial(c: ScalarExpr, a: i32, b: i32) -> Self {
        Self::monomial(&Presentation::uv(), c, a, b)
    }

    /// Text form `coeff * u^a * v^b + ...`.
    pub fn render(&self) -> String {
        format!("{}", self)
    }
}

/// The inner-derivation elements on `(u, v)`:
/// `λ1 = v^-1 / (1 - q^-1)`, `λ2 = -u^-1 / (1 - q^-1)`.
pub fn lambdas_uv() -> [NCElement; 2] {
    let one = ScalarExpr::one();
    let k = &one / &(&one - &ScalarExpr::q_pow(-1));
    [
        NCElement::uv_monomial(k.clone(), 0, -1),
        NCElement::uv_monomial(-k, -1, 0),
    ]
}

/// Image of a `(u, v)` element in `(x, y)`: `u -> ε2 q̃^-2 x^2`,
/// `v -> ε1 x^2 y^-2`. An algebra map; odd powers of `x`, `y` have no preimage.
pub fn embed_uv_in_xy(a: &NCElement, eps1: i8, eps2: i8) -> Result<NCElement, NcError> {
    if a.kind() != PresentationKind::Uv {
        return Err(NcError::WrongPresentation(PresentationKind::Uv));
    }
    let xy = Presentation::xy();
    let u_img = NCElement::monomial(&xy, ScalarExpr::int(eps2 as i64) * ScalarExpr::r().powi(-2), 2, 0);
    let v_img = NCElement::monomial(&xy, ScalarExpr::int(eps1 as i64), 2, -2);
    let mut out = NCElement::zero(&xy);
    for ((p, s), c) in a.terms() {
        let img = u_img.powi(*p)?.try_mul(&v_img.powi(*s)?)?;
        out = out.try_add(&img.scale(c))?;
    }
    Ok(out)
}

/// Commutative-limit rewrite of a polynomial in `u, v` in light-cone
/// coordinates `t = (u + v)/√2`, `ρ = (u - v)/√2`.
///
/// To stay inside the Gaussian rationals the result is expressed in the
/// rescaled coordinates `T = √2 t`, `P = √2 ρ` (variables [`Var::T`],
/// [`Var::Rho`]), i.e. `u = (T + P)/2`, `v = (T - P)/2`. Coefficients are
/// evaluated at `q̃ = 1`; negative powers of `u` or `v` are rejected.
pub fn to_tr(a: &NCElement) -> Result<ScalarExpr, NcError> {
    if a.kind() != PresentationKind::Uv {
        return Err(NcError::WrongPresentation(PresentationKind::Uv));
    }
    let half = ScalarExpr::ratio(1, 2);
    let t = ScalarExpr::var(Var::T);
    let rho = ScalarExpr::var(Var::Rho);
    let u = &half * &(&t + &rho);
    let v = &half * &(&t - &rho);
    let mut out = ScalarExpr::zero();
    for ((p, s), c) in a.terms() {
        if *p < 0 || *s < 0 {
            return Err(NcError::NegativePower);
        }
        let c1 = c.at_r_one()?;
        out = out + c1 * u.powi(*p) * v.powi(*s);
    }
    Ok(out)
}

impl<T: Field> fmt::Debug for NcPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})*{}^{}*{}^{}", c, self.pres.names[0], a, self.pres.names[1], b)?;
        }
        Ok(())
    }
}

impl fmt::Display for NCElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            if *a != 0 {
                write!(f, " * {}^{}", self.pres.names[0], a)?;
            }
            if *b != 0 {
                write!(f, " * {}^{}", self.pres.names[1], b)?;
            }
        }
        Ok(())
    }
}

macro_rules! nc_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<'a, T: Field> $tr<&'a NcPoly<T>> for &'a NcPoly<T> {
            type Output = NcPoly<T>;
            /// Panics on a presentation mismatch; see the `try_` variant.
            fn $m(self, rhs: &NcPoly<T>) -> NcPoly<T> {
                self.$try(rhs).expect("presentation mismatch")
            }
        }
        impl<T: Field> $tr<NcPoly<T>> for NcPoly<T> {
            type Output = NcPoly<T>;
            fn $m(self, rhs: NcPoly<T>) -> NcPoly<T> {
                self.$try(&rhs).expect("presentation mismatch")
            }
        }
    };
}

nc_op!(Add, add, try_add);
nc_op!(Sub, sub, try_sub);
nc_op!(Mul, mul, try_mul);

impl<T: Field> Neg for &NcPoly<T> {
    type Output = NcPoly<T>;
    fn neg(self) -> NcPoly<T> {
        self.neg_ref()
    }
}

impl<T: Field> Neg for NcPoly<T> {
    type Output = NcPoly<T>;
    fn neg(self) -> NcPoly<T> {
        self.neg_ref()
    }
}
