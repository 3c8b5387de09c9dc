//! Sparse multivariate polynomials with field coefficients, with exact
//! division and a recursive primitive-PRS gcd.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::field::{mod_inv, mod_mul, Field, MODULUS};

/// Number of formal variables known to the engine.
pub const NVARS: usize = 13;

fn trim<C: Field>(p: &mut Vec<C>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn make_monic<C: Field>(p: &mut [C]) {
    if let Some(lc) = p.last().cloned() {
        if !lc.is_one() {
            let inv = C::one() / lc;
            for c in p.iter_mut() {
                *c = c.clone() * inv.clone();
            }
        }
    }
}

fn mod_image<C: Field>(p: &[C]) -> Option<Vec<u64>> {
    let out: Option<Vec<u64>> = p.iter().map(Field::modular_image).collect();
    // a vanishing leading coefficient would lower the degree
    out.filter(|v| v.last().is_some_and(|c| *c != 0))
}

/// Degree of the gcd over `GF(MODULUS)`.
fn mod_gcd_degree(mut f: Vec<u64>, mut g: Vec<u64>) -> usize {
    let trim = |p: &mut Vec<u64>| {
        while p.last() == Some(&0) {
            p.pop();
        }
    };
    trim(&mut f);
    trim(&mut g);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let dg = g.len() - 1;
        let inv = mod_inv(g[dg]).expect("nonzero leading coefficient");
        for i in (dg..f.len()).rev() {
            let c = mod_mul(f[i], inv);
            if c == 0 {
                continue;
            }
            for j in 0..=dg {
                let sub = mod_mul(c, g[j]);
                f[i - dg + j] = (f[i - dg + j] + MODULUS - sub) % MODULUS;
            }
        }
        f.truncate(dg);
        trim(&mut f);
        std::mem::swap(&mut f, &mut g);
    }
    f.len().saturating_sub(1)
}

/// Monic gcd of dense univariate polynomials by Euclid over the field.
///
/// A constant gcd of the images mod a prime (with leading coefficients
/// surviving) certifies coprimality, which skips the exact remainder
/// sequence in the common case.
fn dense_gcd<C: Field>(mut f: Vec<C>, mut g: Vec<C>) -> Vec<C> {
    trim(&mut f);
    trim(&mut g);
    if let (Some(fm), Some(gm)) = (mod_image(&f), mod_image(&g)) {
        if mod_gcd_degree(fm, gm) == 0 {
            return vec![C::one()];
        }
    }
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    make_monic(&mut g);
    while !g.is_empty() {
        let dg = g.len() - 1;
        for i in (dg..f.len()).rev() {
            let c = f[i].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..=dg {
                let sub = c.clone() * g[j].clone();
                f[i - dg + j] = f[i - dg + j].clone() - sub;
            }
        }
        f.truncate(dg);
        trim(&mut f);
        make_monic(&mut f);
        std::mem::swap(&mut f, &mut g);
    }
    make_monic(&mut f);
    f
}

/// Formal commuting variables.
///
/// `R` is the deformation parameter (q = r^-4); `H` the jordanian parameter;
/// `Z` the family parameter. The remaining variables only appear in
/// commutative-limit bookkeeping (line elements, jordanian limits, the
/// light-cone coordinates `t`, `rho`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    R = 0,
    H = 1,
    Z = 2,
    H0 = 3,
    U = 4,
    V = 5,
    UPrime = 6,
    VPrime = 7,
    G1 = 8,
    G2 = 9,
    G4 = 10,
    T = 11,
    Rho = 12,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::R,
        Var::H,
        Var::Z,
        Var::H0,
        Var::U,
        Var::V,
        Var::UPrime,
        Var::VPrime,
        Var::G1,
        Var::G2,
        Var::G4,
        Var::T,
        Var::Rho,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::R => "r",
            Var::H => "h",
            Var::Z => "zeta",
            Var::H0 => "h0",
            Var::U => "u",
            Var::V => "v",
            Var::UPrime => "u'",
            Var::VPrime => "v'",
            Var::G1 => "g1",
            Var::G2 => "g2",
            Var::G4 => "g4",
            Var::T => "t",
            Var::Rho => "rho",
        }
    }
}

/// Exponent vector; lexicographic order with `r` most significant.
pub type Mono = [u32; NVARS];

fn mono_divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

fn mono_sub(a: &Mono, b: &Mono) -> Mono {
    let mut out = [0; NVARS];
    for k in 0..NVARS {
        out[k] = a[k] - b[k];
    }
    out
}

fn mono_add(a: &Mono, b: &Mono) -> Mono {
    let mut out = [0; NVARS];
    for k in 0..NVARS {
        out[k] = a[k].checked_add(b[k]).expect("exponent overflow");
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    terms: BTreeMap<Mono, C>,
}

impl<C: Field> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, [0; NVARS])
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn monomial(c: C, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = 1;
        Self::monomial(C::one(), m)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Self::monomial(C::one(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.iter().all(|&e| e == 0) && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<C> {
        if self.is_zero() {
            return Some(C::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Mono, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> C {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_add(ma, mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (*m, x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (mono_add(k, m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => {
                let inv = C::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m[v.index()]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m[v.index()]).min().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m[v.index()] > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|v| self.contains_var(*v))
            .collect()
    }

    /// Splits into coefficients of powers of `v`; the coefficients do not
    /// contain `v`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<u32, Poly<C>> {
        let mut out: BTreeMap<u32, Poly<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m[v.index()];
            let mut rest = *m;
            rest[v.index()] = 0;
            out.entry(e).or_insert_with(Self::zero).add_term(rest, c.clone());
        }
        out
    }

    fn leading_coeff_in(&self, v: Var) -> Poly<C> {
        let d = self.degree_in(v);
        self.coefficients_in(v).remove(&d).unwrap_or_else(Self::zero)
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&(C::one() / c)));
        }
        let (lm_b, lc_b) = divisor.leading().map(|(m, c)| (*m, c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((lm_r, lc_r)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if !mono_divides(&lm_b, &lm_r) {
                return None;
            }
            let m = mono_sub(&lm_r, &lm_b);
            let c = lc_r / lc_b.clone();
            let step = Poly::monomial(c, m);
            rem = rem.sub(&divisor.mul(&step));
            quot = quot.add(&step);
        }
        Some(quot)
    }

    /// The one variable occurring in `a` and `b`, if there is exactly one.
    fn single_var(a: &Self, b: &Self) -> Option<Var> {
        let mut found = None;
        for v in Var::ALL {
            if a.contains_var(v) || b.contains_var(v) {
                if found.is_some() {
                    return None;
                }
                found = Some(v);
            }
        }
        found
    }

    /// Coefficients by ascending power of `v`; `self` must be univariate.
    fn to_dense(&self, v: Var) -> Vec<C> {
        let mut out = vec![C::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            out[m[v.index()] as usize] = c.clone();
        }
        out
    }

    fn from_dense(v: Var, coeffs: Vec<C>) -> Self {
        let mut out = Self::zero();
        for (e, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                let mut m = [0; NVARS];
                m[v.index()] = e as u32;
                out.terms.insert(m, c);
            }
        }
        out
    }

    /// `(m, p / x^m)` with `x^m` the largest monomial dividing `self`.
    fn split_monomial_content(&self) -> (Mono, Self) {
        let mut m = [u32::MAX; NVARS];
        for key in self.terms.keys() {
            for k in 0..NVARS {
                m[k] = m[k].min(key[k]);
            }
        }
        if m == [0; NVARS] || self.is_zero() {
            return ([0; NVARS], self.clone());
        }
        let terms = self.terms.iter().map(|(k, c)| (mono_sub(k, &m), c.clone())).collect();
        (m, Poly { terms })
    }

    /// Pseudo-remainder of `self` by `divisor` viewed as polynomials in `v`.
    fn prem(&self, divisor: &Self, v: Var) -> Self {
        let db = divisor.degree_in(v);
        let lc_b = divisor.leading_coeff_in(v);
        let mut rem = self.clone();
        while !rem.is_zero() && rem.degree_in(v) >= db {
            let dr = rem.degree_in(v);
            let lc_r = rem.leading_coeff_in(v);
            let shift = Poly::var_pow(v, dr - db);
            rem = rem.mul(&lc_b).sub(&divisor.mul(&lc_r).mul(&shift));
        }
        rem
    }

    /// Gcd of the coefficients with respect to `v`.
    fn content_in(&self, v: Var) -> Self {
        let mut g = Self::zero();
        for c in self.coefficients_in(v).into_values() {
            g = Self::gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_part_in(&self, v: Var) -> Self {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one();
        }
        if a.is_monomial() || b.is_monomial() {
            let mut m = [u32::MAX; NVARS];
            for key in a.terms.keys().chain(b.terms.keys()) {
                for k in 0..NVARS {
                    m[k] = m[k].min(key[k]);
                }
            }
            return Poly::monomial(C::one(), m);
        }
        if a == b {
            return a.monic();
        }
        let (ma, a) = a.split_monomial_content();
        let (mb, b) = b.split_monomial_content();
        if ma != [0; NVARS] || mb != [0; NVARS] {
            let mut m = [0; NVARS];
            for k in 0..NVARS {
                m[k] = ma[k].min(mb[k]);
            }
            return Self::gcd(&a, &b).mul_mono(&m);
        }
        if let Some(v) = Self::single_var(&a, &b) {
            return Self::from_dense(v, dense_gcd(a.to_dense(v), b.to_dense(v)));
        }
        let (a, b) = (&a, &b);
        let var = Var::ALL
            .iter()
            .copied()
            .find(|v| a.contains_var(*v) || b.contains_var(*v))
            .expect("non-constant polynomial has a variable");

        let ca = a.content_in(var);
        let cb = b.content_in(var);
        let content = Self::gcd(&ca, &cb);
        let pa = a.div_exact(&ca).expect("content divides");
        let pb = b.div_exact(&cb).expect("content divides");

        let (mut f, mut g) = if pa.degree_in(var) >= pb.degree_in(var) {
            (pa, pb.monic())
        } else {
            (pb, pa.monic())
        };
        let core = loop {
            if g.degree_in(var) == 0 {
                break Self::one();
            }
            let r = f.prem(&g, var);
            if r.is_zero() {
                break g.primitive_part_in(var);
            }
            f = g;
            // constant rescaling keeps pseudo-remainder coefficients bounded
            g = r.primitive_part_in(var).monic();
        };
        content.mul(&core).monic()
    }

    /// Substitutes `v := value` (a polynomial), keeping other variables.
    pub fn substitute(&self, v: Var, value: &Self) -> Self {
        let mut out = Self::zero();
        let mut powers: BTreeMap<u32, Poly<C>> = BTreeMap::new();
        for (e, coeff) in self.coefficients_in(v) {
            let p = powers.entry(e).or_insert_with(|| value.pow(e)).clone();
            out = out.add(&coeff.mul(&p));
        }
        out
    }

    /// Reverses the exponents of `v`: returns `(x^d P(1/x), d)` with `d` the
    /// degree in `v`.
    pub fn reverse_in(&self, v: Var) -> (Self, u32) {
        let d = self.degree_in(v);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut k = *m;
                k[v.index()] = d - m[v.index()];
                (k, c.clone())
            })
            .collect();
        (Poly { terms }, d)
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// Evaluates with one value per variable; unbound variables (`None`)
    /// must not occur.
    pub fn eval_with<T>(
        &self,
        values: &[Option<T>; NVARS],
        coeff: impl Fn(&C) -> T,
    ) -> Result<T, Var>
    where
        T: Clone + Zero + One + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
    {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for v in Var::ALL {
                let e = m[v.index()];
                if e == 0 {
                    continue;
                }
                let x = values[v.index()].clone().ok_or(v)?;
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }
}

impl<C: Field> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{:?}", c)?;
            for v in Var::ALL {
                if m[v.index()] > 0 {
                    write!(f, "*{}^{}", v.name(), m[v.index()])?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
