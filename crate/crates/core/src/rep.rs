//! Numeric model of the plane on exponential kets `|k⟩ = e^{-kx}`.
//!
//! `v` multiplies by `e^{-2παx}` and so sends `|k⟩` to `|k + 2πα⟩`; `u`
//! shifts the argument by `-iβ`, which multiplies `|k⟩` by `e^{iβk}`.
//! With this orientation `u v = q v u` for `q = e^{2πiαβ}`.

use num_complex::Complex;
use num_traits::{Float, FloatConst, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("alpha and beta must be positive, got {0} and {1}")]
    NonPositive(f64, f64),
    #[error("q^4 = 1 at alpha*beta = {0}")]
    Undeformed(f64),
    #[error("ket label k = {0} needs a positive real part")]
    BadLabel(String),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepParams<F> {
    alpha: F,
    beta: F,
}

impl<F: Float + FloatConst> RepParams<F> {
    pub fn new(alpha: F, beta: F) -> Result<Self, RepError> {
        let as_f64 = |x: F| x.to_f64().unwrap_or(f64::NAN);
        if !(alpha > F::zero() && beta > F::zero()) {
            return Err(RepError::NonPositive(as_f64(alpha), as_f64(beta)));
        }
        let p = RepParams { alpha, beta };
        let q4 = p.q().powi(4);
        let tol = F::from(1e-9).unwrap();
        if (q4 - Complex::new(F::one(), F::zero())).norm() < tol {
            return Err(RepError::Undeformed(as_f64(p.gamma())));
        }
        Ok(p)
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn beta(&self) -> F {
        self.beta
    }

    pub fn gamma(&self) -> F {
        self.alpha * self.beta
    }

    /// `e^{2πiγ}`
    pub fn q(&self) -> Complex<F> {
        Complex::from_polar(F::one(), F::TAU() * self.gamma())
    }
}

/// `Σ a_j e^{-k_j x}`, labels kept sorted and distinct.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket<F> {
    terms: Vec<(Complex<F>, Complex<F>)>,
}

impl<F: Float> Ket<F> {
    pub fn basis(k: Complex<F>) -> Result<Self, RepError> {
        Self::from_terms(vec![(k, Complex::new(F::one(), F::zero()))])
    }

    pub fn from_terms(terms: Vec<(Complex<F>, Complex<F>)>) -> Result<Self, RepError> {
        let mut out: Vec<(Complex<F>, Complex<F>)> = Vec::with_capacity(terms.len());
        for (k, a) in terms {
            if !(k.re > F::zero()) {
                return Err(RepError::BadLabel(format!(
                    "{}{:+}i",
                    k.re.to_f64().unwrap_or(f64::NAN),
                    k.im.to_f64().unwrap_or(f64::NAN)
                )));
            }
            match out.iter_mut().find(|(k2, _)| *k2 == k) {
                Some((_, a2)) => *a2 = *a2 + a,
                None => out.push((k, a)),
            }
        }
        out.sort_by(|x, y| {
            (x.0.re, x.0.im)
                .partial_cmp(&(y.0.re, y.0.im))
                .expect("finite labels")
        });
        Ok(Ket { terms: out })
    }

    pub fn terms(&self) -> &[(Complex<F>, Complex<F>)] {
        &self.terms
    }

    pub fn amplitude(&self, k: Complex<F>) -> Complex<F> {
        self.terms
            .iter()
            .find(|(k2, _)| *k2 == k)
            .map(|(_, a)| *a)
            .unwrap_or_else(Complex::zero)
    }

    fn map(&self, f: impl Fn(Complex<F>, Complex<F>) -> (Complex<F>, Complex<F>)) -> Self {
        Ket {
            terms: self.terms.iter().map(|&(k, a)| f(k, a)).collect(),
        }
    }

    pub fn scale(&self, c: Complex<F>) -> Self {
        self.map(|k, a| (k, a * c))
    }

    /// Largest amplitude difference, matching labels with tolerance `tol`.
    pub fn distance(&self, other: &Self, tol: F) -> F {
        let mut worst = F::zero();
        let find = |ket: &Self, k: Complex<F>| {
            ket.terms
                .iter()
                .find(|(k2, _)| (*k2 - k).norm() <= tol)
                .map(|(_, a)| *a)
                .unwrap_or_else(Complex::zero)
        };
        for &(k, a) in &self.terms {
            worst = worst.max((a - find(other, k)).norm());
        }
        for &(k, a) in &other.terms {
            worst = worst.max((a - find(self, k)).norm());
        }
        worst
    }

    pub fn max_amplitude(&self) -> F {
        self.terms.iter().fold(F::zero(), |m, (_, a)| m.max(a.norm()))
    }
}

pub fn apply_u<F: Float + FloatConst>(p: &RepParams<F>, s: &Ket<F>) -> Ket<F> {
    let i = Complex::new(F::zero(), F::one());
    s.map(|k, a| (k, a * (i * k * p.beta).exp()))
}

pub fn apply_v<F: Float + FloatConst>(p: &RepParams<F>, s: &Ket<F>) -> Ket<F> {
    let shift = Complex::new(F::TAU() * p.alpha, F::zero());
    s.map(|k, a| (k + shift, a))
}

/// `‖(uv - q vu) s‖ / ‖uv s‖`, amplitude-wise.
pub fn commutation_residual<F: Float + FloatConst>(p: &RepParams<F>, s: &Ket<F>) -> F {
    let uv = apply_u(p, &apply_v(p, s));
    let vu = apply_v(p, &apply_u(p, s)).scale(p.q());
    let tol = F::from(1e-12).unwrap();
    let scale = uv.max_amplitude();
    let d = uv.distance(&vu, tol);
    if scale > F::zero() {
        d / scale
    } else {
        d
    }
}

/// `g^{ij} ξ_i ξ_j`
pub fn distance<F: Float>(g: &[[Complex<F>; 2]; 2], xi: &[Complex<F>; 2]) -> Complex<F> {
    let mut acc = Complex::zero();
    for i in 0..2 {
        for j in 0..2 {
            acc = acc + g[i][j] * xi[i] * xi[j];
        }
    }
    acc
}

pub type RepParams64 = RepParams<f64>;
pub type Ket64 = Ket<f64>;
