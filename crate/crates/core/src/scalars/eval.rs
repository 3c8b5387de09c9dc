use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::poly::{Poly, Var, NVARS};
use super::{DisplayPoly, ScalarError, ScalarExpr};
use crate::field::GaussRat;

/// Numeric evaluation point: q̃ = e^{i·angle} on the unit circle, real `h`
/// and real `zeta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitEval {
    pub angle: f64,
    pub h: f64,
    pub zeta: f64,
}

impl UnitEval {
    /// A point in the deformed regime; rejects q̃^4 = 1.
    pub fn new(angle: f64, h: f64, zeta: f64) -> Result<Self, ScalarError> {
        let at = UnitEval { angle, h, zeta };
        if (at.q() - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
            return Err(ScalarError::Undeformed);
        }
        Ok(at)
    }

    /// The point with q = e^{2πiη}, i.e. q̃ = e^{-iπη/2}.
    pub fn from_eta(eta: f64, h: f64, zeta: f64) -> Result<Self, ScalarError> {
        Self::new(-PI * eta / 2.0, h, zeta)
    }

    /// q̃ = 1, the commutative point. Only pole-free expressions evaluate.
    pub fn commutative(h: f64, zeta: f64) -> Self {
        UnitEval { angle: 0.0, h, zeta }
    }

    pub fn r(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle)
    }

    pub fn q(&self) -> Complex64 {
        Complex64::from_polar(1.0, -4.0 * self.angle)
    }

    fn values(&self) -> [Option<Complex64>; NVARS] {
        let mut vals = [None; NVARS];
        vals[Var::R.index()] = Some(self.r());
        vals[Var::H.index()] = Some(Complex64::new(self.h, 0.0));
        vals[Var::Z.index()] = Some(Complex64::new(self.zeta, 0.0));
        vals
    }
}

fn to_c64(c: &GaussRat) -> Complex64 {
    Complex64::new(
        c.re.to_f64().unwrap_or(f64::NAN),
        c.im.to_f64().unwrap_or(f64::NAN),
    )
}

fn eval_poly(p: &Poly<GaussRat>, at: &UnitEval) -> Result<(Complex64, f64), ScalarError> {
    let vals = at.values();
    let value = p
        .eval_with(&vals, to_c64)
        .map_err(|v| ScalarError::Unbound(v.name()))?;
    // Scale for the relative pole test: sum of absolute term magnitudes.
    let scale = p
        .terms()
        .map(|(_, c)| to_c64(c).norm())
        .fold(0.0, |a, b| a + b);
    Ok((value, scale))
}

impl ScalarExpr {
    /// Substitutes the numeric point. Errors on poles and unbound variables.
    pub fn eval(&self, at: &UnitEval) -> Result<Complex64, ScalarError> {
        let (n, _) = eval_poly(self.numer(), at)?;
        let (d, scale) = eval_poly(self.denom(), at)?;
        if d.norm() <= 1e-12 * scale.max(1.0) {
            return Err(ScalarError::Pole(format!("{}", DisplayPoly(self.denom()))));
        }
        if n.is_zero() {
            return Ok(Complex64::zero());
        }
        Ok(n / d)
    }
}
