//! Inverse metric, the commutative line element and the numeric splits.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::conditions::Metric;
use crate::scalars::{ScalarExpr, UnitEval, Var};

use super::GeometryError;

/// `g_{ij}` with `g_{ij} g^{jk} = δ^k_i`.
pub fn inverse_metric(g: &Metric) -> Result<Metric, GeometryError> {
    g.inverse().ok_or(GeometryError::DegenerateMetric)
}

/// `a dx² + b dx dy + c dy²` with commuting coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadratic {
    pub names: [&'static str; 2],
    pub xx: ScalarExpr,
    pub xy: ScalarExpr,
    pub yy: ScalarExpr,
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.names;
        let parts = [
            (&self.xx, format!("d{a}^2")),
            (&self.xy, format!("d{a} d{b}")),
            (&self.yy, format!("d{b}^2")),
        ];
        let mut first = true;
        for (c, w) in parts {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c}) {w}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineElement {
    pub lower: Metric,
    /// `q → 1`, in `du`, `dv` with commuting `u`, `v`.
    pub uv: Quadratic,
    /// `q → 1`, in `dt`, `dr` (`t` and `r` are the variables `t`, `rho`).
    pub tr: Quadratic,
}

/// `ds² = g_{ij} θ^i θ^j` with the symmetrized product and
/// `θ^1 = v u^-1 du`, `θ^2 = u v^-1 dv` at `q = 1`.
pub fn line_element(g: &Metric) -> Result<LineElement, GeometryError> {
    let lower = inverse_metric(g)?;
    let at1 = |i: usize, j: usize| lower[(i, j)].at_r_one();
    let (g11, g12, g21, g22) = (at1(0, 0)?, at1(0, 1)?, at1(1, 0)?, at1(1, 1)?);
    let u = ScalarExpr::var(Var::U);
    let v = ScalarExpr::var(Var::V);
    let ratio = v.clone() / u.clone();
    let uv = Quadratic {
        names: ["u", "v"],
        xx: g11 * ratio.powi(2),
        xy: g12 + g21,
        yy: g22 * ratio.powi(-2),
    };
    // u ∝ t + r, v ∝ t - r; the coefficients only see v/u.
    let t = ScalarExpr::var(Var::T);
    let r = ScalarExpr::var(Var::Rho);
    let to_tr = |e: &ScalarExpr| -> Result<ScalarExpr, GeometryError> {
        Ok(e.subs(Var::U, &(t.clone() + r.clone()))?.subs(Var::V, &(t.clone() - r.clone()))?)
    };
    let (a, b, c) = (to_tr(&uv.xx)?, to_tr(&uv.xy)?, to_tr(&uv.yy)?);
    let half = ScalarExpr::ratio(1, 2);
    let tr = Quadratic {
        names: ["t", "r"],
        xx: (a.clone() + b.clone() + c.clone()) * half.clone(),
        xy: a.clone() - c.clone(),
        yy: (a - b + c) * half,
    };
    Ok(LineElement { lower, uv, tr })
}

pub type CMat2 = [[Complex64; 2]; 2];

/// Symmetric and antisymmetric parts of a numeric metric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Split {
    pub sym: CMat2,
    pub antisym: CMat2,
}

/// `η` and `B` for `g_{ij}`, rescaled so that the first nonzero entry of
/// the symmetric part is 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EtaB {
    pub scale: Complex64,
    pub eta: CMat2,
    pub b: CMat2,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericSplit {
    pub upper: Split,
    pub lower: Split,
    pub eta_b: Option<EtaB>,
}

fn eval2(g: &Metric, at: &UnitEval) -> Result<CMat2, GeometryError> {
    let mut out = [[Complex64::zero(); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = g[(i, j)].eval(at)?;
        }
    }
    Ok(out)
}

fn split(m: &CMat2) -> Split {
    let sym = std::array::from_fn(|i| std::array::from_fn(|j| (m[i][j] + m[j][i]) * 0.5));
    let antisym = std::array::from_fn(|i| std::array::from_fn(|j| (m[i][j] - m[j][i]) * 0.5));
    Split { sym, antisym }
}

pub fn numeric_split(g: &Metric, at: &UnitEval) -> Result<NumericSplit, GeometryError> {
    let upper = split(&eval2(g, at)?);
    let lower = split(&eval2(&inverse_metric(g)?, at)?);
    let eta_b = lower
        .sym
        .iter()
        .flatten()
        .copied()
        .find(|z| z.norm() > 1e-12)
        .map(|scale| {
            let d = |m: &CMat2| -> CMat2 { std::array::from_fn(|i| std::array::from_fn(|j| m[i][j] / scale)) };
            EtaB {
                scale,
                eta: d(&lower.sym),
                b: d(&lower.antisym),
            }
        });
    Ok(NumericSplit { upper, lower, eta_b })
}

/// Entrywise distance between two numeric matrices.
pub fn max_deviation(a: &CMat2, b: &CMat2) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}
