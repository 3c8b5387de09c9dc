//! The singular limit to the jordanian plane.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::forms::Calculus;
use crate::ncpoly::{NCElement, NcError};
use crate::scalars::{ScalarError, ScalarExpr, Var};
use crate::tensor::Mat;

/// `h0 = 2h / (1 - q)`
pub fn h0() -> ScalarExpr {
    let two_h = ScalarExpr::h() * ScalarExpr::int(2);
    two_h / (ScalarExpr::one() - ScalarExpr::q())
}

/// `λ'_1 = h0^-1 λ1`, `λ'_2 = h0^-1 λ2 - ½ h^-1 h0`.
pub fn primed_lambdas() -> [NCElement; 2] {
    let calc = Calculus::uv();
    let [l1, l2] = calc.lambdas().clone();
    let h0 = h0();
    let h0i = h0.checked_inv().expect("h0 is invertible");
    let shift = h0 * ScalarExpr::h().checked_inv().expect("h is formal") * ScalarExpr::ratio(1, 2);
    [
        l1.scale(&h0i),
        &l2.scale(&h0i) - &calc.scalar(shift),
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorReport {
    /// `[λ1, λ2] - (1 - q) λ1 λ2`
    pub unprimed_residual: NCElement,
    /// `[λ'1, λ'2] - h0^-2 [λ1, λ2]`
    pub rescaling_residual: NCElement,
    /// `[λ'1, λ'2] - λ'1 - (1 - q) λ'1 λ'2`
    pub residual: NCElement,
}

impl CommutatorReport {
    pub fn holds(&self) -> bool {
        self.unprimed_residual.is_zero() && self.rescaling_residual.is_zero() && self.residual.is_zero()
    }
}

pub fn check_primed_commutator() -> Result<CommutatorReport, NcError> {
    let calc = Calculus::uv();
    let [l1, l2] = calc.lambdas().clone();
    let [p1, p2] = primed_lambdas();
    let one_minus_q = ScalarExpr::one() - ScalarExpr::q();
    let h0 = h0();
    let c = l1.commutator(&l2)?;
    let cp = p1.commutator(&p2)?;
    let unprimed_residual = &c - &(&l1 * &l2).scale(&one_minus_q);
    let rescaling_residual = &cp - &c.scale(&h0.powi(-2));
    let residual = &(&cp - &p1) - &(&p1 * &p2).scale(&one_minus_q);
    Ok(CommutatorReport {
        unprimed_residual,
        rescaling_residual,
        residual,
    })
}

/// `[u', v'] = a u'v' + b v' + c u' + d` for `u' = q u^-1 - h0`,
/// `v' = -q v^-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorReport {
    pub u_prime: NCElement,
    pub v_prime: NCElement,
    pub commutator: NCElement,
    /// `[a, b, c, d]`, or `None` if the commutator is not of that form.
    pub fit: Option<[ScalarExpr; 4]>,
    /// The fit at `q = 1`.
    pub fit_at_one: Option<[ScalarExpr; 4]>,
    /// `h0` has a pole at `q = 1`.
    pub h0_pole: bool,
}

impl GeneratorReport {
    /// `[u', v'] = -2h v'` at `q = 1`.
    pub fn jordanian_limit(&self) -> bool {
        let minus_two_h = -(ScalarExpr::h() * ScalarExpr::int(2));
        matches!(&self.fit_at_one, Some([a, b, c, d])
            if a.is_zero() && *b == minus_two_h && c.is_zero() && d.is_zero())
    }
}

/// Solves `Σ x_k basis_k = target` coefficientwise.
fn fit(basis: &[NCElement], target: &NCElement) -> Option<Vec<ScalarExpr>> {
    let monos: BTreeSet<(i32, i32)> = basis
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|e| e.terms().map(|(m, _)| *m).collect::<Vec<_>>())
        .collect();
    let n = basis.len();
    let rows: Vec<Vec<ScalarExpr>> = monos
        .iter()
        .map(|&(a, b)| {
            let mut row: Vec<ScalarExpr> = basis.iter().map(|e| e.coeff(a, b)).collect();
            row.push(-target.coeff(a, b));
            row
        })
        .collect();
    let ns = Mat::from_rows(rows).nullspace();
    let v = ns.into_iter().find(|v| !v[n].is_zero())?;
    let last = v[n].clone();
    Some(v[..n].iter().map(|x| x.clone() / last.clone()).collect())
}

pub fn check_primed_generators() -> Result<GeneratorReport, NcError> {
    let q = ScalarExpr::q();
    let calc = Calculus::uv();
    let ui = NCElement::u().inverse_monomial()?;
    let vi = NCElement::v().inverse_monomial()?;
    let h0 = h0();
    let u_prime = &ui.scale(&q) - &calc.scalar(h0.clone());
    let v_prime = vi.scale(&-q);
    let commutator = u_prime.commutator(&v_prime)?;
    let one = calc.scalar(ScalarExpr::one());
    let basis = [&u_prime * &v_prime, v_prime.clone(), u_prime.clone(), one];
    let fit = fit(&basis, &commutator).map(|v| -> [ScalarExpr; 4] { [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()] });
    let fit_at_one = fit.as_ref().and_then(|f| {
        let at: Result<Vec<_>, ScalarError> = f.iter().map(ScalarExpr::at_r_one).collect();
        at.ok().map(|v| [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
    });
    Ok(GeneratorReport {
        u_prime,
        v_prime,
        commutator,
        fit,
        fit_at_one,
        h0_pole: matches!(h0.at_r_one(), Err(ScalarError::Pole(_))),
    })
}

/// Coefficients of `du'^2`, `du' dv'`, `dv'^2` over commuting `u'`, `v'`,
/// `h0`, `g1`, `g2`, `g4`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrimedForm {
    #[serde(serialize_with = "ser_triple")]
    pub coeffs: [ScalarExpr; 3],
}

fn ser_triple<S: serde::Serializer>(c: &[ScalarExpr; 3], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for x in c {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

fn var(v: Var) -> ScalarExpr {
    ScalarExpr::var(v)
}

/// The commutative line element `g1 (v/u)^2 du^2 + 2 g2 du dv + g4 (u/v)^2 dv^2`
/// under `u = q (u' + h0)^-1`, `v = -q v'^-1`.
pub fn transformed_line_element() -> PrimedForm {
    let q = ScalarExpr::q();
    let (up, vp, h0) = (var(Var::UPrime), var(Var::VPrime), var(Var::H0));
    let w = up + h0;
    let u = q.clone() / w.clone();
    let v = -(q.clone() / vp.clone());
    let du = -(q.clone() * w.powi(-2));
    let dv = q * vp.powi(-2);
    let ratio = v / u;
    let two = ScalarExpr::int(2);
    PrimedForm {
        coeffs: [
            var(Var::G1) * ratio.powi(2) * du.powi(2),
            two * var(Var::G2) * du.clone() * dv.clone(),
            var(Var::G4) * ratio.powi(-2) * dv.powi(2),
        ],
    }
}

/// `(u' + h0)^-2 v'^-2 [q^2 g1, -2 g2, q^-2 g4]`
pub fn displayed_line_element() -> PrimedForm {
    let q = ScalarExpr::q();
    let pre = (var(Var::UPrime) + var(Var::H0)).powi(-2) * var(Var::VPrime).powi(-2);
    PrimedForm {
        coeffs: [
            pre.clone() * q.powi(2) * var(Var::G1),
            pre.clone() * ScalarExpr::int(-2) * var(Var::G2),
            pre * q.powi(-2) * var(Var::G4),
        ],
    }
}

/// Order and coefficient of the leading term as `h0 → ∞`.
pub fn leading_in_h0(e: &ScalarExpr) -> Option<(i64, ScalarExpr)> {
    if e.is_zero() {
        return None;
    }
    let (dn, dd) = e.degree_in(Var::H0);
    let n = e.numer().coefficients_in(Var::H0).remove(&dn)?;
    let d = e.denom().coefficients_in(Var::H0).remove(&dd)?;
    let c = ScalarExpr::new(n, d);
    Some((dn as i64 - dd as i64, c))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitCase {
    /// Leading `h0 → ∞` coefficients of `du'^2`, `du' dv'`, `dv'^2` at `q = 1`.
    pub leading: PrimedForm,
    pub expected: PrimedForm,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LobachevskyReport {
    pub transformed: PrimedForm,
    pub displayed: PrimedForm,
    /// `transformed - displayed` at generic `q`.
    pub residual: [ScalarExpr; 3],
    /// The residual vanishes at `q = 1`.
    pub agrees_at_one: bool,
    pub lobachevsky: LimitCase,
    pub light_cone: LimitCase,
    /// `-2 v'^-2 du' dv' = -2 du' dv` at `q = 1`.
    pub light_cone_unprimed: bool,
}

impl LobachevskyReport {
    pub fn holds(&self) -> bool {
        self.agrees_at_one && self.lobachevsky.holds && self.light_cone.holds && self.light_cone_unprimed
    }
}

fn subs_all(e: &ScalarExpr, vals: &[(Var, ScalarExpr)]) -> ScalarExpr {
    vals.iter()
        .fold(e.clone(), |acc, (v, x)| acc.subs(*v, x).expect("polynomial substitution"))
}

fn limit_case(form: &PrimedForm, g: &[(Var, ScalarExpr)], expected: [ScalarExpr; 3]) -> LimitCase {
    let leading: [ScalarExpr; 3] = std::array::from_fn(|k| {
        let e = subs_all(&form.coeffs[k], g);
        match leading_in_h0(&e) {
            Some((0, c)) => c.at_r_one().unwrap_or(c),
            // divergent terms keep their h0 power so they never match
            Some((o, c)) if o > 0 => c * var(Var::H0).powi(o as i32),
            _ => ScalarExpr::zero(),
        }
    });
    let holds = leading == expected;
    LimitCase {
        leading: PrimedForm { coeffs: leading },
        expected: PrimedForm { coeffs: expected },
        holds,
    }
}

pub fn check_lobachevsky_limit() -> Result<LobachevskyReport, ScalarError> {
    let transformed = transformed_line_element();
    let displayed = displayed_line_element();
    let residual: [ScalarExpr; 3] =
        std::array::from_fn(|k| transformed.coeffs[k].clone() - displayed.coeffs[k].clone());
    let mut agrees_at_one = true;
    for r in &residual {
        agrees_at_one &= r.at_r_one()?.is_zero();
    }
    let h0sq = var(Var::H0).powi(2);
    let vp2 = var(Var::VPrime).powi(-2);
    let zero = ScalarExpr::zero;
    let lobachevsky = limit_case(
        &transformed,
        &[(Var::G1, h0sq.clone()), (Var::G2, zero()), (Var::G4, h0sq.clone())],
        [vp2.clone(), zero(), vp2.clone()],
    );
    let light_cone = limit_case(
        &transformed,
        &[(Var::G1, zero()), (Var::G2, h0sq), (Var::G4, zero())],
        [zero(), vp2.clone() * ScalarExpr::int(-2), zero()],
    );
    // dv = q v'^-2 dv'
    let dv_per_dvp = (ScalarExpr::q() * vp2.clone()).at_r_one()?;
    let light_cone_unprimed = light_cone.leading.coeffs[1] == ScalarExpr::int(-2) * dv_per_dvp;
    Ok(LobachevskyReport {
        transformed,
        displayed,
        residual,
        agrees_at_one,
        lobachevsky,
        light_cone,
        light_cone_unprimed,
    })
}
