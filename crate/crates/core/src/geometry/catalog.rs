//! Built-in flips and metrics, with the condition outcomes and the
//! connection and curvature forms they are expected to produce.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::conditions::{ConditionKind, Flip, Metric};
use crate::forms::{Calculus, OneForm, TwoForm};
use crate::ncpoly::NCElement;
use crate::scalars::{ScalarExpr, Var};
use crate::tensor::Mat;

use super::rhat::{epsilon, rhat};
use super::GeometryError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolutionName {
    I,
    II,
    III,
    RhatPlus,
    RhatMinus,
    Degenerate,
}

impl SolutionName {
    pub const ALL: [SolutionName; 6] = [
        SolutionName::I,
        SolutionName::II,
        SolutionName::III,
        SolutionName::RhatPlus,
        SolutionName::RhatMinus,
        SolutionName::Degenerate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SolutionName::I => "I",
            SolutionName::II => "II",
            SolutionName::III => "III",
            SolutionName::RhatPlus => "RHAT_PLUS",
            SolutionName::RhatMinus => "RHAT_MINUS",
            SolutionName::Degenerate => "DEGENERATE",
        }
    }

    /// Whether the entry depends on `ζ`.
    pub fn takes_zeta(self) -> bool {
        matches!(self, SolutionName::I | SolutionName::Degenerate)
    }
}

impl fmt::Display for SolutionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolutionName {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        SolutionName::ALL
            .into_iter()
            .find(|n| n.as_str() == norm)
            .ok_or_else(|| GeometryError::UnknownSolution(s.to_string()))
    }
}

/// Expected outcome per condition; `None` where no outcome is claimed.
pub type ExpectedPattern = BTreeMap<ConditionKind, Option<bool>>;

#[derive(Clone, Debug)]
pub struct SolutionEntry {
    pub name: SolutionName,
    /// `ζ` as used to build the entry (`None` for entries without one).
    pub zeta: Option<ScalarExpr>,
    pub flip: Flip,
    pub metric: Metric,
    pub tau: Option<Mat<ScalarExpr>>,
    pub expected: ExpectedPattern,
    /// The displayed connection forms `ω^i_j`, when given.
    pub expected_connection: Option<[[OneForm; 2]; 2]>,
    /// The displayed curvature forms `Ω^i_j`, when given.
    pub expected_curvature: Option<[[TwoForm; 2]; 2]>,
}

impl SolutionEntry {
    /// The entry's label, e.g. `I(zeta=0)`.
    pub fn label(&self) -> String {
        match &self.zeta {
            Some(z) => format!("{}(zeta={})", self.name, z),
            None => self.name.to_string(),
        }
    }
}

fn s(text: &str) -> ScalarExpr {
    ScalarExpr::parse(text).expect("catalog literal")
}

fn mat(rows: &[&[&str]]) -> Mat<ScalarExpr> {
    Mat::from_rows(rows.iter().map(|r| r.iter().map(|t| s(t)).collect()).collect())
}

fn pattern(entries: &[(ConditionKind, Option<bool>)]) -> ExpectedPattern {
    entries.iter().copied().collect()
}

fn six(sp: Option<bool>, pg: Option<bool>, compat: Option<bool>, js: Option<bool>, herf: Option<bool>, braid: Option<bool>) -> ExpectedPattern {
    use ConditionKind::*;
    pattern(&[(Sp, sp), (Pg, pg), (Compat, compat), (Js, js), (HerF, herf), (Braid, braid)])
}

fn uv_zero() -> NCElement {
    NCElement::zero(Calculus::uv().presentation())
}

/// `M (f θ)`: a scalar 2x2 matrix times a fixed 1-form.
fn matrix_times_form(m: [[ScalarExpr; 2]; 2], a: &OneForm) -> [[OneForm; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| a.scale(&m[i][j])))
}

fn add_forms(a: [[OneForm; 2]; 2], b: [[OneForm; 2]; 2]) -> [[OneForm; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].try_add(&b[i][j]).expect("uv forms")))
}

fn two_forms(m: [[ScalarExpr; 2]; 2], g: &NCElement) -> [[TwoForm; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| TwoForm::new(g.scale(&m[i][j]))))
}

fn add_two_forms(a: [[TwoForm; 2]; 2], b: [[TwoForm; 2]; 2]) -> [[TwoForm; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].try_add(&b[i][j]).expect("uv forms")))
}

fn m2(rows: [[&str; 2]; 2]) -> [[ScalarExpr; 2]; 2] {
    rows.map(|r| r.map(s))
}

fn zero_two_forms() -> [[TwoForm; 2]; 2] {
    std::array::from_fn(|_| std::array::from_fn(|_| TwoForm::new(uv_zero())))
}

/// Solution I with the given `ζ` (formal `ζ` when `None`).
pub fn solution_one(zeta: Option<ScalarExpr>) -> SolutionEntry {
    let z = zeta.clone().unwrap_or_else(ScalarExpr::zeta);
    let tmpl = [
        ["q", "-q^(-1/2)*zeta", "-q^(1/2)*zeta", "zeta^2*(q^2+1)/(q*(q^2-1))"],
        ["0", "0", "q", "-q^(-1/2)*zeta"],
        ["0", "q^(-1)", "0", "q^(-3/2)*zeta"],
        ["0", "0", "0", "q^(-1)"],
    ];
    let sub = |e: ScalarExpr| e.subs(Var::Z, &z).expect("polynomial in zeta");
    let flip = Mat::from_rows(
        tmpl.iter()
            .map(|r| r.iter().map(|t| sub(parse_with_half_powers(t))).collect())
            .collect(),
    );
    let metric = Mat::from_rows(vec![
        vec![sub(s("zeta/(q-1)")), ScalarExpr::q_half_pow(1)],
        vec![ScalarExpr::q_half_pow(-1), ScalarExpr::zero()],
    ]);
    let is_zero = z.is_zero();
    let calc = Calculus::uv();
    let (expected, tau, connection, curvature) = if is_zero {
        (
            six(Some(true), Some(true), Some(true), Some(true), Some(true), Some(true))
                .into_iter()
                .chain([(ConditionKind::Tau, Some(true))])
                .collect(),
            Some(mat(&[
                &["1+q", "0", "0", "0"],
                &["0", "2", "0", "0"],
                &["0", "0", "2", "0"],
                &["0", "0", "0", "1+q^(-1)"],
            ])),
            Some(matrix_times_form(
                m2([["1-q", "0"], ["0", "-(1-q)/q"]]),
                &calc.theta(),
            )),
            Some(zero_two_forms()),
        )
    } else {
        (
            six(Some(true), Some(true), Some(true), None, Some(false), Some(false)),
            None,
            None,
            None,
        )
    };
    SolutionEntry {
        name: SolutionName::I,
        zeta: Some(z),
        flip,
        metric,
        tau,
        expected,
        expected_connection: connection,
        expected_curvature: curvature,
    }
}

/// The scalar grammar allows `q^(±1/2)` only; `q^(-3/2)` is spelled out.
fn parse_with_half_powers(t: &str) -> ScalarExpr {
    s(&t.replace("q^(-3/2)", "q^(-1)*q^(-1/2)"))
}

fn metric_one_zeta_zero() -> Metric {
    Mat::from_rows(vec![
        vec![ScalarExpr::zero(), ScalarExpr::q_half_pow(1)],
        vec![ScalarExpr::q_half_pow(-1), ScalarExpr::zero()],
    ])
}

pub fn solution_two() -> SolutionEntry {
    let calc = Calculus::uv();
    let [l1, l2] = calc.lambdas().clone();
    let theta = calc.theta();
    let l1t2 = OneForm::basis(l1.clone(), 1);
    let l2t2 = OneForm::basis(l2, 1);
    let connection = add_forms(
        add_forms(
            matrix_times_form(m2([["1+q^2", "0"], ["0", "(1+q^2)*q^(-2)"]]), &theta),
            matrix_times_form(m2([["0", "0"], ["-(1+q^(-1))", "0"]]), &l1t2),
        ),
        matrix_times_form(m2([["(q+1)*q", "0"], ["0", "(q+1)*q^(-2)"]]), &l2t2),
    );
    let l1sq = &l1 * &l1;
    let curvature = two_forms(
        m2([["0", "0"], ["-(q^2-1)*q^(-3)*(1+q+q^2)", "0"]]),
        &l1sq,
    );
    SolutionEntry {
        name: SolutionName::II,
        zeta: None,
        flip: mat(&[
            &["-q^2", "0", "0", "0"],
            &["0", "0", "q", "0"],
            &["0", "-q^(-2)", "-1-q^(-1)", "0"],
            &["0", "0", "0", "q^(-1)"],
        ]),
        metric: metric_one_zeta_zero(),
        tau: None,
        expected: six(Some(true), Some(true), Some(true), Some(true), Some(false), Some(false)),
        expected_connection: Some(connection),
        expected_curvature: Some(curvature),
    }
}

pub fn solution_three() -> SolutionEntry {
    let calc = Calculus::uv();
    let [l1, l2] = calc.lambdas().clone();
    let flip = mat(&[
        &["2*q", "0", "0", "1-q^2"],
        &["0", "1-q^2", "2*q", "0"],
        &["0", "2*q", "q^2-1", "0"],
        &["q^2-1", "0", "0", "2*q"],
    ])
    .scale(&s("1/(q^2+1)"));
    let mixed = OneForm {
        c: [l2.clone(), l1.clone()],
    };
    let connection = add_forms(
        matrix_times_form(
            m2([["(q-1)^2/(q^2+1)", "0"], ["0", "(q-1)^2/(q^2+1)"]]),
            &calc.theta(),
        ),
        matrix_times_form(
            m2([["0", "-(q^2-1)/(q^2+1)"], ["(q^2-1)/(q^2+1)", "0"]]),
            &mixed,
        ),
    );
    let pre = "(q^2-1)/(q^2+1)^2";
    let diag = format!("-{pre}*(q^2-1)^2/q");
    let off = format!("{pre}*2*(q-1)");
    let l1l2 = &l1 * &l2;
    let squares = &(&l1 * &l1) + &(&l2 * &l2);
    let curvature = add_two_forms(
        two_forms(m2([[&diag, "0"], ["0", &diag]]), &l1l2),
        two_forms(
            [[ScalarExpr::zero(), -s(&off)], [s(&off), ScalarExpr::zero()]],
            &squares,
        ),
    );
    SolutionEntry {
        name: SolutionName::III,
        zeta: None,
        flip,
        metric: Mat::identity(2),
        tau: None,
        expected: six(Some(true), Some(true), Some(true), Some(true), Some(false), Some(false)),
        expected_connection: Some(connection),
        expected_curvature: Some(curvature),
    }
}

/// `S = q^-1 R̂_{q^-1}` (`plus`) or `S = q (R̂_{q^-1})^-1`, with
/// `g = ε_{q^-1}`.
pub fn rhat_solution(plus: bool) -> SolutionEntry {
    let qi = ScalarExpr::q_pow(-1);
    let r = rhat(&qi);
    let flip = if plus {
        r.scale(&qi)
    } else {
        r.inverse().expect("R̂ is invertible").scale(&ScalarExpr::q())
    };
    SolutionEntry {
        name: if plus { SolutionName::RhatPlus } else { SolutionName::RhatMinus },
        zeta: None,
        flip,
        metric: epsilon(&ScalarExpr::q_half_pow(-1)),
        tau: None,
        expected: six(Some(true), Some(false), Some(false), Some(true), Some(true), Some(true)),
        expected_connection: None,
        expected_curvature: Some(zero_two_forms()),
    }
}

/// The degenerate flip with corners `ζ`, `ζ^-1`. Formal `ζ` when `None`.
pub fn degenerate_solution(zeta: Option<ScalarExpr>) -> Result<SolutionEntry, GeometryError> {
    let z = zeta.unwrap_or_else(ScalarExpr::zeta);
    let zi = z.checked_inv().ok_or(GeometryError::ZeroZeta)?;
    let zero = ScalarExpr::zero;
    let one = ScalarExpr::one;
    let flip = Mat::from_rows(vec![
        vec![zero(), zero(), zero(), z.clone()],
        vec![zero(), -one(), zero(), zero()],
        vec![zero(), zero(), -one(), zero()],
        vec![zi.clone(), zero(), zero(), zero()],
    ]);
    let tau = Mat::identity(4).add(&flip);
    let i = ScalarExpr::i();
    let metric = Mat::from_rows(vec![vec![i.clone(), zero()], vec![zero(), -(&i * &zi)]]);
    let calc = Calculus::uv();
    let [l1, l2] = calc.lambdas().clone();
    let mixed = OneForm {
        c: [-&l2, l1.scale(&z)],
    };
    let connection = add_forms(
        matrix_times_form([[one(), zero()], [zero(), one()]], &calc.theta()),
        matrix_times_form([[zero(), one()], [-zi.clone(), zero()]], &mixed),
    );
    let c = s("(q^2-1)/q");
    let l1l2 = &l1 * &l2;
    let curvature = two_forms([[c.clone(), zero()], [zero(), c]], &l1l2);
    use ConditionKind::*;
    Ok(SolutionEntry {
        name: SolutionName::Degenerate,
        zeta: Some(z),
        flip,
        metric,
        tau: Some(tau),
        expected: pattern(&[
            (Sp, Some(true)),
            (Pg, Some(true)),
            (Compat, None),
            (Js, None),
            (HerF, None),
            (Braid, Some(true)),
            (Tau, Some(true)),
        ]),
        expected_connection: Some(connection),
        expected_curvature: Some(curvature),
    })
}

/// Looks up a catalog entry. `zeta` is ignored by entries without a
/// parameter.
pub fn solution(name: SolutionName, zeta: Option<ScalarExpr>) -> Result<SolutionEntry, GeometryError> {
    Ok(match name {
        SolutionName::I => solution_one(zeta),
        SolutionName::II => solution_two(),
        SolutionName::III => solution_three(),
        SolutionName::RhatPlus => rhat_solution(true),
        SolutionName::RhatMinus => rhat_solution(false),
        SolutionName::Degenerate => degenerate_solution(zeta)?,
    })
}

/// Every entry, with `ζ = 0` for Solution I and formal `ζ` for the
/// degenerate flip.
pub fn all_entries() -> Vec<SolutionEntry> {
    SolutionName::ALL
        .into_iter()
        .map(|n| {
            let zeta = (n == SolutionName::I).then(ScalarExpr::zero);
            solution(n, zeta).expect("catalog entry")
        })
        .collect()
}
