//! The `SL_q(2)` braid matrix and its companions.


use crate::conditions::{Checker, ConditionKind};
use crate::field::Field;
use crate::forms::{same_relations, wedge_projector};
use crate::scalars::ScalarExpr;
use crate::tensor::{flatten_metric, Mat};

use super::catalog::rhat_solution;
use super::connection::curvature;

/// `R̂_q`
pub fn rhat<T: Field>(q: &T) -> Mat<T> {
    let z = T::zero;
    let qi = q.inverse().expect("q is invertible");
    Mat::from_rows(vec![
        vec![q.clone(), z(), z(), z()],
        vec![z(), q.clone() - qi, T::one(), z()],
        vec![z(), T::one(), z(), z()],
        vec![z(), z(), z(), q.clone()],
    ])
}

/// `ε_q`, given `s = q^{1/2}`: `[[0, -s^-1], [s, 0]]`.
pub fn epsilon<T: Field>(sqrt_q: &T) -> Mat<T> {
    let si = sqrt_q.inverse().expect("q^(1/2) is invertible");
    Mat::from_rows(vec![vec![T::zero(), -si], vec![sqrt_q.clone(), T::zero()]])
}

/// `P_{a,q}`
pub fn p_antisym<T: Field>(q: &T) -> Mat<T> {
    let qi = q.inverse().expect("q is invertible");
    let k = (q.clone() + qi.clone()).inverse().expect("q + q^-1 is invertible");
    let z = T::zero;
    Mat::from_rows(vec![
        vec![z(), z(), z(), z()],
        vec![z(), qi, -T::one(), z()],
        vec![z(), -T::one(), q.clone(), z()],
        vec![z(), z(), z(), z()],
    ])
    .scale(&k)
}

/// `P_{s,q} = 1 - P_{a,q}`
pub fn p_sym<T: Field>(q: &T) -> Mat<T> {
    Mat::identity(4).sub(&p_antisym(q))
}

/// Checks on one of the two `R̂` flips paired with `ε_{q^-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RhatFlipReport {
    pub plus: bool,
    pub conformal_factor: Option<ScalarExpr>,
    pub expected_factor: ScalarExpr,
    /// `S^{ij}_{hk} g^{hk} = -g^{ij}`
    pub antisymmetric: bool,
    pub js: bool,
    pub herf: bool,
    pub curvature_zero: bool,
}

impl RhatFlipReport {
    pub fn factor_matches(&self) -> bool {
        self.conformal_factor.as_ref() == Some(&self.expected_factor)
    }

    pub fn holds(&self) -> bool {
        self.factor_matches() && self.holds_up_to_factor()
    }

    /// Everything except the value of the conformal factor.
    pub fn holds_up_to_factor(&self) -> bool {
        self.conformal_factor.is_some()
            && self.antisymmetric
            && self.js
            && self.herf
            && self.curvature_zero
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RhatReport {
    pub braid: bool,
    /// `R̂ = q P_s - q^-1 P_a`
    pub decomposition: bool,
    /// Conformal factors of `R̂_q^{+1}` and `R̂_q^{-1}` with `ε_q`.
    pub rrr_factors: [Option<ScalarExpr>; 2],
    /// `q^-1` and `q`.
    pub rrr_expected: [ScalarExpr; 2],
    /// `R̂^{±1} ε = -q^{∓1} ε`
    pub rrr_trace: [bool; 2],
    /// The wedge projector equals `P_{a,q^-1}` entry by entry.
    pub projector_entrywise: bool,
    /// The wedge projector and `P_{a,q^-1}` annihilate the same tensors.
    pub projector_same_relations: bool,
    pub flips: [RhatFlipReport; 2],
}

impl RhatReport {
    pub fn rrr_conformal_holds(&self) -> bool {
        self.rrr_factors
            .iter()
            .zip(&self.rrr_expected)
            .all(|(f, e)| f.as_ref() == Some(e))
    }

    /// Everything except the entrywise projector comparison.
    pub fn core_holds(&self) -> bool {
        self.braid
            && self.decomposition
            && self.rrr_conformal_holds()
            && self.rrr_trace.iter().all(|b| *b)
            && self.projector_same_relations
            && self.flips.iter().all(RhatFlipReport::holds)
    }
}

fn flip_report(plus: bool) -> RhatFlipReport {
    let entry = rhat_solution(plus);
    let ch = Checker::exact();
    let (s, g) = (&entry.flip, &entry.metric);
    let report = ch.check_all(s, g, None);
    let vg = flatten_metric(g);
    let antisymmetric = s.mul(&vg).add(&vg).is_zero();
    RhatFlipReport {
        plus,
        conformal_factor: ch.conformal_factor(s, g),
        expected_factor: ScalarExpr::q_pow(if plus { -1 } else { 1 }),
        antisymmetric,
        js: report.passes(ConditionKind::Js) == Some(true),
        herf: report.passes(ConditionKind::HerF) == Some(true),
        curvature_zero: curvature(s).is_zero(),
    }
}

pub fn rhat_toolkit() -> RhatReport {
    let q = ScalarExpr::q();
    let qi = ScalarExpr::q_pow(-1);
    let ch = Checker::exact();
    let r = rhat(&q);
    let ri = r.inverse().expect("R̂ is invertible");
    let eps = epsilon(&ScalarExpr::q_half_pow(1));
    let veps = flatten_metric(&eps);
    let decomposition = p_sym(&q)
        .scale(&q)
        .sub(&p_antisym(&q).scale(&qi))
        .sub(&r)
        .is_zero();
    let rrr_factors = [ch.conformal_factor(&r, &eps), ch.conformal_factor(&ri, &eps)];
    let rrr_trace = [
        r.mul(&veps).add(&veps.scale(&qi)).is_zero(),
        ri.mul(&veps).add(&veps.scale(&q)).is_zero(),
    ];
    let p = wedge_projector(&q);
    let pa = p_antisym(&qi);
    RhatReport {
        braid: ch.check_braid(&r).pass,
        decomposition,
        rrr_factors,
        rrr_expected: [qi.clone(), q.clone()],
        rrr_trace,
        projector_entrywise: p.sub(&pa).is_zero(),
        projector_same_relations: same_relations(&p, &pa),
        flips: [flip_report(true), flip_report(false)],
    }
}
