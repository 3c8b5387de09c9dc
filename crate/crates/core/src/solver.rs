//! Metrics compatible with a given flip.

use serde::Serialize;

use crate::conditions::Checker;
use crate::field::Field;
use crate::tensor::{flatten_metric, normalize_leading, unflatten_metric, Mat};

/// The linear system in `(g^1, g^2, g^3, g^4)`: sixteen compatibility rows
/// followed by the symmetry row.
pub fn metric_system<T: Field>(ch: &Checker<T>, s: &Mat<T>) -> Mat<T> {
    let mut rows: Vec<Vec<T>> = vec![Vec::with_capacity(4); 16];
    for k in 0..4 {
        let mut e = vec![T::zero(); 4];
        e[k] = T::one();
        let g = unflatten_metric(&e);
        let res = ch.compat_lhs(s, &g).sub(&ch.compat_rhs(&g));
        for (n, x) in res.entries().enumerate() {
            rows[n].push(x.clone());
        }
    }
    let p = ch.projector();
    let sym = (0..4)
        .map(|r| p.row(r).to_vec())
        .find(|r| r.iter().any(|x| !x.is_negligible()))
        .expect("nonzero projector");
    rows.push(normalize_leading(sym));
    Mat::from_rows(rows)
}

/// A ray `c w` satisfying the hermiticity condition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealRay<T> {
    /// Index into the basis.
    pub basis_index: usize,
    pub scale: T,
    pub metric: Vec<T>,
    pub nondegenerate: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricSolutionSpace<T> {
    pub rank: usize,
    pub basis: Vec<Vec<T>>,
    pub real_rays: Vec<RealRay<T>>,
}

impl<T> MetricSolutionSpace<T> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// `ρ` with `S w = ρ (w^T)*`, if the two sides are proportional.
fn hermitian_ratio<T: Field>(s: &Mat<T>, w: &[T]) -> Option<T> {
    let g = unflatten_metric(w);
    let lhs = s.mul(&flatten_metric(&g));
    let rhs = flatten_metric(&g.transpose().star());
    let (pos, r) = rhs.entries().enumerate().find(|(_, x)| !x.is_negligible())?;
    let rho = lhs.entries().nth(pos)?.clone() * r.inverse()?;
    lhs.sub(&rhs.scale(&rho)).is_zero().then_some(rho)
}

/// Scalar `c` with `c* = c ρ`, when `ρ ρ* = 1`.
fn phase_root<T: Field>(rho: &T) -> Option<T> {
    if !(rho.clone() * rho.star() - T::one()).is_negligible() {
        return None;
    }
    let c = T::one() + rho.star();
    if !c.is_negligible() {
        return Some(c);
    }
    // ρ = -1
    T::imaginary_unit()
}

pub fn solve_metric<T: Field>(ch: &Checker<T>, s: &Mat<T>) -> MetricSolutionSpace<T> {
    let sys = metric_system(ch, s);
    let rank = sys.rank();
    let basis = sys.nullspace();
    let real_rays = basis
        .iter()
        .enumerate()
        .filter_map(|(idx, w)| {
            let rho = hermitian_ratio(s, w)?;
            let c = phase_root(&rho)?;
            let metric: Vec<T> = w.iter().map(|x| x.clone() * c.clone()).collect();
            let nondegenerate = !unflatten_metric(&metric).determinant().is_negligible();
            Some(RealRay {
                basis_index: idx,
                scale: c,
                metric,
                nondegenerate,
            })
        })
        .collect();
    MetricSolutionSpace {
        rank,
        basis,
        real_rays,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionAudit {
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
    pub dimension: usize,
}

pub fn dimension_audit<T: Field>(ch: &Checker<T>, s: &Mat<T>) -> DimensionAudit {
    let sys = metric_system(ch, s);
    let rank = sys.rank();
    DimensionAudit {
        equations: sys.rows(),
        unknowns: sys.cols(),
        rank,
        dimension: sys.cols() - rank,
    }
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span<T: Field>(basis: &[Vec<T>], v: &[T]) -> bool {
    if basis.is_empty() {
        return v.iter().all(Field::is_negligible);
    }
    let mut rows: Vec<Vec<T>> = basis.to_vec();
    let before = Mat::from_rows(rows.clone()).rank();
    rows.push(v.to_vec());
    Mat::from_rows(rows).rank() == before
}

/// The `τ = 2` flip `1 - 2P` admits no nondegenerate hermitian metric.
pub fn tau_two_no_go<T: Field>(ch: &Checker<T>) -> bool {
    let space = solve_metric(ch, &ch.tau_two_flip());
    space.real_rays.iter().all(|r| !r.nondegenerate)
}
