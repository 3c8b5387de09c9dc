//! The structural conditions on a flip `S` and a metric `g`, as exact
//! tensor residuals.
//!
//! Flips are 4x4 matrices with row `(i, j)` and column `(k, l)` holding
//! `S^{ij}_{kl}`; metrics are 2x2 matrices `g^{ij}`.

use std::fmt;

use crate::field::Field;
use crate::forms::wedge_projector;
use crate::scalars::ScalarExpr;
use crate::tensor::{delta, embed_12, embed_23, flatten_metric, pair, Mat};

pub type Flip = Mat<ScalarExpr>;
pub type Metric = Mat<ScalarExpr>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionKind {
    /// `(1 + S) P = 0`
    Sp,
    /// `P g = 0`
    Pg,
    /// `S^{im}_{ln} g^{np} S^{jk}_{mp} = g^{ij} δ^k_l`
    Compat,
    /// `(S^{ji}_{kl})* S^{lk}_{mn} = δ^i_m δ^j_n`
    Js,
    /// `S^{ij}_{kl} g^{kl} = (g^{ji})*`
    HerF,
    /// `S12 S23 S12 = S23 S12 S23`
    Braid,
    /// `1 + S = (1 - P) T`
    Tau,
}

impl ConditionKind {
    /// The six conditions every candidate is checked against.
    pub const SIX: [ConditionKind; 6] = [
        ConditionKind::Sp,
        ConditionKind::Pg,
        ConditionKind::Compat,
        ConditionKind::Js,
        ConditionKind::HerF,
        ConditionKind::Braid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConditionKind::Sp => "SP",
            ConditionKind::Pg => "Pg",
            ConditionKind::Compat => "compat",
            ConditionKind::Js => "j-s",
            ConditionKind::HerF => "her-f",
            ConditionKind::Braid => "braid",
            ConditionKind::Tau => "tau",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::SIX
            .into_iter()
            .chain([ConditionKind::Tau])
            .find(|k| k.name() == s)
    }
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One checked condition. `pass` is true exactly when the residual vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition<T> {
    pub kind: ConditionKind,
    pub pass: bool,
    pub residual: Mat<T>,
}

impl<T: Field> Condition<T> {
    fn new(kind: ConditionKind, residual: Mat<T>) -> Self {
        Condition {
            kind,
            pass: residual.is_zero(),
            residual,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport<T> {
    pub entries: Vec<Condition<T>>,
    /// `det g = 0`.
    pub degenerate_metric: bool,
    /// Set when a `T` matrix was checked.
    pub tau_invertible: Option<bool>,
}

impl<T: Field> ConditionReport<T> {
    pub fn get(&self, kind: ConditionKind) -> Option<&Condition<T>> {
        self.entries.iter().find(|c| c.kind == kind)
    }

    pub fn passes(&self, kind: ConditionKind) -> Option<bool> {
        self.get(kind).map(|c| c.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|c| c.pass)
    }
}

/// Condition checks for a fixed value of `q`.
#[derive(Clone, Debug)]
pub struct Checker<T> {
    q: T,
    p: Mat<T>,
}

impl Checker<ScalarExpr> {
    /// Exact checks with formal `q`.
    pub fn exact() -> Self {
        Self::new(ScalarExpr::q())
    }
}

impl<T: Field> Checker<T> {
    pub fn new(q: T) -> Self {
        let p = wedge_projector(&q);
        Checker { q, p }
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn projector(&self) -> &Mat<T> {
        &self.p
    }

    pub fn check_sp(&self, s: &Mat<T>) -> Condition<T> {
        let one_plus = Mat::identity(4).add(s);
        Condition::new(ConditionKind::Sp, one_plus.mul(&self.p))
    }

    /// The component form of `(1 + S) P = 0` (one-based flattening):
    /// `S^a_3 - q S^a_2 - c_a` with `c = (0, q, -1, 0)`.
    pub fn sp_components(&self, s: &Mat<T>) -> [T; 4] {
        let q = &self.q;
        let offsets = [T::zero(), q.clone(), -T::one(), T::zero()];
        std::array::from_fn(|a| s[(a, 2)].clone() - q.clone() * s[(a, 1)].clone() - offsets[a].clone())
    }

    pub fn check_symmetry(&self, g: &Mat<T>) -> Condition<T> {
        Condition::new(ConditionKind::Pg, self.p.mul(&flatten_metric(g)))
    }

    /// `S^{im}_{ln} g^{np} S^{jk}_{mp}` with row `(i, j)` and column `(k, l)`.
    pub fn compat_lhs(&self, s: &Mat<T>, g: &Mat<T>) -> Mat<T> {
        let mut out = Mat::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let mut acc = T::zero();
                        for m in 0..2 {
                            for n in 0..2 {
                                let a = &s[(pair(i, m), pair(l, n))];
                                if a.is_zero() {
                                    continue;
                                }
                                for p in 0..2 {
                                    let b = &g[(n, p)];
                                    let c = &s[(pair(j, k), pair(m, p))];
                                    if b.is_zero() || c.is_zero() {
                                        continue;
                                    }
                                    acc = acc + a.clone() * b.clone() * c.clone();
                                }
                            }
                        }
                        out[(pair(i, j), pair(k, l))] = acc;
                    }
                }
            }
        }
        out
    }

    /// `g^{ij} δ^k_l` laid out like [`compat_lhs`](Self::compat_lhs).
    pub fn compat_rhs(&self, g: &Mat<T>) -> Mat<T> {
        Mat::from_fn(4, 4, |r, c| {
            let (i, j) = (r / 2, r % 2);
            let (k, l) = (c / 2, c % 2);
            g[(i, j)].clone() * delta::<T>(k, l)
        })
    }

    pub fn check_compat(&self, s: &Mat<T>, g: &Mat<T>) -> Condition<T> {
        let res = self.compat_lhs(s, g).sub(&self.compat_rhs(g));
        Condition::new(ConditionKind::Compat, res)
    }

    /// Conformal factor `c` with `S g S = c g δ`, if one exists.
    pub fn conformal_factor(&self, s: &Mat<T>, g: &Mat<T>) -> Option<T> {
        let lhs = self.compat_lhs(s, g);
        let rhs = self.compat_rhs(g);
        let (pos, r) = rhs.entries().enumerate().find(|(_, x)| !x.is_negligible())?;
        let l = lhs.entries().nth(pos)?;
        let c = l.clone() * r.inverse()?;
        lhs.sub(&rhs.scale(&c)).is_zero().then_some(c)
    }

    /// The matrix form of compatibility: `S × S_(g)` minus the block matrix
    /// of metric entries.
    pub fn compat_matrix_form(&self, s: &Mat<T>, g: &Mat<T>) -> Mat<T> {
        // one-based S^a_b -> s[(a-1, b-1)]; g^1..g^4 -> flattened metric
        let gv = flatten_metric(g);
        let gf = |n: usize| gv[(n - 1, 0)].clone();
        let e = |a: usize, b: usize| s[(a - 1, b - 1)].clone();
        let sg = Mat::from_fn(4, 4, |r, c| {
            // rows 1-2 use S^1 / S^3, rows 3-4 use S^2 / S^4; odd rows pair g^1 with g^3
            let srow = [1, 1, 2, 2][r] + if c >= 2 { 2 } else { 0 };
            let (ga, gb) = if r % 2 == 0 { (1, 3) } else { (2, 4) };
            let (b1, b2) = if c % 2 == 0 { (1, 2) } else { (3, 4) };
            e(srow, b1) * gf(ga) + e(srow, b2) * gf(gb)
        });
        let target = Mat::from_rows(vec![
            vec![gf(1), T::zero(), gf(3), T::zero()],
            vec![T::zero(), gf(1), T::zero(), gf(3)],
            vec![gf(2), T::zero(), gf(4), T::zero()],
            vec![T::zero(), gf(2), T::zero(), gf(4)],
        ]);
        s.mul(&sg).sub(&target)
    }

    pub fn check_flip_reality(&self, s: &Mat<T>) -> Condition<T> {
        let mut res = Mat::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                for m in 0..2 {
                    for n in 0..2 {
                        let mut acc = T::zero();
                        for k in 0..2 {
                            for l in 0..2 {
                                let a = &s[(pair(j, i), pair(k, l))];
                                let b = &s[(pair(l, k), pair(m, n))];
                                if a.is_zero() || b.is_zero() {
                                    continue;
                                }
                                acc = acc + a.star() * b.clone();
                            }
                        }
                        res[(pair(i, j), pair(m, n))] = acc - delta::<T>(i, m) * delta::<T>(j, n);
                    }
                }
            }
        }
        Condition::new(ConditionKind::Js, res)
    }

    pub fn check_metric_reality(&self, s: &Mat<T>, g: &Mat<T>) -> Condition<T> {
        let sg = s.mul(&flatten_metric(g));
        let target = flatten_metric(&g.transpose().star());
        Condition::new(ConditionKind::HerF, sg.sub(&target))
    }

    pub fn check_braid(&self, s: &Mat<T>) -> Condition<T> {
        let a = embed_12(s);
        let b = embed_23(s);
        let lhs = a.mul(&b).mul(&a);
        let rhs = b.mul(&a).mul(&b);
        Condition::new(ConditionKind::Braid, lhs.sub(&rhs))
    }

    /// Returns the check and whether `T` is invertible.
    pub fn check_tau(&self, s: &Mat<T>, t: &Mat<T>) -> (Condition<T>, bool) {
        let id = Mat::identity(4);
        let res = id.add(s).sub(&id.sub(&self.p).mul(t));
        let invertible = !t.determinant().is_negligible();
        (Condition::new(ConditionKind::Tau, res), invertible)
    }

    /// All six conditions, plus the `τ` relation when `t` is given.
    pub fn check_all(&self, s: &Mat<T>, g: &Mat<T>, t: Option<&Mat<T>>) -> ConditionReport<T> {
        let mut entries = vec![
            self.check_sp(s),
            self.check_symmetry(g),
            self.check_compat(s, g),
            self.check_flip_reality(s),
            self.check_metric_reality(s, g),
            self.check_braid(s),
        ];
        let tau_invertible = t.map(|t| {
            let (c, inv) = self.check_tau(s, t);
            entries.push(c);
            inv
        });
        ConditionReport {
            entries,
            degenerate_metric: g.determinant().is_negligible(),
            tau_invertible,
        }
    }

    /// `σ = 1 - 2π`, the flip for `τ = 2`.
    pub fn tau_two_flip(&self) -> Mat<T> {
        Mat::identity(4).sub(&self.p.scale(&T::from_i64(2)))
    }
}

/// The ordinary permutation flip `S^{ij}_{kl} = δ^i_l δ^j_k`.
pub fn classical_flip<T: Field>() -> Mat<T> {
    Mat::from_fn(4, 4, |r, c| {
        let (i, j) = (r / 2, r % 2);
        let (k, l) = (c / 2, c % 2);
        delta::<T>(i, l) * delta::<T>(j, k)
    })
}
