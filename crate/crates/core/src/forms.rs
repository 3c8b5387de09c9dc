//! Differential calculus in the frame `θ1, θ2`.
//!
//! The frame commutes with the algebra, so a 1-form is a pair of
//! coefficients `f1 θ1 + f2 θ2` and a 2-form a single coefficient of
//! `θ1 θ2`. The differential is inner: `df = θi [λi, f]`.

use std::fmt;

use num_traits::{One, Zero};

use crate::field::Field;
use crate::ncpoly::{
    embed_uv_in_xy, lambdas_uv, NCElement, NcError, NcPoly, Presentation, PresentationKind,
    StarConvention,
};
use crate::scalars::ScalarExpr;
use crate::tensor::{delta, pair, Mat};

/// The wedge projector `P^{ij}_{kl}` for `θ1θ2 + q θ2θ1 = 0`.
pub fn wedge_projector<T: Field>(q: &T) -> Mat<T> {
    let half = T::one() / T::from_i64(2);
    let qinv = q.inverse().expect("q is invertible");
    let mut p = Mat::zeros(4, 4);
    p[(1, 1)] = half.clone();
    p[(1, 2)] = -(half.clone() * q.clone());
    p[(2, 1)] = -(half.clone() * qinv);
    p[(2, 2)] = half;
    p
}

/// `C^{ij}_{kl} = δ^i_k δ^j_l - 2 P^{ij}_{kl}`
pub fn c_matrix<T: Field>(p: &Mat<T>) -> Mat<T> {
    Mat::identity(4).sub(&p.scale(&T::from_i64(2)))
}

/// Coefficient of `θ1θ2` in `θiθj`.
pub fn wedge_table<T: Field>(q: &T) -> [[T; 2]; 2] {
    let qinv = q.inverse().expect("q is invertible");
    [[T::zero(), T::one()], [-qinv, T::zero()]]
}

#[derive(Clone, PartialEq)]
pub struct OneForm {
    pub c: [NCElement; 2],
}

#[derive(Clone, PartialEq)]
pub struct TwoForm {
    pub c: NCElement,
}

impl OneForm {
    pub fn zero(pres: &Presentation<ScalarExpr>) -> Self {
        OneForm {
            c: [NCElement::zero(pres), NCElement::zero(pres)],
        }
    }

    /// `f θi` (zero-based `i`).
    pub fn basis(f: NCElement, i: usize) -> Self {
        let mut out = Self::zero(f.presentation());
        out.c[i] = f;
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(NcPoly::is_zero)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, NcError> {
        Ok(OneForm {
            c: [self.c[0].try_add(&o.c[0])?, self.c[1].try_add(&o.c[1])?],
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, NcError> {
        Ok(OneForm {
            c: [self.c[0].try_sub(&o.c[0])?, self.c[1].try_sub(&o.c[1])?],
        })
    }

    pub fn scale(&self, s: &ScalarExpr) -> Self {
        OneForm {
            c: [self.c[0].scale(s), self.c[1].scale(s)],
        }
    }

    /// `f · a`
    pub fn left_mul(&self, f: &NCElement) -> Result<Self, NcError> {
        Ok(OneForm {
            c: [f.try_mul(&self.c[0])?, f.try_mul(&self.c[1])?],
        })
    }

    /// `a · f`; the frame commutes with `f`.
    pub fn right_mul(&self, f: &NCElement) -> Result<Self, NcError> {
        Ok(OneForm {
            c: [self.c[0].try_mul(f)?, self.c[1].try_mul(f)?],
        })
    }

    /// `(f θi)* = θi f* = f* θi` under the `(x, y)`-induced star.
    pub fn star(&self) -> Self {
        OneForm {
            c: [
                self.c[0].star(StarConvention::XyInduced),
                self.c[1].star(StarConvention::XyInduced),
            ],
        }
    }
}

impl TwoForm {
    pub fn new(c: NCElement) -> Self {
        TwoForm { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, NcError> {
        Ok(TwoForm {
            c: self.c.try_add(&o.c)?,
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, NcError> {
        Ok(TwoForm {
            c: self.c.try_sub(&o.c)?,
        })
    }

    pub fn scale(&self, s: &ScalarExpr) -> Self {
        TwoForm { c: self.c.scale(s) }
    }

    /// Graded star: `(g θ1θ2)* = g* (-θ2θ1) = q^-1 g* θ1θ2`.
    pub fn star(&self) -> Self {
        TwoForm {
            c: self.c.star(StarConvention::XyInduced).scale(&ScalarExpr::q_pow(-1)),
        }
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) [th1] + ({}) [th2]", self.c[0], self.c[1])
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) [th1 th2]", self.c)
    }
}

impl fmt::Debug for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The calculus on one presentation: its inner-derivation elements and
/// structure elements.
#[derive(Clone, Debug)]
pub struct Calculus {
    pres: Presentation<ScalarExpr>,
    lambdas: [NCElement; 2],
}

impl Calculus {
    pub fn uv() -> Self {
        Calculus {
            pres: Presentation::uv(),
            lambdas: lambdas_uv(),
        }
    }

    /// The `(x, y)` calculus for the sign choice `(ε1, ε2)`, with `λa`
    /// transported through the embedding.
    pub fn xy(eps1: i8, eps2: i8) -> Self {
        let [l1, l2] = lambdas_uv();
        Calculus {
            pres: Presentation::xy(),
            lambdas: [
                embed_uv_in_xy(&l1, eps1, eps2).expect("uv element"),
                embed_uv_in_xy(&l2, eps1, eps2).expect("uv element"),
            ],
        }
    }

    pub fn presentation(&self) -> &Presentation<ScalarExpr> {
        &self.pres
    }

    pub fn lambdas(&self) -> &[NCElement; 2] {
        &self.lambdas
    }

    pub fn element(&self, c: ScalarExpr, a: i32, b: i32) -> NCElement {
        NCElement::monomial(&self.pres, c, a, b)
    }

    pub fn scalar(&self, c: ScalarExpr) -> NCElement {
        NCElement::constant(&self.pres, c)
    }

    /// `θi` (zero-based `i`).
    pub fn frame(&self, i: usize) -> OneForm {
        OneForm::basis(NCElement::one(&self.pres), i)
    }

    /// `θ = -λi θi`
    pub fn theta(&self) -> OneForm {
        OneForm {
            c: [-&self.lambdas[0], -&self.lambdas[1]],
        }
    }

    /// `ei f = [λi, f]`
    pub fn derivation(&self, i: usize, f: &NCElement) -> Result<NCElement, NcError> {
        self.lambdas[i].commutator(f)
    }

    pub fn d0(&self, f: &NCElement) -> Result<OneForm, NcError> {
        self.check(f)?;
        Ok(OneForm {
            c: [self.derivation(0, f)?, self.derivation(1, f)?],
        })
    }

    pub fn wedge(&self, a: &OneForm, b: &OneForm) -> Result<TwoForm, NcError> {
        let w = wedge_table(&ScalarExpr::q());
        let mut out = NCElement::zero(&self.pres);
        for (i, row) in w.iter().enumerate() {
            for (j, wij) in row.iter().enumerate() {
                if wij.is_zero() {
                    continue;
                }
                out = out.try_add(&a.c[i].try_mul(&b.c[j])?.scale(wij))?;
            }
        }
        Ok(TwoForm { c: out })
    }

    /// `C^i_{jk}`: `C^1_12 = (q^-1 - 1) λ2`, `C^2_12 = (q^-1 - 1) λ1`,
    /// `C^i_21 = -q C^i_12`, diagonal entries zero.
    pub fn structure_elements(&self) -> [[[NCElement; 2]; 2]; 2] {
        let one = ScalarExpr::one();
        let q = ScalarExpr::q();
        let k = &q.powi(-1) - &one;
        let zero = NCElement::zero(&self.pres);
        let c12 = [self.lambdas[1].scale(&k), self.lambdas[0].scale(&k)];
        std::array::from_fn(|i| {
            [
                [zero.clone(), c12[i].clone()],
                [c12[i].scale(&-q.clone()), zero.clone()],
            ]
        })
    }

    /// `dθi = -½ C^i_{jk} θj θk`
    pub fn dtheta(&self, i: usize) -> TwoForm {
        let c = self.structure_elements();
        let w = wedge_table(&ScalarExpr::q());
        let minus_half = ScalarExpr::ratio(-1, 2);
        let mut out = NCElement::zero(&self.pres);
        for j in 0..2 {
            for k in 0..2 {
                out = &out + &c[i][j][k].scale(&(&minus_half * &w[j][k]));
            }
        }
        TwoForm { c: out }
    }

    /// `d(fi θi) = dfi θi + fi dθi`
    pub fn d1(&self, a: &OneForm) -> Result<TwoForm, NcError> {
        let mut out = TwoForm::new(NCElement::zero(&self.pres));
        for i in 0..2 {
            let df = self.d0(&a.c[i])?;
            out = out.try_add(&self.wedge(&df, &self.frame(i))?)?;
            out = out.try_add(&TwoForm::new(a.c[i].try_mul(&self.dtheta(i).c)?))?;
        }
        Ok(out)
    }

    /// `(df)* - d(f*)` under the `(x, y)`-induced star.
    pub fn reald_residual(&self, f: &NCElement) -> Result<OneForm, NcError> {
        let lhs = self.d0(f)?.star();
        let rhs = self.d0(&f.star(StarConvention::XyInduced))?;
        lhs.try_sub(&rhs)
    }

    fn check(&self, f: &NCElement) -> Result<(), NcError> {
        if f.kind() != self.pres.kind {
            return Err(NcError::PresentationMismatch(self.pres.kind, f.kind()));
        }
        Ok(())
    }
}

/// One relation `lhs - rhs = 0` between 1-forms.
#[derive(Clone, Debug)]
pub struct FormRelation {
    pub name: String,
    pub residual: OneForm,
}

impl FormRelation {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// The module relations `a dg = c dh b + ...` in both presentations.
///
/// The `(x, y)` block is checked for every sign choice `(ε1, ε2)`.
pub fn check_wz_relations() -> Result<Vec<FormRelation>, NcError> {
    let mut out = Vec::new();
    let r = ScalarExpr::r();
    let r2 = r.powi(2);
    let one = ScalarExpr::one();
    for (e1, e2) in [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
        let c = Calculus::xy(e1, e2);
        let x = NCElement::x();
        let y = NCElement::y();
        let dx = c.d0(&x)?;
        let dy = c.d0(&y)?;
        let tag = format!("(e1={e1},e2={e2})");
        out.push(FormRelation {
            name: format!("x dx = r^2 dx x {tag}"),
            residual: dx.left_mul(&x)?.try_sub(&dx.right_mul(&x)?.scale(&r2))?,
        });
        let rhs = dy
            .right_mul(&x)?
            .scale(&r)
            .try_add(&dx.right_mul(&y)?.scale(&(&r2 - &one)))?;
        out.push(FormRelation {
            name: format!("x dy = r dy x + (r^2-1) dx y {tag}"),
            residual: dy.left_mul(&x)?.try_sub(&rhs)?,
        });
        out.push(FormRelation {
            name: format!("y dx = r dx y {tag}"),
            residual: dx.left_mul(&y)?.try_sub(&dx.right_mul(&y)?.scale(&r))?,
        });
        out.push(FormRelation {
            name: format!("y dy = r^2 dy y {tag}"),
            residual: dy.left_mul(&y)?.try_sub(&dy.right_mul(&y)?.scale(&r2))?,
        });
    }
    let c = Calculus::uv();
    let u = NCElement::u();
    let v = NCElement::v();
    let du = c.d0(&u)?;
    let dv = c.d0(&v)?;
    let q = ScalarExpr::q();
    let qi = q.powi(-1);
    let rel = |name: &str, lhs: OneForm, rhs: OneForm| -> Result<FormRelation, NcError> {
        Ok(FormRelation {
            name: name.to_string(),
            residual: lhs.try_sub(&rhs)?,
        })
    };
    out.push(rel("u du = q^-1 du u", du.left_mul(&u)?, du.right_mul(&u)?.scale(&qi))?);
    out.push(rel("u dv = q dv u", dv.left_mul(&u)?, dv.right_mul(&u)?.scale(&q))?);
    out.push(rel("v du = q^-1 du v", du.left_mul(&v)?, du.right_mul(&v)?.scale(&qi))?);
    out.push(rel("v dv = q dv v", dv.left_mul(&v)?, dv.right_mul(&v)?.scale(&q))?);
    Ok(out)
}

/// Which `Q` matrix the light-cone relations are checked with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LightConeQ {
    /// Diagonal `(q^½ + q^-½)/2`, off-diagonal `(q^½ - q^-½)/2`.
    AsStated,
    /// Off-diagonal sign flipped.
    Conjugate,
}

#[derive(Clone, Debug)]
pub struct XyRelations {
    pub q_choice: LightConeQ,
    /// `X^t (Q σ2) X`
    pub quadratic: NCElement,
    /// `X Ξ^t - Ξ (Q² X)^t`, entrywise.
    pub mixed: [[OneForm; 2]; 2],
    /// `X_a Ξ_b - (Q² Ξ)_b X_a`: the mixed relation with `Q²` acting on the
    /// forms.
    pub mixed_on_forms: [[OneForm; 2]; 2],
    /// `Ξ^t Q Ξ`
    pub forms: TwoForm,
}

impl XyRelations {
    pub fn holds(&self) -> bool {
        self.quadratic.is_zero() && self.forms.is_zero() && self.mixed.iter().flatten().all(OneForm::is_zero)
    }

    /// As [`holds`](Self::holds) but with `mixed_on_forms` for the middle
    /// relation.
    pub fn holds_with_forms_reading(&self) -> bool {
        self.quadratic.is_zero()
            && self.forms.is_zero()
            && self.mixed_on_forms.iter().flatten().all(OneForm::is_zero)
    }
}

/// The light-cone matrix `Q` with exact trigonometric entries.
pub fn light_cone_q(choice: LightConeQ) -> Mat<ScalarExpr> {
    let p = ScalarExpr::q_half_pow(1);
    let pi = ScalarExpr::q_half_pow(-1);
    let half = ScalarExpr::ratio(1, 2);
    let cos = &half * &(&p + &pi);
    let mut isin = &half * &(&p - &pi);
    if choice == LightConeQ::Conjugate {
        isin = -isin;
    }
    Mat::from_rows(vec![vec![cos.clone(), isin.clone()], vec![isin, cos]])
}

/// The three matrix relations in `t = (u+v)/√2`, `r = (u-v)/√2`.
///
/// All three are homogeneous, so the `√2` is dropped.
pub fn check_xy_relations(choice: LightConeQ) -> Result<XyRelations, NcError> {
    let c = Calculus::uv();
    let u = NCElement::u();
    let v = NCElement::v();
    let x = [&u + &v, &u - &v];
    let xi = [c.d0(&x[0])?, c.d0(&x[1])?];
    let q = light_cone_q(choice);
    let i = ScalarExpr::i();
    let sigma2 = Mat::from_rows(vec![
        vec![ScalarExpr::zero(), -i.clone()],
        vec![i, ScalarExpr::zero()],
    ]);
    let qs = q.mul(&sigma2);
    let q2 = q.mul(&q);
    let uvp = Presentation::uv();

    let mut quadratic = NCElement::zero(&uvp);
    for a in 0..2 {
        for b in 0..2 {
            quadratic = quadratic.try_add(&x[a].try_mul(&x[b])?.scale(&qs[(a, b)]))?;
        }
    }

    let q2x = |b: usize| -> Result<NCElement, NcError> {
        x[0].scale(&q2[(b, 0)]).try_add(&x[1].scale(&q2[(b, 1)]))
    };
    let mixed_entry = |a: usize, b: usize| -> Result<OneForm, NcError> {
        xi[b].left_mul(&x[a])?.try_sub(&xi[a].right_mul(&q2x(b)?)?)
    };
    let mixed = [
        [mixed_entry(0, 0)?, mixed_entry(0, 1)?],
        [mixed_entry(1, 0)?, mixed_entry(1, 1)?],
    ];
    let on_forms_entry = |a: usize, b: usize| -> Result<OneForm, NcError> {
        let q2xi = xi[0].scale(&q2[(b, 0)]).try_add(&xi[1].scale(&q2[(b, 1)]))?;
        xi[b].left_mul(&x[a])?.try_sub(&q2xi.right_mul(&x[a])?)
    };
    let mixed_on_forms = [
        [on_forms_entry(0, 0)?, on_forms_entry(0, 1)?],
        [on_forms_entry(1, 0)?, on_forms_entry(1, 1)?],
    ];

    let mut forms = TwoForm::new(NCElement::zero(&uvp));
    for a in 0..2 {
        for b in 0..2 {
            forms = forms.try_add(&c.wedge(&xi[a], &xi[b])?.scale(&q[(a, b)]))?;
        }
    }
    Ok(XyRelations {
        q_choice: choice,
        quadratic,
        mixed,
        mixed_on_forms,
        forms,
    })
}

/// `θi θj = P^{ij}_{kl} θk θl` reproduces the wedge table.
pub fn projector_matches_wedge_table() -> bool {
    let q = ScalarExpr::q();
    let p = wedge_projector(&q);
    let w = wedge_table(&q);
    (0..2).all(|i| {
        (0..2).all(|j| {
            let mut s = ScalarExpr::zero();
            for k in 0..2 {
                for l in 0..2 {
                    s = s + p[(pair(i, j), pair(k, l))].clone() * w[k][l].clone();
                }
            }
            s == w[i][j]
        })
    })
}

/// `P^{ij}_{kl} λi λj` for each `(k, l)`; zero for a consistent calculus.
pub fn lambda_relation(c: &Calculus) -> Result<Vec<NCElement>, NcError> {
    let p = wedge_projector(&ScalarExpr::q());
    let l = c.lambdas();
    let mut out = Vec::new();
    for k in 0..2 {
        for m in 0..2 {
            let mut s = NCElement::zero(c.presentation());
            for i in 0..2 {
                for j in 0..2 {
                    let coeff = &p[(pair(i, j), pair(k, m))];
                    if coeff.is_zero() {
                        continue;
                    }
                    s = s.try_add(&l[i].try_mul(&l[j])?.scale(coeff))?;
                }
            }
            out.push(s);
        }
    }
    Ok(out)
}

/// Reality of the structure elements: `((C^i_kj)* + C^i_jk) P^{jk}_{lm}`.
///
/// The transposed index on the starred term comes from the graded star on
/// 2-forms, `(θj θk)* = -θk θj`.
pub fn structure_reality_residual(c: &Calculus) -> Result<Vec<NCElement>, NcError> {
    let p = wedge_projector(&ScalarExpr::q());
    let ce = c.structure_elements();
    let mut out = Vec::new();
    for i in 0..2 {
        for l in 0..2 {
            for m in 0..2 {
                let mut s = NCElement::zero(c.presentation());
                for j in 0..2 {
                    for k in 0..2 {
                        let coeff = &p[(pair(j, k), pair(l, m))];
                        if coeff.is_zero() {
                            continue;
                        }
                        let sum = ce[i][k][j].star(StarConvention::XyInduced).try_add(&ce[i][j][k])?;
                        s = s.try_add(&sum.scale(coeff))?;
                    }
                }
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// `θ1θ2` and `du dv` in the frame, for the volume-element comparison.
pub fn volume_forms() -> Result<(TwoForm, TwoForm), NcError> {
    let c = Calculus::uv();
    let th = c.wedge(&c.frame(0), &c.frame(1))?;
    let dudv = c.wedge(&c.d0(&NCElement::u())?, &c.d0(&NCElement::v())?)?;
    Ok((th, dudv))
}

/// Compares `θi = Λ^i_j du^j` obtained by inverting `du`, `dv` with the
/// frame.
pub fn frame_from_differentials() -> Result<[OneForm; 2], NcError> {
    let c = Calculus::uv();
    let u = NCElement::u();
    let v = NCElement::v();
    let q = ScalarExpr::q();
    let vui = v.try_mul(&u.powi(-1)?)?;
    let uvi = u.try_mul(&v.powi(-1)?)?;
    let th1 = c.d0(&u)?.left_mul(&vui.scale(&q.powi(-1)))?;
    let th2 = c.d0(&v)?.left_mul(&uvi)?;
    Ok([th1, th2])
}

/// Rows of `δδ` restricted to pairs, used by `same_relations`.
fn complement<T: Field>(p: &Mat<T>) -> Mat<T> {
    Mat::from_fn(4, 4, |r, c| delta::<T>(r, c) - p[(r, c)].clone())
}

/// Two projectors define the same 2-form relations iff the row spaces of
/// `1 - P` coincide.
pub fn same_relations<T: Field>(p1: &Mat<T>, p2: &Mat<T>) -> bool {
    let a = complement(p1);
    let b = complement(p2);
    let ra = a.rank();
    if ra != b.rank() {
        return false;
    }
    let stacked = Mat::from_fn(8, 4, |r, c| if r < 4 { a[(r, c)].clone() } else { b[(r - 4, c)].clone() });
    stacked.rank() == ra
}

impl PresentationKind {
    pub fn name(self) -> &'static str {
        match self {
            PresentationKind::Xy => "xy",
            PresentationKind::Uv => "uv",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ScalarExpr {
        ScalarExpr::q()
    }

    #[test]
    fn du_in_the_frame() {
        let c = Calculus::uv();
        let du = c.d0(&NCElement::u()).unwrap();
        assert_eq!(du.c[0], NCElement::uv_monomial(q(), 1, -1));
        assert!(du.c[1].is_zero());
        let dv = c.d0(&NCElement::v()).unwrap();
        assert!(dv.c[0].is_zero());
        assert_eq!(dv.c[1], &NCElement::v() * &NCElement::u().powi(-1).unwrap());
        assert!(c.d0(&NCElement::uv_scalar(ScalarExpr::one())).unwrap().is_zero());
    }

    #[test]
    fn leibniz_on_uv() {
        let c = Calculus::uv();
        let u = NCElement::u();
        let v = NCElement::v();
        let lhs = c.d0(&(&u * &v)).unwrap();
        let rhs = c
            .d0(&u)
            .unwrap()
            .right_mul(&v)
            .unwrap()
            .try_add(&c.d0(&v).unwrap().left_mul(&u).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dtheta_one_from_the_frame() {
        // θ1 = q^-1 v u^-1 du, so dθ1 = d(q^-1 v u^-1) du.
        let c = Calculus::uv();
        let a = NCElement::v().try_mul(&NCElement::u().powi(-1).unwrap()).unwrap().scale(&q().powi(-1));
        let direct = c.wedge(&c.d0(&a).unwrap(), &c.d0(&NCElement::u()).unwrap()).unwrap();
        assert_eq!(direct, c.dtheta(0));
        let one = ScalarExpr::one();
        let expected = c.lambdas()[1].scale(&(&one - &q().powi(-1)));
        assert_eq!(c.dtheta(0).c, expected);
        let b = NCElement::u().try_mul(&NCElement::v().powi(-1).unwrap()).unwrap();
        let direct2 = c.wedge(&c.d0(&b).unwrap(), &c.d0(&NCElement::v()).unwrap()).unwrap();
        assert_eq!(direct2, c.dtheta(1));
    }

    #[test]
    fn theta_is_closed_and_squares_to_zero() {
        let c = Calculus::uv();
        let th = c.theta();
        assert!(c.d1(&th).unwrap().is_zero());
        assert!(c.wedge(&th, &th).unwrap().is_zero());
        assert_eq!(th.star(), th.scale(&ScalarExpr::int(-1)));
    }

    #[test]
    fn theta_closed_form_in_uv() {
        // θ = (u^-1 du - q v^-1 dv)/(1 - q)
        let c = Calculus::uv();
        let u = NCElement::u();
        let v = NCElement::v();
        let one = ScalarExpr::one();
        let k = &one / &(&one - &q());
        let a = c.d0(&u).unwrap().left_mul(&u.powi(-1).unwrap()).unwrap();
        let b = c.d0(&v).unwrap().left_mul(&v.powi(-1).unwrap()).unwrap().scale(&q());
        assert_eq!(c.theta(), a.try_sub(&b).unwrap().scale(&k));
    }

    #[test]
    fn dtheta_is_real() {
        let c = Calculus::uv();
        for i in 0..2 {
            assert_eq!(c.dtheta(i).star(), c.dtheta(i));
        }
    }

    #[test]
    fn projector_algebra() {
        let p = wedge_projector(&q());
        assert_eq!(p.mul(&p), p);
        let cm = c_matrix(&p);
        assert_eq!(cm.mul(&cm), Mat::identity(4));
        assert_eq!(cm[(1, 2)], q());
        assert_eq!(cm[(2, 1)], q().powi(-1));
        assert!(projector_matches_wedge_table());
    }

    #[test]
    fn frame_round_trip() {
        let [t1, t2] = frame_from_differentials().unwrap();
        let c = Calculus::uv();
        assert_eq!(t1, c.frame(0));
        assert_eq!(t2, c.frame(1));
    }

    #[test]
    fn dx_matches_display() {
        // dx = q̃²/(q̃²+1) x^-1 y² ε1 θ1
        let r2 = ScalarExpr::r().powi(2);
        let one = ScalarExpr::one();
        for e1 in [1i8, -1] {
            let c = Calculus::xy(e1, 1);
            let dx = c.d0(&NCElement::x()).unwrap();
            let k = &(&r2 / &(&r2 + &one)) * &ScalarExpr::int(e1 as i64);
            assert_eq!(dx.c[0], c.element(k, -1, 2));
            assert!(dx.c[1].is_zero());
        }
    }

    #[test]
    fn wess_zumino_relations() {
        for rel in check_wz_relations().unwrap() {
            assert!(rel.holds(), "{} -> {}", rel.name, rel.residual);
        }
    }

    #[test]
    fn light_cone_relations() {
        let stated = check_xy_relations(LightConeQ::AsStated).unwrap();
        assert!(stated.forms.is_zero());
        assert!(!stated.quadratic.is_zero());
        let conj = check_xy_relations(LightConeQ::Conjugate).unwrap();
        assert!(conj.quadratic.is_zero());
        assert!(!conj.holds());
        assert!(conj.holds_with_forms_reading());
    }

    #[test]
    fn lambda_consistency() {
        for c in [Calculus::uv(), Calculus::xy(1, -1)] {
            assert!(lambda_relation(&c).unwrap().iter().all(NcPoly::is_zero));
            assert!(structure_reality_residual(&c).unwrap().iter().all(NcPoly::is_zero));
        }
    }
}
