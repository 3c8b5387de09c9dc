//! Linear connection and curvature built from a flip.

use num_traits::{One, Zero};

use crate::forms::{wedge_projector, wedge_table, Calculus, OneForm, TwoForm};
use crate::ncpoly::{NCElement, NcError, PresentationKind};
use crate::scalars::{ScalarError, ScalarExpr, Var};
use crate::tensor::{delta, pair, Mat};

use super::GeometryError;

/// `ω^i_{jk}` and the matrix of 1-forms `ω^i_k = ω^i_{jk} θj`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    /// Indexed `[i][j][k]`.
    pub coeffs: [[[NCElement; 2]; 2]; 2],
    /// Indexed `[i][k]`.
    pub forms: [[OneForm; 2]; 2],
}

/// `½R^i_{jkl}` and the curvature 2-forms `Ω^i_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Curvature {
    /// Indexed `[i][j][k][l]`.
    pub half_r: [[[[NCElement; 2]; 2]; 2]; 2],
    /// Indexed `[i][j]`.
    pub forms: [[TwoForm; 2]; 2],
}

impl Curvature {
    pub fn is_zero(&self) -> bool {
        self.forms.iter().flatten().all(TwoForm::is_zero)
    }
}

/// `ω^i_{jk} = λl (S^{il}_{jk} - δ^l_j δ^i_k)`
pub fn connection_from_flip(s: &Mat<ScalarExpr>) -> Connection {
    let calc = Calculus::uv();
    let lam = calc.lambdas();
    let coeffs: [[[NCElement; 2]; 2]; 2] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            std::array::from_fn(|k| {
                let mut acc = NCElement::zero(calc.presentation());
                for (l, lam_l) in lam.iter().enumerate() {
                    let c = s[(pair(i, l), pair(j, k))].clone()
                        - delta::<ScalarExpr>(l, j) * delta::<ScalarExpr>(i, k);
                    if !c.is_zero() {
                        acc = &acc + &lam_l.scale(&c);
                    }
                }
                acc
            })
        })
    });
    let forms = std::array::from_fn(|i| {
        std::array::from_fn(|k| OneForm {
            c: [coeffs[i][0][k].clone(), coeffs[i][1][k].clone()],
        })
    });
    Connection { coeffs, forms }
}

/// `ω^i_k = λl S^{il}_{jk} θj + δ^i_k θ`, the second displayed form.
pub fn connection_forms_direct(s: &Mat<ScalarExpr>) -> [[OneForm; 2]; 2] {
    let calc = Calculus::uv();
    let lam = calc.lambdas();
    let theta = calc.theta();
    std::array::from_fn(|i| {
        std::array::from_fn(|k| {
            let mut out = if i == k {
                theta.clone()
            } else {
                OneForm::zero(calc.presentation())
            };
            for j in 0..2 {
                for (l, lam_l) in lam.iter().enumerate() {
                    let c = &s[(pair(i, l), pair(j, k))];
                    if !c.is_zero() {
                        out.c[j] = &out.c[j] + &lam_l.scale(c);
                    }
                }
            }
            out
        })
    })
}

fn lambda_products() -> [[NCElement; 2]; 2] {
    let calc = Calculus::uv();
    let lam = calc.lambdas();
    std::array::from_fn(|m| std::array::from_fn(|p| &lam[m] * &lam[p]))
}

/// Builds the curvature from a tensor `K[i][j][k][l][m][p]` multiplying
/// `λm λp`.
fn assemble(k: impl Fn(usize, usize, usize, usize, usize, usize) -> ScalarExpr) -> Curvature {
    let lp = lambda_products();
    let calc = Calculus::uv();
    let zero = NCElement::zero(calc.presentation());
    let half_r: [[[[NCElement; 2]; 2]; 2]; 2] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            std::array::from_fn(|kk| {
                std::array::from_fn(|l| {
                    let mut acc = zero.clone();
                    for m in 0..2 {
                        for p in 0..2 {
                            let c = k(i, j, kk, l, m, p);
                            if !c.is_zero() {
                                acc = &acc + &lp[m][p].scale(&c);
                            }
                        }
                    }
                    acc
                })
            })
        })
    });
    let w = wedge_table(&ScalarExpr::q());
    let forms = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = zero.clone();
            for kk in 0..2 {
                for l in 0..2 {
                    if !w[kk][l].is_zero() {
                        acc = &acc + &half_r[i][j][kk][l].scale(&w[kk][l]);
                    }
                }
            }
            TwoForm::new(acc)
        })
    });
    Curvature { half_r, forms }
}

/// `½R^i_{jkl} = S^{im}_{rn} S^{np}_{sj} P^{rs}_{kl} λm λp`
pub fn curvature(s: &Mat<ScalarExpr>) -> Curvature {
    let p = wedge_projector(&ScalarExpr::q());
    curvature_with(s, &p, ScalarExpr::one())
}

/// `½R^i_{jkl} = -S^{im}_{rn} S^{np}_{sj} S^{rs}_{uv} P^{uv}_{kl} λm λp`
pub fn curvature_alternative(s: &Mat<ScalarExpr>) -> Curvature {
    let p = wedge_projector(&ScalarExpr::q());
    curvature_with(s, &s.mul(&p), -ScalarExpr::one())
}

fn curvature_with(s: &Mat<ScalarExpr>, last: &Mat<ScalarExpr>, sign: ScalarExpr) -> Curvature {
    // SS[(i,m),(r,s)][j][p] = Σ_n S^{im}_{rn} S^{np}_{sj}
    let mut ss = vec![ScalarExpr::zero(); 4 * 4 * 4];
    let at = |im: usize, rs: usize, jp: usize| (im * 4 + rs) * 4 + jp;
    for i in 0..2 {
        for m in 0..2 {
            for r in 0..2 {
                for sx in 0..2 {
                    for j in 0..2 {
                        for p in 0..2 {
                            let mut acc = ScalarExpr::zero();
                            for n in 0..2 {
                                let a = &s[(pair(i, m), pair(r, n))];
                                let b = &s[(pair(n, p), pair(sx, j))];
                                if !a.is_zero() && !b.is_zero() {
                                    acc = acc + a * b;
                                }
                            }
                            ss[at(pair(i, m), pair(r, sx), pair(j, p))] = acc;
                        }
                    }
                }
            }
        }
    }
    assemble(|i, j, k, l, m, p| {
        let mut acc = ScalarExpr::zero();
        for rs in 0..4 {
            let a = &ss[at(pair(i, m), rs, pair(j, p))];
            let b = &last[(rs, pair(k, l))];
            if !a.is_zero() && !b.is_zero() {
                acc = acc + a * b;
            }
        }
        &acc * &sign
    })
}

/// `dω + ω ∧ ω`, computed directly from the connection forms.
pub fn curvature_from_forms(c: &Connection) -> Result<[[TwoForm; 2]; 2], NcError> {
    let calc = Calculus::uv();
    let mut out: [[TwoForm; 2]; 2] =
        std::array::from_fn(|_| std::array::from_fn(|_| TwoForm::new(NCElement::zero(calc.presentation()))));
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = calc.d1(&c.forms[i][j])?;
            for k in 0..2 {
                acc = acc.try_add(&calc.wedge(&c.forms[i][k], &c.forms[k][j])?)?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

/// `Σ c(q̃ = 1) u^a v^b` as a commutative rational function of `u`, `v`.
pub fn commutative_image(e: &NCElement) -> Result<ScalarExpr, GeometryError> {
    if e.kind() != PresentationKind::Uv {
        return Err(GeometryError::Nc(NcError::WrongPresentation(PresentationKind::Uv)));
    }
    let u = ScalarExpr::var(Var::U);
    let v = ScalarExpr::var(Var::V);
    let mut out = ScalarExpr::zero();
    for ((a, b), c) in e.terms() {
        let c1 = c.at_r_one().map_err(|err| match err {
            ScalarError::Pole(_) => GeometryError::PoleAtCommutativePoint {
                term: format!("({c}) * u^{a} * v^{b}"),
            },
            other => GeometryError::Scalar(other),
        })?;
        out = out + c1 * u.powi(*a) * v.powi(*b);
    }
    Ok(out)
}

/// The curvature 2-forms at `q → 1`, as coefficients of `θ1θ2` in commuting
/// `u`, `v`.
pub fn curvature_limit_q1(c: &Curvature) -> Result<[[ScalarExpr; 2]; 2], GeometryError> {
    Ok([
        [commutative_image(&c.forms[0][0].c)?, commutative_image(&c.forms[0][1].c)?],
        [commutative_image(&c.forms[1][0].c)?, commutative_image(&c.forms[1][1].c)?],
    ])
}
