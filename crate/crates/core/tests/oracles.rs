//! Fixed input/output pairs. Expected values are frozen.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Zero};
use qplane::conditions::classical_flip;
use qplane::forms::{check_wz_relations, lambda_relation};
use qplane::geometry::catalog::{
    degenerate_solution, rhat_solution, solution_one, solution_three, solution_two,
};
use qplane::geometry::patching::patching_lambda;
use qplane::geometry::rhat::rhat_toolkit;
use qplane::geometry::{curvature, curvature_limit_q1};
use qplane::jordan::{check_primed_commutator, check_primed_generators};
use qplane::ncpoly::{embed_uv_in_xy, lambdas_uv};
use qplane::rep::{apply_u, apply_v, commutation_residual, Ket64, RepParams64};
use qplane::solver::{dimension_audit, in_span, solve_metric};
use qplane::tensor::unflatten_metric;
use qplane::{
    Calculus, Checker, ConditionKind, Field, Mat, NCElement, ScalarError, ScalarExpr, StarConvention,
    UnitEval, Var,
};

fn s(t: &str) -> ScalarExpr {
    ScalarExpr::parse(t).unwrap()
}

fn strings(v: &[ScalarExpr]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

// scalars

#[test]
fn arithmetic_identities() {
    let q = ScalarExpr::q();
    let one = ScalarExpr::one();
    assert!(((&one - &q.powi(-1)) * q.clone() / (&q - &one)).is_one());
    assert_eq!(s("1/(1-q^(-1))"), s("q/(q-1)"));
    assert_eq!(s("1/(1-q^(-1))").to_string(), "-1/(r^4 - 1)");
    assert!(matches!(ScalarExpr::r().try_div(&ScalarExpr::zero()), Err(ScalarError::DivisionByZero)));
}

#[test]
fn scalar_star() {
    assert_eq!(ScalarExpr::q_half_pow(1).star(), ScalarExpr::q_half_pow(-1));
    assert_eq!(s("zeta/(q-1)").star(), s("zeta/(q^(-1)-1)"));
    let f = s("(1+i*r)/(r^3-h)");
    assert_eq!(f.star().star(), f);
    assert_eq!(f.star().to_string(), "(-r^3 + i*r^2)/(r^3*h - 1)");
}

#[test]
fn parse_and_print() {
    assert_eq!(s("q^(1/2)"), ScalarExpr::r().powi(-2));
    assert_eq!(s("q^(1/2)").to_string(), "1/(r^2)");
    let frozen = [
        ("(1-q^2)/(1+q^2)", "(r^8 - 1)/(r^8 + 1)"),
        ("zeta^2*(q^2+1)/(q*(q^2-1))", "(-r^12*zeta^2 - r^4*zeta^2)/(r^8 - 1)"),
        ("zeta/(q-1)", "(-r^4*zeta)/(r^4 - 1)"),
    ];
    for (text, printed) in frozen {
        let e = s(text);
        assert_eq!(e.to_string(), printed, "{text}");
        assert_eq!(s(printed), e, "{text} round trip");
    }
    assert_eq!(solution_one(None).flip[(0, 3)], s("zeta^2*(q^2+1)/(q*(q^2-1))"));
}

#[test]
fn numeric_evaluation() {
    let at = UnitEval::new(PI / 7.0, 0.0, 0.0).unwrap();
    let want = Complex64::from_polar(1.0, -4.0 * PI / 7.0);
    assert!((ScalarExpr::q().eval(&at).unwrap() - want).norm() < 1e-14);

    let eta = 0.3;
    let at = UnitEval::from_eta(eta, 0.0, 0.0).unwrap();
    let g = s("(q^(1/2)+q^(-1/2))/2").eval(&at).unwrap();
    assert!((g - Complex64::new((PI * eta).cos(), 0.0)).norm() < 1e-14);

    let pole = s("1/(q-1)").eval(&UnitEval::commutative(0.0, 0.0));
    assert!(matches!(pole, Err(ScalarError::Pole(_))), "{pole:?}");
}

// ncpoly

#[test]
fn normal_ordering() {
    let u = NCElement::u();
    let v = NCElement::v();
    let q = ScalarExpr::q();
    assert_eq!(&v * &u, NCElement::uv_monomial(q.powi(-1), 1, 1));
    let uv = &u * &v;
    assert_eq!(&uv * &uv, NCElement::uv_monomial(q.powi(-1), 2, 2));
    let [l1, l2] = lambdas_uv();
    assert_eq!(&l1 * &l2, (&l2 * &l1).scale(&q.powi(-1)));
}

#[test]
fn element_star() {
    let [l1, l2] = lambdas_uv();
    assert_eq!(l1.star(StarConvention::XyInduced), -&l1);
    assert_eq!(l2.star(StarConvention::XyInduced), -&l2);
    let uv = &NCElement::u() * &NCElement::v();
    assert_eq!(uv.star(StarConvention::UvHermitian), uv.scale(&ScalarExpr::q_pow(-1)));
    let one = NCElement::uv_scalar(ScalarExpr::one());
    assert_eq!(one.star(StarConvention::XyInduced), one);
}

#[test]
fn embedding_into_xy() {
    let u = NCElement::u();
    let v = NCElement::v();
    let q = ScalarExpr::q();
    for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let lhs = embed_uv_in_xy(&(&u * &v), e1, e2).unwrap();
        let rhs = embed_uv_in_xy(&(&v * &u).scale(&q), e1, e2).unwrap();
        assert_eq!(lhs, rhs);
        // λ1 = -ε1 q̃^4/(q̃^4 - 1) x^-2 y^2
        let l1 = embed_uv_in_xy(&lambdas_uv()[0], e1, e2).unwrap();
        let coeff = s("r^4/(r^4-1)") * ScalarExpr::int(-e1 as i64);
        assert_eq!(l1, NCElement::monomial(l1.presentation(), coeff, -2, 2));
        let one = NCElement::uv_scalar(ScalarExpr::one());
        assert_eq!(embed_uv_in_xy(&one, e1, e2).unwrap().coeff(0, 0), ScalarExpr::one());
    }
}

// forms

#[test]
fn differentials_of_generators() {
    let c = Calculus::uv();
    let u = NCElement::u();
    let v = NCElement::v();
    let q = ScalarExpr::q();
    let du = c.d0(&u).unwrap();
    assert_eq!(du.c[0], NCElement::uv_monomial(q.clone(), 1, -1));
    assert!(du.c[1].is_zero());
    let dv = c.d0(&v).unwrap();
    assert!(dv.c[0].is_zero());
    assert_eq!(dv.c[1], NCElement::uv_monomial(q, -1, 1));
    assert!(c.d0(&NCElement::uv_scalar(ScalarExpr::one())).unwrap().is_zero());

    let uv = &u * &v;
    let leibniz = du.right_mul(&v).unwrap().try_add(&dv.left_mul(&u).unwrap()).unwrap();
    assert!(c.d0(&uv).unwrap().try_sub(&leibniz).unwrap().is_zero());
    assert!(c.d1(&du).unwrap().is_zero());
    assert!(c.d1(&dv).unwrap().is_zero());
}

#[test]
fn wedge_and_star_of_frame() {
    let c = Calculus::uv();
    let w = c.wedge(&c.frame(0), &c.frame(1)).unwrap();
    assert_eq!(w.c, NCElement::uv_scalar(ScalarExpr::one()));
    let theta = c.theta();
    assert!(c.wedge(&theta, &theta).unwrap().is_zero());
    assert!(c.d1(&theta).unwrap().is_zero());
    assert_eq!(theta.star(), theta.scale(&-ScalarExpr::one()));
    assert!(c.reald_residual(&NCElement::u()).unwrap().is_zero());
}

#[test]
fn module_relations() {
    let rels = check_wz_relations().unwrap();
    assert!(!rels.is_empty());
    for r in &rels {
        assert!(r.holds(), "{}", r.name);
    }
    assert!(lambda_relation(&Calculus::uv()).unwrap().iter().all(NCElement::is_zero));
}

// conditions

#[test]
fn sp_examples() {
    let ch = Checker::exact();
    assert!(ch.check_sp(&solution_one(Some(ScalarExpr::zero())).flip).pass);
    let id = Mat::<ScalarExpr>::identity(4);
    assert!(ch.check_sp(&id.scale(&-ScalarExpr::one())).pass);
    let c = ch.check_sp(&id);
    assert!(!c.pass);
    assert_eq!(c.residual, ch.projector().scale(&ScalarExpr::int(2)));
}

#[test]
fn symmetry_examples() {
    let ch = Checker::exact();
    assert!(ch.check_symmetry(&solution_one(None).metric).pass);
    assert!(ch.check_symmetry(&Mat::identity(2)).pass);
    let zero = Mat::<ScalarExpr>::zeros(2, 2);
    assert!(ch.check_symmetry(&zero).pass);
    let rep = ch.check_all(&classical_flip(), &zero, None);
    assert!(rep.degenerate_metric);
}

#[test]
fn compat_examples() {
    let ch = Checker::exact();
    for e in [solution_one(Some(ScalarExpr::zero())), solution_two()] {
        assert!(ch.check_compat(&e.flip, &e.metric).pass, "{}", e.label());
    }
    assert!(ch.check_compat(&classical_flip(), &Mat::identity(2)).pass);
}

#[test]
fn reality_examples() {
    let ch = Checker::exact();
    let one = solution_one(Some(ScalarExpr::zero()));
    assert!(ch.check_flip_reality(&one.flip).pass);
    assert!(ch.check_metric_reality(&one.flip, &one.metric).pass);
    let three = solution_three();
    assert!(ch.check_flip_reality(&three.flip).pass);
    assert!(!ch.check_metric_reality(&three.flip, &three.metric).pass);

    let mut single = Mat::<ScalarExpr>::zeros(4, 4);
    single[(0, 0)] = ScalarExpr::q() * ScalarExpr::int(2);
    assert!(!ch.check_flip_reality(&single).pass);

    let formal = solution_one(None);
    let c = ch.check_metric_reality(&formal.flip, &formal.metric);
    assert!(!c.pass);
    for x in c.residual.entries().filter(|x| !x.is_zero()) {
        assert!(x.subs(Var::Z, &ScalarExpr::zero()).unwrap().is_zero());
    }
}

#[test]
fn braid_and_tau_examples() {
    let ch = Checker::exact();
    assert!(ch.check_braid(&solution_one(Some(ScalarExpr::zero())).flip).pass);
    assert!(!ch.check_braid(&solution_two().flip).pass);
    assert!(ch.check_braid(&degenerate_solution(None).unwrap().flip).pass);

    let e = solution_one(Some(ScalarExpr::zero()));
    let t = Mat::from_rows(vec![
        vec![s("1+q"), s("0"), s("0"), s("0")],
        vec![s("0"), s("2"), s("0"), s("0")],
        vec![s("0"), s("0"), s("2"), s("0")],
        vec![s("0"), s("0"), s("0"), s("1+q^(-1)")],
    ]);
    let (c, invertible) = ch.check_tau(&e.flip, &t);
    assert!(c.pass && invertible);
}

#[test]
fn numeric_checker_agrees() {
    let at = UnitEval::new(0.37, 0.0, 0.0).unwrap();
    let e = solution_one(Some(ScalarExpr::zero()));
    let f = e.flip.try_map(|x| x.eval(&at)).unwrap();
    let g = e.metric.try_map(|x| x.eval(&at)).unwrap();
    let rep = qplane::Checker64::new(at.q()).check_all(&f, &g, None);
    assert!(rep.all_pass());
    for k in ConditionKind::SIX {
        assert_eq!(rep.passes(k), Some(true), "{k}");
    }
}

// geometry

#[test]
fn patching_ratios_frozen() {
    let p = patching_lambda().unwrap();
    assert!(p.reproduces_frame);
    assert_eq!(p.ratio, [ScalarExpr::q_half_pow(-3), ScalarExpr::q_half_pow(-1)]);
}

#[test]
fn rhat_factors_frozen() {
    let r = rhat_toolkit();
    assert!(r.braid && r.decomposition && r.projector_same_relations);
    assert!(!r.projector_entrywise);
    assert_eq!(r.rrr_factors, [Some(ScalarExpr::q()), Some(ScalarExpr::q_pow(-1))]);
    assert_eq!(r.rrr_trace, [true, true]);
    assert_eq!(r.flips[0].conformal_factor, Some(ScalarExpr::q_pow(-3)));
    assert_eq!(r.flips[1].conformal_factor, Some(ScalarExpr::q_pow(3)));
    assert!(r.flips.iter().all(|f| f.holds_up_to_factor()));
}

#[test]
fn rhat_flips_are_flat() {
    for plus in [true, false] {
        assert!(curvature(&rhat_solution(plus).flip).is_zero());
    }
}

#[test]
fn flat_limit_of_solution_one() {
    let lim = curvature_limit_q1(&curvature(&solution_one(Some(ScalarExpr::zero())).flip)).unwrap();
    assert!(lim.iter().flatten().all(Zero::is_zero));
}

// solver

#[test]
fn solver_bases_frozen() {
    let ch = Checker::exact();
    let one = solve_metric(&ch, &solution_one(Some(ScalarExpr::zero())).flip);
    assert_eq!(one.basis.len(), 1);
    assert_eq!(strings(&one.basis[0]), ["0", "1", "r^4", "0"]);
    let displayed_g = [ScalarExpr::zero(), ScalarExpr::q_half_pow(1), ScalarExpr::q_half_pow(-1), ScalarExpr::zero()];
    assert!(in_span(&one.basis, &displayed_g));

    let three = solve_metric(&ch, &solution_three().flip);
    assert_eq!(strings(&three.basis[0]), ["1", "0", "0", "1"]);

    let classical = solve_metric(&ch, &classical_flip());
    assert_eq!(classical.dimension(), 3);
    for w in &classical.basis {
        assert!(ch.check_symmetry(&unflatten_metric(w)).pass);
    }

    assert_eq!(solve_metric(&ch, &Mat::zeros(4, 4)).dimension(), 0);
    assert_eq!(solve_metric(&ch, &ch.tau_two_flip()).dimension(), 0);

    let audit = dimension_audit(&ch, &solution_two().flip);
    assert_eq!((audit.equations, audit.unknowns, audit.rank, audit.dimension), (17, 4, 3, 1));
}

// rep

#[test]
fn representation_examples() {
    let p = RepParams64::new(0.25, 0.5).unwrap();
    let k = Complex64::new(1.0, 0.0);
    let ket = Ket64::basis(k).unwrap();
    let shifted = apply_v(&p, &ket);
    assert_eq!(shifted.terms().len(), 1);
    assert!((shifted.terms()[0].0 - (k + Complex64::new(2.0 * PI * 0.25, 0.0))).norm() < 1e-15);

    let uu = apply_u(&p, &apply_u(&p, &ket));
    let phase = Complex64::new(0.0, 2.0 * 0.5).exp();
    assert!((uu.amplitude(k) - phase).norm() < 1e-14);
    assert!(commutation_residual(&p, &ket) < 1e-12);
    assert!(RepParams64::new(-1.0, 0.5).is_err());
}

// jordan

#[test]
fn jordan_frozen() {
    assert!(check_primed_commutator().unwrap().holds());
    let g = check_primed_generators().unwrap();
    let fit = g.fit.clone().unwrap();
    assert_eq!(fit, [s("1-q^(-1)"), s("-2*h/q"), s("0"), s("0")]);
    assert!(g.h0_pole);
    assert!(g.jordanian_limit());
    assert!(!g.commutator.is_zero());
}
