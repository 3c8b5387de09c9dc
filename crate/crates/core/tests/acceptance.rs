//! One PASS/FAIL line per acceptance criterion.
//!
//! Runs without the libtest harness so the report is always printed. The
//! process exits non-zero when any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::Zero;
use qplane::conditions::classical_flip;
use qplane::forms::{
    c_matrix, check_wz_relations, check_xy_relations, lambda_relation, volume_forms, wedge_projector,
    LightConeQ,
};
use qplane::geometry::catalog::{all_entries, degenerate_solution, solution_one, solution_three, solution_two};
use qplane::geometry::rhat::rhat_toolkit;
use qplane::geometry::{connection_from_flip, curvature, curvature_limit_q1, GeometryError};
use qplane::jordan::{check_lobachevsky_limit, check_primed_commutator, check_primed_generators};
use qplane::rep::{commutation_residual, distance, Ket64, RepParams64};
use qplane::solver::{solve_metric, tau_two_no_go};
use qplane::tensor::{flatten_metric, unflatten_metric};
use qplane::{
    Calculus, Checker, ConditionKind, Mat, NCElement, OneForm, ScalarExpr, SolutionEntry, StarConvention,
    TwoForm, UnitEval, Var,
};

/// Names of the sub-checks that failed.
#[derive(Default)]
struct Outcome {
    failed: Vec<String>,
}

impl Outcome {
    fn check(&mut self, name: &str, ok: bool) {
        if !ok {
            self.failed.push(name.to_string());
        }
    }
}

fn s(t: &str) -> ScalarExpr {
    ScalarExpr::parse(t).unwrap()
}

/// `q^n` for pure powers, the raw expression otherwise.
fn in_q(e: &ScalarExpr) -> String {
    (-8..=8)
        .find(|&n| *e == ScalarExpr::q_pow(n))
        .map_or_else(|| e.to_string(), |n| format!("q^{n}"))
}

fn opt_in_q(e: &Option<ScalarExpr>) -> String {
    e.as_ref().map_or("none".into(), in_q)
}

fn uv_zero() -> NCElement {
    NCElement::uv_scalar(ScalarExpr::zero())
}

fn report(e: &SolutionEntry) -> qplane::ConditionReport<ScalarExpr> {
    Checker::exact().check_all(&e.flip, &e.metric, e.tau.as_ref())
}

fn pattern(out: &mut Outcome, e: &SolutionEntry, pass: &[ConditionKind], fail: &[ConditionKind]) {
    let rep = report(e);
    for k in pass {
        out.check(&format!("{k} passes"), rep.passes(*k) == Some(true));
    }
    for k in fail {
        out.check(&format!("{k} fails"), rep.passes(*k) == Some(false));
    }
}

fn curvature_is(e: &SolutionEntry, want: &[[TwoForm; 2]; 2]) -> bool {
    curvature(&e.flip).forms == *want
}

fn lambdas() -> [NCElement; 2] {
    Calculus::uv().lambdas().clone()
}

fn two_forms(f: impl Fn(usize, usize) -> NCElement) -> [[TwoForm; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| TwoForm::new(f(i, j))))
}

fn one_forms(f: impl Fn(usize, usize) -> OneForm) -> [[OneForm; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| f(i, j)))
}

fn criterion_1(out: &mut Outcome) {
    use ConditionKind::*;
    let e = solution_one(Some(ScalarExpr::zero()));
    pattern(out, &e, &ConditionKind::SIX, &[]);
    let theta = Calculus::uv().theta();
    let want = one_forms(|i, j| match (i, j) {
        (0, 0) => theta.scale(&s("1-q")),
        (1, 1) => theta.scale(&s("-(1-q)/q")),
        _ => OneForm::zero(Calculus::uv().presentation()),
    });
    out.check("connection", connection_from_flip(&e.flip).forms == want);
    out.check("flat", curvature(&e.flip).is_zero());
    out.check("tau", report(&e).passes(Tau) == Some(true));
}

fn criterion_2(out: &mut Outcome) {
    use ConditionKind::*;
    let e = solution_one(None);
    let rep = report(&e);
    pattern(out, &e, &[Sp, Pg, Compat], &[]);
    for kind in [Braid, HerF] {
        let res = &rep.get(kind).unwrap().residual;
        let nonzero: Vec<_> = res.entries().filter(|x| !x.is_zero()).collect();
        out.check(&format!("{kind} residual nonzero"), !nonzero.is_empty());
        out.check(
            &format!("{kind} residual polynomial in zeta"),
            nonzero.iter().all(|x| x.contains_var(Var::Z) && x.denom().degree_in(Var::Z) == 0),
        );
        let vanishes = res
            .entries()
            .all(|x| x.subs(Var::Z, &ScalarExpr::zero()).map(|v| v.is_zero()).unwrap_or(false));
        out.check(&format!("{kind} residual vanishes at zeta=0"), vanishes);
    }
}

fn criterion_3(out: &mut Outcome) {
    use ConditionKind::*;
    let e = solution_two();
    pattern(out, &e, &[Sp, Js, Compat, Pg], &[HerF, Braid]);
    let [l1, _] = lambdas();
    let coeff = s("-(q^2-1)*q^(-3)*(1+q+q^2)");
    let want = two_forms(|i, j| if (i, j) == (1, 0) { (&l1 * &l1).scale(&coeff) } else { uv_zero() });
    out.check("curvature", curvature_is(&e, &want));
    let pole = matches!(
        curvature_limit_q1(&curvature(&e.flip)),
        Err(GeometryError::PoleAtCommutativePoint { .. })
    );
    out.check("pole at q=1", pole);
}

fn criterion_4(out: &mut Outcome) {
    use ConditionKind::*;
    let e = solution_three();
    pattern(out, &e, &[Sp, Pg, Compat, Js], &[HerF, Braid]);
    let c = connection_from_flip(&e.flip);
    out.check("connection", Some(&c.forms) == e.expected_connection.as_ref());
    out.check("curvature", Some(&curvature(&e.flip).forms) == e.expected_curvature.as_ref());
    let w = ScalarExpr::var(Var::U).powi(-2) + ScalarExpr::var(Var::V).powi(-2);
    let want = [[ScalarExpr::zero(), -w.clone()], [w, ScalarExpr::zero()]];
    let lim = curvature_limit_q1(&curvature(&e.flip));
    out.check("limit at q=1", matches!(lim, Ok(l) if l == want));
}

fn criterion_5(out: &mut Outcome) {
    let r = rhat_toolkit();
    out.check("braid", r.braid);
    out.check("P = P_a(q^-1) entrywise", r.projector_entrywise);
    out.check("same 2-form relations as P_a(q^-1)", r.projector_same_relations);
    out.check("rrr trace identities", r.rrr_trace.iter().all(|b| *b));
    out.check(
        &format!(
            "rrr conformal factors {}, {} (expected {}, {})",
            opt_in_q(&r.rrr_factors[0]),
            opt_in_q(&r.rrr_factors[1]),
            in_q(&r.rrr_expected[0]),
            in_q(&r.rrr_expected[1]),
        ),
        r.rrr_conformal_holds(),
    );
    for f in &r.flips {
        let tag = if f.plus { "+" } else { "-" };
        out.check(
            &format!(
                "flip{tag} conformal factor {} (expected {})",
                opt_in_q(&f.conformal_factor),
                in_q(&f.expected_factor)
            ),
            f.factor_matches(),
        );
        out.check(&format!("flip{tag} Sg = -g"), f.antisymmetric);
        out.check(&format!("flip{tag} j-s"), f.js);
        out.check(&format!("flip{tag} her-f"), f.herf);
        out.check(&format!("flip{tag} flat"), f.curvature_zero);
    }
}

fn criterion_6(out: &mut Outcome) {
    use ConditionKind::*;
    let e = degenerate_solution(None).unwrap();
    let rep = report(&e);
    out.check("braid", rep.passes(Braid) == Some(true));
    out.check("tau relation", rep.passes(Tau) == Some(true));
    out.check("T singular", rep.tau_invertible == Some(false));
    out.check("Pg", rep.passes(Pg) == Some(true));
    let vg = flatten_metric(&e.metric);
    out.check("(1+S)g = 0", Mat::identity(4).add(&e.flip).mul(&vg).is_zero());
    let [l1, l2] = lambdas();
    let coeff = s("(q^2-1)/q");
    let want = two_forms(|i, j| if i == j { (&l1 * &l2).scale(&coeff) } else { uv_zero() });
    out.check("curvature", curvature_is(&e, &want));
}

fn criterion_7(out: &mut Outcome) {
    out.check("no nondegenerate hermitian metric", tau_two_no_go(&Checker::exact()));
}

fn criterion_8(out: &mut Outcome) {
    let c = Calculus::uv();
    let q = ScalarExpr::q();
    let p = wedge_projector(&q);
    out.check("P^2 = P", p.mul(&p) == p);
    let cm = c_matrix(&p);
    out.check("C^2 = 1", cm.mul(&cm) == Mat::identity(4));
    let theta = c.theta();
    out.check("d theta = 0", c.d1(&theta).map(|t| t.is_zero()).unwrap_or(false));
    out.check("theta^2 = 0", c.wedge(&theta, &theta).map(|t| t.is_zero()).unwrap_or(false));

    let mut rng = common::rng(8);
    let d2 = (0..50).all(|_| {
        let f = common::random_element(&mut rng, 3);
        c.d0(&f).and_then(|a| c.d1(&a)).map(|t| t.is_zero()).unwrap_or(false)
    });
    out.check("d^2 = 0 on 50 random elements", d2);

    match check_wz_relations() {
        Ok(rels) => {
            for r in rels.iter().filter(|r| !r.holds()) {
                out.check(&format!("relation {}", r.name), false);
            }
            out.check("relations present", !rels.is_empty());
        }
        Err(e) => out.check(&format!("relations: {e}"), false),
    }
    out.check(
        "P lambda lambda = 0",
        lambda_relation(&c).map(|v| v.iter().all(NCElement::is_zero)).unwrap_or(false),
    );

    // dθ^i computed from θ1 = q^-1 v u^-1 du, θ2 = u v^-1 dv, against the
    // structure elements.
    let u = NCElement::u();
    let v = NCElement::v();
    let f1 = (&v * &u.powi(-1).unwrap()).scale(&q.powi(-1));
    let f2 = &u * &v.powi(-1).unwrap();
    let derived = [
        c.wedge(&c.d0(&f1).unwrap(), &c.d0(&u).unwrap()).unwrap(),
        c.wedge(&c.d0(&f2).unwrap(), &c.d0(&v).unwrap()).unwrap(),
    ];
    let [l1, l2] = lambdas();
    let k = s("q^(-1)-1");
    let ce = c.structure_elements();
    out.check("C^1_12", ce[0][0][1] == l2.scale(&k));
    out.check("C^2_12", ce[1][0][1] == l1.scale(&k));
    out.check("d theta^i from the structure elements", (0..2).all(|i| c.dtheta(i) == derived[i]));

    match volume_forms() {
        Ok((th, dudv)) => {
            let ratio = match (th.c.as_monomial(), dudv.c.as_monomial()) {
                (Some((a, 0, 0)), Some((b, 0, 0))) => b.checked_div(&a).map_or("?".into(), |r| in_q(&r)),
                _ => "?".into(),
            };
            out.check(&format!("volume: du dv = {ratio} theta1 theta2"), th == dudv)
        }
        Err(e) => out.check(&format!("volume: {e}"), false),
    }
    match check_xy_relations(LightConeQ::AsStated) {
        Ok(x) => {
            let alt = check_xy_relations(LightConeQ::Conjugate).map(|a| a.holds_with_forms_reading());
            let note = if matches!(alt, Ok(true)) { " (holds with conjugate Q, componentwise)" } else { "" };
            out.check(&format!("(x-y) quadratic relation{note}"), x.quadratic.is_zero());
            out.check(&format!("(x-y) mixed relation{note}"), x.mixed.iter().flatten().all(OneForm::is_zero));
            out.check("(x-y) 2-form relation", x.forms.is_zero());
        }
        Err(e) => out.check(&format!("(x-y): {e}"), false),
    }
}

fn criterion_9(out: &mut Outcome) {
    let c = Calculus::uv();
    for (i, l) in c.lambdas().iter().enumerate() {
        out.check(&format!("lambda{} anti-hermitian", i + 1), l.star(StarConvention::XyInduced) == -l);
    }
    let mut rng = common::rng(9);
    let real = (0..20).all(|_| {
        let f = common::random_element(&mut rng, 3);
        c.reald_residual(&f).map(|r| r.is_zero()).unwrap_or(false)
    });
    out.check("(df)* = d(f*) on 20 random elements", real);

    let ch = Checker::exact();
    let mut entries = all_entries();
    entries.push(solution_one(None));
    for e in &entries {
        let (s1, g1) = (&e.flip, &e.metric);
        let (s2, g2) = (s1.star(), g1.star());
        out.check(&format!("{} star involutive", e.label()), s2.star() == *s1 && g2.star() == *g1);
        out.check(
            &format!("{} j-s invariant under star", e.label()),
            ch.check_flip_reality(s1).pass == ch.check_flip_reality(&s2).pass,
        );
        out.check(
            &format!("{} her-f invariant under star", e.label()),
            ch.check_metric_reality(s1, g1).pass == ch.check_metric_reality(&s2, &g2).pass,
        );
    }
}

fn criterion_10(out: &mut Outcome) {
    match check_primed_commutator() {
        Ok(r) => out.check("[l'1, l'2] = l'1 + (1-q) l'1 l'2", r.holds()),
        Err(e) => out.check(&format!("commutator: {e}"), false),
    }
    match check_primed_generators() {
        Ok(r) => {
            out.check("[u', v'] -> -2h v' at q=1", r.jordanian_limit());
            out.check("h0 diverges at q=1", r.h0_pole);
        }
        Err(e) => out.check(&format!("generators: {e}"), false),
    }
    match check_lobachevsky_limit() {
        Ok(r) => {
            out.check("(a) line element agrees at q=1", r.agrees_at_one);
            out.check("(b) Lobachevsky leading term", r.lobachevsky.holds);
            out.check("(c) -2 du' dv' leading term", r.light_cone.holds && r.light_cone_unprimed);
        }
        Err(e) => out.check(&format!("limit: {e}"), false),
    }
}

fn criterion_11(out: &mut Outcome) {
    let grid = [0.13, 0.37, 0.5, 0.71, 1.9];
    let ks = [(0.2, 0.0), (1.0, 0.0), (1.0, 0.5), (3.7, -1.2), (10.0, 2.0)];
    let mut worst: f64 = 0.0;
    let mut points = 0;
    for &a in &grid {
        for &b in &grid {
            let Ok(p) = RepParams64::new(a, b) else { continue };
            for &(re, im) in &ks {
                let ket = Ket64::basis(Complex64::new(re, im)).unwrap();
                worst = worst.max(commutation_residual(&p, &ket));
                points += 1;
            }
        }
    }
    out.check(&format!("commutation residual {worst:.1e} over {points} points"), points > 0 && worst < 1e-12);

    let c = |x: f64| Complex64::new(x, 0.0);
    let id = [[c(1.0), c(0.0)], [c(0.0), c(1.0)]];
    let euclid = [(3.0, 4.0), (-1.5, 0.25), (0.0, 2.0)]
        .iter()
        .all(|&(a, b)| (distance(&id, &[c(a), c(b)]) - c(a * a + b * b)).norm() < 1e-12);
    out.check("identity metric gives a^2 + b^2", euclid);

    let e = solution_one(Some(ScalarExpr::zero()));
    let at = UnitEval::commutative(0.0, 0.0);
    match e.metric.try_map(|x| x.eval(&at)) {
        Ok(g) => {
            let g = [[g[(0, 0)], g[(0, 1)]], [g[(1, 0)], g[(1, 1)]]];
            let cases = [((1.0, 1.0), 2.0), ((1.0, 0.0), 0.0), ((0.0, 1.0), 0.0), ((1.0, -1.0), -2.0)];
            let ok = cases
                .iter()
                .all(|&((a, b), want)| (distance(&g, &[c(a), c(b)]) - c(want)).norm() < 1e-12);
            out.check("Solution I light-cone values at q=1", ok);
        }
        Err(err) => out.check(&format!("evaluation: {err}"), false),
    }
}

fn criterion_12(out: &mut Outcome) {
    let ch = Checker::exact();
    let mut flips: Vec<(String, Mat<ScalarExpr>)> = all_entries().into_iter().map(|e| (e.label(), e.flip)).collect();
    flips.push(("classical".into(), classical_flip()));
    for (label, s) in &flips {
        let space = solve_metric(&ch, s);
        for (n, w) in space.basis.iter().enumerate() {
            let g = unflatten_metric(w);
            out.check(&format!("{label} basis {n} compat"), ch.check_compat(s, &g).pass);
            out.check(&format!("{label} basis {n} symmetry"), ch.check_symmetry(&g).pass);
        }
    }
}

type Criterion = (u32, &'static str, Option<Duration>, fn(&mut Outcome));

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "Solution I at zeta=0", Some(Duration::from_secs(1)), criterion_1),
        (2, "Solution I with formal zeta", None, criterion_2),
        (3, "Solution II", None, criterion_3),
        (4, "Solution III", None, criterion_4),
        (5, "R-hat flips", None, criterion_5),
        (6, "degenerate zeta solution", None, criterion_6),
        (7, "tau = 2 no-go", None, criterion_7),
        (8, "calculus suite", Some(Duration::from_secs(5)), criterion_8),
        (9, "reality suite", None, criterion_9),
        (10, "jordanian limit", None, criterion_10),
        (11, "representation (numeric)", None, criterion_11),
        (12, "solver round-trip", None, criterion_12),
    ];
    let mut failures = 0;
    for (n, name, budget, run) in criteria {
        let mut out = Outcome::default();
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| run(&mut out)));
        let elapsed = start.elapsed();
        if let Err(p) = result {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            out.failed.push(format!("panicked: {msg}"));
        }
        if let Some(b) = budget {
            if elapsed > b {
                out.failed.push(format!("runtime over {}s", b.as_secs()));
            }
        }
        let status = if out.failed.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {n:>2} {name} ({:.2}s)", elapsed.as_secs_f64());
        if !out.failed.is_empty() {
            failures += 1;
            line.push_str(": ");
            line.push_str(&out.failed.join("; "));
        }
        println!("{line}");
    }
    println!("{} of 12 criteria pass", 12 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
