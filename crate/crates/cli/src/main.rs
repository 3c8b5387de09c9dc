use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use qplane::geometry::catalog::{self, SolutionEntry};
use qplane::geometry::connection::{connection_from_flip, curvature, curvature_limit_q1};
use qplane::jordan::{check_lobachevsky_limit, check_primed_commutator, check_primed_generators};
use qplane::rep::{commutation_residual, Ket, RepParams};
use qplane::solver::solve_metric;
use qplane::{Checker, ConditionReport, Mat, ScalarExpr, SolutionName};

mod io;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or files; exit 2.
    Input(String),
    /// A check did not come out as expected; exit 1.
    Mismatch(String),
}

impl From<qplane::GeometryError> for CliError {
    fn from(e: qplane::GeometryError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "qplane", version, about = "Checks flips, metrics and curvature on the real quantum plane")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Debug)]
struct Source {
    /// Catalog entry: I, II, III, RHAT_PLUS, RHAT_MINUS, DEGENERATE
    #[arg(long, conflicts_with = "flip")]
    solution: Option<String>,

    /// Value of zeta for I and DEGENERATE (formal when omitted)
    #[arg(long, requires = "solution")]
    zeta: Option<String>,

    /// Flip file: {"flip": [[...4 strings...] x4]}
    #[arg(long)]
    flip: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the condition checks
    Verify {
        #[command(flatten)]
        source: Source,
        /// Metric file: {"metric": [[s, s], [s, s]]}
        #[arg(long, requires = "flip")]
        metric: Option<PathBuf>,
    },
    /// Connection and curvature of a flip
    Curvature {
        #[command(flatten)]
        source: Source,
    },
    /// Metrics compatible with a flip
    SolveMetric {
        #[command(flatten)]
        source: Source,
    },
    /// Commutation residual of the numeric representation
    RepCheck {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        /// Ket label as RE,IM
        #[arg(long, default_value = "1,0")]
        k: String,
    },
    /// Jordanian-limit identities
    JordanCheck,
    /// Built-in solutions
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Dump {
        name: String,
        #[arg(long)]
        zeta: Option<String>,
    },
}

fn parse_zeta(z: &Option<String>) -> Result<Option<ScalarExpr>, CliError> {
    z.as_deref()
        .map(|t| ScalarExpr::parse(t).map_err(|e| CliError::Input(format!("--zeta `{t}`: {e}"))))
        .transpose()
}

fn lookup(name: &str, zeta: &Option<String>) -> Result<SolutionEntry, CliError> {
    let name: SolutionName = name.parse()?;
    Ok(catalog::solution(name, parse_zeta(zeta)?)?)
}

enum Resolved {
    Entry(Box<SolutionEntry>),
    Flip(Mat<ScalarExpr>),
}

impl Resolved {
    fn flip(&self) -> &Mat<ScalarExpr> {
        match self {
            Resolved::Entry(e) => &e.flip,
            Resolved::Flip(f) => f,
        }
    }

    fn label(&self) -> Value {
        match self {
            Resolved::Entry(e) => Value::String(e.label()),
            Resolved::Flip(_) => Value::Null,
        }
    }
}

fn resolve(src: &Source) -> Result<Resolved, CliError> {
    match (&src.solution, &src.flip) {
        (Some(name), _) => Ok(Resolved::Entry(Box::new(lookup(name, &src.zeta)?))),
        (None, Some(path)) => Ok(Resolved::Flip(io::read_flip(path)?)),
        (None, None) => Err(CliError::Input("give --solution or --flip".into())),
    }
}

fn condition_rows(rep: &ConditionReport<ScalarExpr>) -> Vec<Value> {
    rep.entries
        .iter()
        .map(|c| {
            json!({
                "condition": c.kind.name(),
                "pass": c.pass,
                "residual": io::matrix_json(&c.residual),
            })
        })
        .collect()
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        Format::Text => text(),
    };
    // a closed pipe downstream is not an error for us
    let _ = std::io::stdout().write_all(body.as_bytes());
}

fn cmd_verify(format: Format, source: &Source, metric: &Option<PathBuf>) -> Result<(), CliError> {
    let ch = Checker::exact();
    let resolved = resolve(source)?;
    let (rep, expected) = match &resolved {
        Resolved::Entry(e) => (ch.check_all(&e.flip, &e.metric, e.tau.as_ref()), Some(e.expected.clone())),
        Resolved::Flip(s) => {
            let path = metric
                .as_ref()
                .ok_or_else(|| CliError::Input("--flip needs --metric".into()))?;
            (ch.check_all(s, &io::read_metric(path)?, None), None)
        }
    };
    let mut mismatches = Vec::new();
    for c in &rep.entries {
        let want = match &expected {
            Some(exp) => exp.get(&c.kind).copied().flatten(),
            None => Some(true),
        };
        if want.is_some_and(|w| w != c.pass) {
            mismatches.push(c.kind.name());
        }
    }
    let expected_json = expected.as_ref().map(|exp| {
        Value::Object(
            exp.iter()
                .map(|(k, v)| (k.name().to_string(), v.map(Value::Bool).unwrap_or(Value::Null)))
                .collect(),
        )
    });
    let value = json!({
        "solution": resolved.label(),
        "reports": condition_rows(&rep),
        "degenerate_metric": rep.degenerate_metric,
        "tau_invertible": rep.tau_invertible,
        "expected": expected_json,
        "matches": mismatches.is_empty(),
    });
    emit(format, &value, || {
        let mut out = String::new();
        if let Resolved::Entry(e) = &resolved {
            out.push_str(&format!("solution {}\n", e.label()));
        }
        for c in &rep.entries {
            out.push_str(&format!("{:<7} {}\n", c.kind.name(), if c.pass { "pass" } else { "fail" }));
        }
        out.push_str(&format!("matches {}\n", mismatches.is_empty()));
        out
    });
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("unexpected outcome for {}", mismatches.join(", "))))
    }
}

fn cmd_curvature(format: Format, source: &Source) -> Result<(), CliError> {
    let resolved = resolve(source)?;
    let s = resolved.flip();
    let conn = connection_from_flip(s);
    let curv = curvature(s);
    let limit = match curvature_limit_q1(&curv) {
        Ok(l) => json!({ "finite": true, "forms": io::grid_json(&l) }),
        Err(e) => json!({ "finite": false, "error": e.to_string() }),
    };
    let mut mismatch = Vec::new();
    if let Resolved::Entry(e) = &resolved {
        if e.expected_connection.as_ref().is_some_and(|w| *w != conn.forms) {
            mismatch.push("connection");
        }
        if e.expected_curvature.as_ref().is_some_and(|w| *w != curv.forms) {
            mismatch.push("curvature");
        }
    }
    let value = json!({
        "solution": resolved.label(),
        "connection": io::grid_json(&conn.forms),
        "curvature": io::grid_json(&curv.forms),
        "flat": curv.is_zero(),
        "limit_q1": limit,
        "matches": mismatch.is_empty(),
    });
    emit(format, &value, || {
        let mut out = String::new();
        for i in 0..2 {
            for j in 0..2 {
                out.push_str(&format!("omega[{}][{}] = {}\n", i + 1, j + 1, conn.forms[i][j]));
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                out.push_str(&format!("Omega[{}][{}] = {}\n", i + 1, j + 1, curv.forms[i][j]));
            }
        }
        out.push_str(&format!("flat {}\n", curv.is_zero()));
        out
    });
    if mismatch.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("{} differs from the catalog", mismatch.join(" and "))))
    }
}

fn cmd_solve(format: Format, source: &Source) -> Result<(), CliError> {
    let resolved = resolve(source)?;
    let ch = Checker::exact();
    let space = solve_metric(&ch, resolved.flip());
    let rays: Vec<Value> = space
        .real_rays
        .iter()
        .map(|r| {
            json!({
                "basis_index": r.basis_index,
                "scale": r.scale.to_string(),
                "metric": io::vector_json(&r.metric),
                "nondegenerate": r.nondegenerate,
            })
        })
        .collect();
    let value = json!({
        "dimension": space.dimension(),
        "rank": space.rank,
        "basis": space.basis.iter().map(|b| io::vector_json(b)).collect::<Vec<_>>(),
        "real_rays": rays,
    });
    emit(format, &value, || {
        let mut out = format!("dimension {}\n", space.dimension());
        for b in &space.basis {
            let parts: Vec<String> = b.iter().map(ToString::to_string).collect();
            out.push_str(&format!("basis ({})\n", parts.join(", ")));
        }
        for r in &space.real_rays {
            let parts: Vec<String> = r.metric.iter().map(ToString::to_string).collect();
            out.push_str(&format!("real ({})\n", parts.join(", ")));
        }
        out
    });
    Ok(())
}

fn parse_k(k: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Input(format!("--k `{k}`: expected RE,IM"));
    let (re, im) = k.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

const REP_TOL: f64 = 1e-12;

fn cmd_rep(format: Format, alpha: f64, beta: f64, k: &str) -> Result<(), CliError> {
    let p = RepParams::new(alpha, beta).map_err(|e| CliError::Input(e.to_string()))?;
    let ket = Ket::basis(parse_k(k)?).map_err(|e| CliError::Input(e.to_string()))?;
    let residual = commutation_residual(&p, &ket);
    let q = p.q();
    let pass = residual < REP_TOL;
    let value = json!({
        "alpha": alpha,
        "beta": beta,
        "gamma": p.gamma(),
        "q": [q.re, q.im],
        "residual": residual,
        "pass": pass,
    });
    emit(format, &value, || format!("residual {residual:e}\npass {pass}\n"));
    if pass {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("commutation residual {residual:e}")))
    }
}

fn cmd_jordan(format: Format) -> Result<(), CliError> {
    let input = |e: qplane::ncpoly::NcError| CliError::Input(e.to_string());
    let comm = check_primed_commutator().map_err(input)?;
    let gens = check_primed_generators().map_err(input)?;
    let lim = check_lobachevsky_limit().map_err(|e| CliError::Input(e.to_string()))?;
    let fit = |f: &Option<[ScalarExpr; 4]>| f.as_ref().map(|f| io::vector_json(f)).unwrap_or(Value::Null);
    let value = json!({
        "commutator": {
            "pass": comm.holds(),
            "residual": comm.residual.render(),
        },
        "generators": {
            "u_prime": gens.u_prime.render(),
            "v_prime": gens.v_prime.render(),
            "commutator": gens.commutator.render(),
            "fit": fit(&gens.fit),
            "fit_at_q1": fit(&gens.fit_at_one),
            "jordanian_limit": gens.jordanian_limit(),
            "h0_pole": gens.h0_pole,
        },
        "limits": {
            "transformed": io::vector_json(&lim.transformed.coeffs),
            "displayed": io::vector_json(&lim.displayed.coeffs),
            "residual": io::vector_json(&lim.residual),
            "agrees_at_q1": lim.agrees_at_one,
            "lobachevsky": lim.lobachevsky.holds,
            "light_cone": lim.light_cone.holds,
            "light_cone_unprimed": lim.light_cone_unprimed,
        },
    });
    let ok = comm.holds() && gens.jordanian_limit() && lim.holds();
    emit(format, &value, || {
        format!(
            "commutator {}\ngenerators {}\nlimits {}\n",
            comm.holds(),
            gens.jordanian_limit(),
            lim.holds()
        )
    });
    if ok {
        Ok(())
    } else {
        Err(CliError::Mismatch("jordanian checks failed".into()))
    }
}

fn cmd_catalog(format: Format, action: &CatalogAction) -> Result<(), CliError> {
    match action {
        CatalogAction::List => {
            let names: Vec<Value> = SolutionName::ALL
                .iter()
                .map(|n| json!({ "name": n.as_str(), "takes_zeta": n.takes_zeta() }))
                .collect();
            emit(format, &Value::Array(names), || {
                SolutionName::ALL.iter().map(|n| format!("{n}\n")).collect()
            });
        }
        CatalogAction::Dump { name, zeta } => {
            let e = lookup(name, zeta)?;
            let value = json!({
                "solution": e.label(),
                "flip": io::matrix_json(&e.flip),
                "metric": io::matrix_json(&e.metric),
                "tau": e.tau.as_ref().map(io::matrix_json),
            });
            emit(format, &value, || {
                let mut out = format!("{}\nflip\n", e.label());
                for r in e.flip.to_rows() {
                    let parts: Vec<String> = r.iter().map(ToString::to_string).collect();
                    out.push_str(&format!("  {}\n", parts.join("  ")));
                }
                out.push_str("metric\n");
                for r in e.metric.to_rows() {
                    let parts: Vec<String> = r.iter().map(ToString::to_string).collect();
                    out.push_str(&format!("  {}\n", parts.join("  ")));
                }
                out
            });
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let f = cli.format;
    match &cli.command {
        Command::Verify { source, metric } => cmd_verify(f, source, metric),
        Command::Curvature { source } => cmd_curvature(f, source),
        Command::SolveMetric { source } => cmd_solve(f, source),
        Command::RepCheck { alpha, beta, k } => cmd_rep(f, *alpha, *beta, k),
        Command::JordanCheck => cmd_jordan(f),
        Command::Catalog { action } => cmd_catalog(f, action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Mismatch(msg)) => {
            eprintln!("qplane: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("qplane: {msg}");
            ExitCode::from(2)
        }
    }
}
