mod args;
mod charops;
mod output;
mod series;

use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::Parser;
use hopfchar::character::InfChar;
use hopfchar::control::{self, Handedness, Operator};
use hopfchar::evolution::{self, InfCharCurve, TimePoly};
use hopfchar::growth::{verify_family, Grid};
use hopfchar::hopf::axioms::{check_hopf_axioms, default_scope, CheckScope};
use hopfchar::hopf::{self, degree_limit, HopfAlgebra};
use hopfchar::scalar::{format_rational, parse_rational, Rational};
use hopfchar::{GrowthFamily, TargetAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use args::{Cli, Command, EvolveArgs, OperatorArg, Scope};
use output::{read_json, Output};

/// Whether every check in a run passed.
pub type Verdict = bool;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::env::var("HOPFCHAR_MAX_DEGREE") {
        Ok(v) => match v.trim().parse::<u32>() {
            Ok(n) if n > 0 => hopf::set_degree_limit(Some(n)),
            _ => {
                eprintln!("error: HOPFCHAR_MAX_DEGREE must be a positive integer, got `{v}`");
                return ExitCode::from(2);
            }
        },
        Err(_) => hopf::set_degree_limit(None),
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn instance(name: &str, max_degree: u32) -> Result<Arc<dyn HopfAlgebra>> {
    let h = hopf::instance(name)?;
    let limit = degree_limit(h.as_ref());
    if max_degree > limit {
        bail!("degree {max_degree} exceeds the safety limit {limit} for `{name}` (set HOPFCHAR_MAX_DEGREE to override)");
    }
    Ok(h)
}

fn family(name: &str) -> Result<GrowthFamily> {
    Ok(GrowthFamily::builtin(name)?)
}

pub fn rational(text: &str) -> Result<Rational> {
    parse_rational(text).with_context(|| format!("bad number `{text}`"))
}

pub fn rationals(items: &[String]) -> Result<Vec<Rational>> {
    items.iter().map(|s| rational(s)).collect()
}

fn check_scope(h: &dyn HopfAlgebra, scope: Option<Scope>) -> CheckScope {
    match scope {
        Some(Scope::Generators) => CheckScope::Generators,
        Some(Scope::Basis) => CheckScope::Basis,
        None => default_scope(h),
    }
}

fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Enumerate { hopf, max_degree, basis, output } => {
            let h = instance(&hopf, max_degree)?;
            let degrees: Vec<Value> = (1..=max_degree)
                .map(|n| {
                    let items: Vec<String> = if basis {
                        h.basis(n).iter().map(|m| m.encode()).collect()
                    } else {
                        h.generators(n).iter().map(|g| g.key().to_owned()).collect()
                    };
                    json!({ "degree": n, "count": items.len(), "items": items })
                })
                .collect();
            let report = json!({
                "instance": h.name(),
                "max_degree": max_degree,
                "listing": if basis { "basis" } else { "generators" },
                "degrees": degrees,
            });
            let csv = output::csv_rows(
                ["degree", "count"],
                degrees.iter().map(|d| vec![d["degree"].to_string(), d["count"].to_string()]),
            );
            Output::from(output).emit(&report, Some(csv))?;
            Ok(true)
        }
        Command::Axioms { hopf, max_degree, scope, output } => {
            let h = instance(&hopf, max_degree)?;
            let report = check_hopf_axioms(h.as_ref(), max_degree, check_scope(h.as_ref(), scope));
            Output::from(output).emit(&report, Some(control::write_csv(&report.records)))?;
            Ok(report.passed())
        }
        Command::ControlCheck { hopf, family: fam, k1, k2, max_degree, operator, scope, output } => {
            let h = instance(&hopf, max_degree)?;
            let op = match operator {
                OperatorArg::Coproduct => Operator::Coproduct,
                OperatorArg::Antipode => Operator::Antipode,
            };
            let report = control::operator_ratio(h.as_ref(), op, &family(&fam)?, k1, k2, max_degree, check_scope(h.as_ref(), Some(scope)))?;
            Output::from(output).emit(&report, Some(report.to_csv()))?;
            Ok(report.verdict == control::Boundedness::Bounded)
        }
        Command::RlbCheck { hopf, max_degree, output } => {
            let h = instance(&hopf, max_degree)?;
            let report = control::rlb_check(h.as_ref(), max_degree)?;
            Output::from(output).emit(&report, Some(report.to_csv()))?;
            Ok(report.holds())
        }
        Command::RightHanded { hopf, max_degree, output } => {
            let h = instance(&hopf, max_degree)?;
            let report = control::right_handed_check(h.as_ref(), max_degree)?;
            Output::from(output).emit(&report, None)?;
            Ok(matches!(report.verdict, Handedness::Right | Handedness::Both))
        }
        Command::Evolve(args) => evolve(args),
        Command::Char { op } => charops::run(op),
        Command::Bseries(args) => series::bseries(args),
        Command::Pseries(args) => series::pseries(args),
        Command::Wordseries(args) => series::wordseries(args),
        Command::Counterexample { output } => {
            let report = hopfchar::character::counterexample_demo()?;
            let csv = output::csv_rows(["line"], report.trace.iter().map(|l| vec![l.clone()]));
            Output::from(output).emit(&report, Some(csv))?;
            Ok(report.controlled && report.product_uncontrolled)
        }
        Command::GrowthCheck { family: fam, k_max, n_max, k2_max, output } => {
            if k_max == 0 || k2_max < k_max {
                bail!("need 1 ≤ k-max ≤ k2-max");
            }
            let report = verify_family(&family(&fam)?, Grid { k_max, n_max, k2_max });
            let csv = output::csv_rows(
                ["axiom", "status"],
                report.axioms.iter().map(|a| vec![output::enum_text(&a.axiom), output::enum_text(&a.status)]),
            );
            Output::from(output).emit(&report, Some(csv))?;
            Ok(report.axioms.iter().all(|a| a.passed()))
        }
        Command::Schema { report } => {
            print!("{}", output::schema(report));
            Ok(true)
        }
    }
}

/// Reads η as a time-polynomial curve, accepting constant-valued files.
fn read_eta(v: &Value) -> Result<InfCharCurve> {
    match v.get("B").and_then(Value::as_str) {
        Some(TimePoly::NAME) | None => Ok(InfCharCurve::from_json(v)?),
        Some(_) => Ok(evolution::constant_curve(&InfChar::<Rational>::from_json(v)?)),
    }
}

fn evolve(args: EvolveArgs) -> Result<Verdict> {
    let (eta, source) = match (&args.eta, args.seed) {
        (Some(path), _) => {
            let eta = read_eta(&read_json(path)?)?;
            if let Some(name) = &args.hopf {
                if *name != eta.hopf().name() {
                    bail!("--hopf {name} disagrees with the η file's `{}`", eta.hopf().name());
                }
            }
            (eta, json!({ "file": path.display().to_string() }))
        }
        (None, Some(seed)) => {
            let name = args.hopf.as_deref().context("--seed needs --hopf")?;
            let n = args.max_degree.context("--seed needs --max-degree")?;
            let h = instance(name, n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let values: Vec<_> = h
                .generators_up_to(n)
                .into_iter()
                .map(|g| {
                    let q: i64 = rng.gen_range(1..=8);
                    (g, TimePoly::constant(Rational::new(rng.gen_range(-q..=q).into(), q.into())))
                })
                .collect();
            (InfCharCurve::new(h, n, values)?, json!({ "seed": seed }))
        }
        (None, None) => bail!("give --eta FILE or --seed S"),
    };
    let eta = match args.max_degree {
        Some(n) if n != eta.truncation() => {
            instance(&eta.hopf().name(), n)?;
            let values: Vec<_> = eta.values().filter(|(g, _)| g.degree() <= n).map(|(g, v)| (g.clone(), v.clone())).collect();
            InfCharCurve::new(Arc::clone(eta.hopf()), n, values)?
        }
        _ => eta,
    };
    let gamma = evolution::evolve(&eta);
    if let Some(path) = &args.emit {
        output::write_json(path, &gamma.to_json())?;
    }
    let at: Vec<Value> = rationals(&args.at)?
        .iter()
        .map(|t| json!({ "t": format_rational(t), "gamma": evolution::curve_at(&gamma, t).to_json() }))
        .collect();
    let mut report = json!({
        "hopf": eta.hopf().name(),
        "N": eta.truncation(),
        "eta": source,
        "gamma": gamma.to_json(),
        "at": at,
    });
    let mut ok = true;
    let mut csv = None;
    if args.semiregularity {
        let samples = rationals(&args.samples)?;
        let sr = evolution::semiregularity_check(&eta, &family(&args.family)?, args.k, (args.a, args.b), &samples)?;
        ok = sr.status.is_pass();
        csv = Some(control::write_csv(&sr.rows));
        report["semiregularity"] = serde_json::to_value(&sr)?;
    }
    Output::from(args.output).emit(&report, csv)?;
    Ok(ok)
}
