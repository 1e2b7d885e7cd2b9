//! `bseries`, `pseries` and `wordseries`.

use anyhow::{bail, Result};
use hopfchar::hopf::tree::RootedTree;
use hopfchar::scalar::{factorial, format_rational, int, Rational};
use hopfchar::series::{
    bseries_partial, character_coefficients, convergence_probe, exact_flow, iterated_integrals, pseries_partial,
    wordseries_partial, ColouredPolySystem, PolyVectorField, SeriesTerms, WordSystem,
};
use hopfchar::character::Character;
use serde_json::{json, Value};

use crate::args::{BseriesArgs, Coefficients, Delta, PseriesArgs, WordseriesArgs};
use crate::output::{read_json, Output};
use crate::{rational, rationals, Verdict};

type TreeCoefficients<'a> = Box<dyn Fn(&RootedTree) -> Rational + Sync + 'a>;

const TREE_LIMIT: u32 = 12;
const WORD_LIMIT: u32 = 10;

fn limit(default: u32, order: u32, what: &str) -> Result<()> {
    let max = std::env::var("HOPFCHAR_MAX_DEGREE").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(default);
    if order > max {
        bail!("order {order} exceeds the safety limit {max} for {what} (set HOPFCHAR_MAX_DEGREE to override)");
    }
    Ok(())
}

fn coefficient_fn(c: Coefficients) -> fn(&RootedTree) -> Rational {
    match c {
        Coefficients::ExactFlow => exact_flow,
        Coefficients::Pow2 => |t| Rational::from_integer(num_bigint::BigInt::from(1) << t.order()),
        Coefficients::Factorial => |t| Rational::from_integer(factorial(t.order())),
        Coefficients::Zero => |_| int(0),
    }
}

fn coefficient_name(c: Coefficients) -> &'static str {
    match c {
        Coefficients::ExactFlow => "exact-flow",
        Coefficients::Pow2 => "pow2",
        Coefficients::Factorial => "factorial",
        Coefficients::Zero => "zero",
    }
}

fn vector(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// The common report body: per-order increments and the final partial sum.
fn terms_json(terms: &SeriesTerms<Rational>) -> Value {
    json!({
        "max_order": terms.order(),
        "increments": terms.increments.iter().map(|v| vector(v)).collect::<Vec<_>>(),
        "increment_norms": (0..=terms.order()).map(|n| terms.increment_norm(n)).collect::<Vec<_>>(),
        "partial": vector(&terms.total()),
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

pub fn bseries(args: BseriesArgs) -> Result<Verdict> {
    limit(TREE_LIMIT, args.max_order, "trees")?;
    let f = PolyVectorField::from_json(&read_json(&args.field)?)?;
    let y = rationals(&args.y)?;
    let character;
    let (a, source): (TreeCoefficients<'_>, String) = match &args.character {
        Some(path) => {
            character = Character::<Rational>::from_json(&read_json(path)?)?;
            if character.truncation() < args.max_order {
                bail!("the character is truncated at {} < order {}", character.truncation(), args.max_order);
            }
            (Box::new(character_coefficients(&character)?), path.display().to_string())
        }
        None => (Box::new(coefficient_fn(args.coefficients)), coefficient_name(args.coefficients).to_owned()),
    };
    let output = Output::from(args.output);
    if !args.probe.is_empty() {
        let hs = rationals(&args.probe)?;
        let report = convergence_probe(&*a, &f, &y, &hs, args.max_order)?;
        let body = merge(json!({ "series": "b-series", "coefficients": source, "point": vector(&y) }), serde_json::to_value(&report)?);
        output.emit(&body, Some(report.to_csv()))?;
        return Ok(true);
    }
    let h = rational(&args.h)?;
    let terms = bseries_partial(&*a, &f, &y, &h, args.max_order)?;
    let body = merge(
        json!({ "series": "b-series", "coefficients": source, "point": vector(&y), "h": format_rational(&h) }),
        terms_json(&terms),
    );
    output.emit(&body, Some(terms.to_csv()))?;
    Ok(true)
}

pub fn pseries(args: PseriesArgs) -> Result<Verdict> {
    limit(TREE_LIMIT, args.max_order, "coloured trees")?;
    if args.coefficients != Coefficients::ExactFlow && args.coefficients != Coefficients::Zero {
        bail!("P-series take exact-flow or zero coefficients");
    }
    let sys = ColouredPolySystem::from_json(&read_json(&args.system)?)?;
    let (p, q, h) = (rationals(&args.p)?, rationals(&args.q)?, rational(&args.h)?);
    let terms = pseries_partial(&coefficient_fn(args.coefficients), &sys, &p, &q, &h, args.max_order)?;
    let point: Vec<Rational> = p.iter().chain(&q).cloned().collect();
    let body = merge(
        json!({ "series": "p-series", "coefficients": coefficient_name(args.coefficients), "point": vector(&point), "h": format_rational(&h) }),
        terms_json(&terms),
    );
    Output::from(args.output).emit(&body, Some(terms.to_csv()))?;
    Ok(true)
}

pub fn wordseries(args: WordseriesArgs) -> Result<Verdict> {
    limit(WORD_LIMIT, args.max_order, "words")?;
    let sys = WordSystem::from_json(&read_json(&args.system)?)?;
    let x = rationals(&args.x)?;
    let t = rational(&args.t)?;
    let terms = match args.delta {
        Delta::Iterated => {
            let ints = iterated_integrals(&sys, args.max_order);
            wordseries_partial(&|w: &[u8]| ints[w].eval(&t), &sys, &x, args.max_order)?
        }
        Delta::Exp => wordseries_partial(&|w: &[u8]| Rational::new(1.into(), factorial(w.len() as u32)), &sys, &x, args.max_order)?,
        Delta::Counit => wordseries_partial(&|w: &[u8]| int(i64::from(w.is_empty())), &sys, &x, args.max_order)?,
    };
    let delta = match args.delta {
        Delta::Iterated => json!({ "kind": "iterated", "t": format_rational(&t) }),
        Delta::Exp => json!({ "kind": "exp" }),
        Delta::Counit => json!({ "kind": "counit" }),
    };
    let body = merge(json!({ "series": "word-series", "delta": delta, "point": vector(&x), "alphabet": sys.alphabet() }), terms_json(&terms));
    Output::from(args.output).emit(&body, Some(terms.to_csv()))?;
    Ok(true)
}
