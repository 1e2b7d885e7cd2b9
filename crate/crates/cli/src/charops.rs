//! `char` subcommands. Files carry their target algebra in `B`; rational,
//! float and dual values are supported.


use anyhow::{bail, Result};
use hopfchar::character::{Character, InfChar, NormScope};
use hopfchar::scalar::{Dual, Rational};
use hopfchar::TargetAlgebra;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::args::{CharOp, Over};
use crate::output::{read_json, Output};
use crate::{family, instance, Verdict};

/// Calls `$f::<B>(…)` for the target algebra named in a file.
macro_rules! dispatch {
    ($tag:expr, $f:ident ( $($arg:expr),* )) => {
        match $tag {
            Rational::NAME => $f::<Rational>($($arg),*),
            f64::NAME => $f::<f64>($($arg),*),
            Dual::NAME => $f::<Dual>($($arg),*),
            other => bail!("unsupported target algebra `{other}`"),
        }
    };
}

fn tag(v: &Value) -> String {
    v.get("B").and_then(Value::as_str).unwrap_or(Rational::NAME).to_owned()
}

pub fn run(op: CharOp) -> Result<Verdict> {
    match op {
        CharOp::Conv { left, right, output } => {
            let (a, b) = (read_json(&left)?, read_json(&right)?);
            if tag(&a) != tag(&b) {
                bail!("operands use different target algebras");
            }
            let out = dispatch!(tag(&a).as_str(), conv(&a, &b))?;
            Output::from(output).emit(&out, None)?;
        }
        CharOp::Inv { input, output } => {
            let v = read_json(&input)?;
            let out = dispatch!(tag(&v).as_str(), inv(&v))?;
            Output::from(output).emit(&out, None)?;
        }
        CharOp::Exp { input, output } => {
            let v = read_json(&input)?;
            let out = dispatch!(tag(&v).as_str(), exp(&v))?;
            Output::from(output).emit(&out, None)?;
        }
        CharOp::Log { input, output } => {
            let v = read_json(&input)?;
            let out = dispatch!(tag(&v).as_str(), log(&v))?;
            Output::from(output).emit(&out, None)?;
        }
        CharOp::Norm { input, family: fam, k, over, infinitesimal, output } => {
            let v = read_json(&input)?;
            let fam = family(&fam)?;
            let over = match over {
                Over::Generators => NormScope::Generators,
                Over::Monomials => NormScope::Monomials,
            };
            let out = dispatch!(tag(&v).as_str(), norm(&v, infinitesimal, &fam, k, over))?;
            Output::from(output).emit(&out, None)?;
        }
        CharOp::Random { hopf, max_degree, seed, output } => {
            let h = instance(&hopf, max_degree)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let values: Vec<_> = h
                .generators_up_to(max_degree)
                .into_iter()
                .map(|g| {
                    let q: i64 = rng.gen_range(1..=8);
                    (g, Rational::new(rng.gen_range(-q..=q).into(), q.into()))
                })
                .collect();
            let phi = Character::new(h, max_degree, values)?;
            Output::from(output).emit(&phi.to_json(), None)?;
        }
    }
    Ok(true)
}

fn conv<B: TargetAlgebra>(a: &Value, b: &Value) -> Result<Value> {
    Ok(Character::<B>::from_json(a)?.convolve(&Character::<B>::from_json(b)?)?.to_json())
}

fn inv<B: TargetAlgebra>(v: &Value) -> Result<Value> {
    Ok(Character::<B>::from_json(v)?.inverse().to_json())
}

fn exp<B: TargetAlgebra>(v: &Value) -> Result<Value> {
    Ok(InfChar::<B>::from_json(v)?.exp().to_json())
}

fn log<B: TargetAlgebra>(v: &Value) -> Result<Value> {
    Ok(Character::<B>::from_json(v)?.log().to_json())
}

fn norm<B: TargetAlgebra>(v: &Value, infinitesimal: bool, fam: &hopfchar::GrowthFamily, k: u32, over: NormScope) -> Result<Value> {
    let report = if infinitesimal {
        InfChar::<B>::from_json(v)?.linf_norm(fam, k, over)
    } else {
        Character::<B>::from_json(v)?.linf_norm(fam, k, over)
    };
    Ok(serde_json::to_value(report)?)
}

