//! Finite-degree verification of control pairs: weighted ℓ¹ ratios for the
//! coproduct and antipode, the elementary coproduct, (RLB) linear bounds and
//! right-handedness.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{Monomial, TensorVector};
use crate::growth::{GrowthFamily, Weight};
use crate::hopf::axioms::{scope_elements, CheckScope};
use crate::hopf::HopfAlgebra;
use crate::par;
use crate::scalar::{format_rational, Rational};

/// Which operator a ratio report measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Coproduct,
    Antipode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundedness {
    /// The maximal ratio is attained in the first half of the degree range.
    Bounded,
    /// The maximum sits in the upper half, so the data cannot rule out growth.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioRow {
    pub degree: u32,
    pub elements: usize,
    /// The element attaining the largest norm at this degree.
    pub argmax: String,
    /// `‖T x‖_{ℓ¹_{k₁}}` for the argmax.
    pub norm: Weight,
    /// `ω_{k₂}(n)`.
    pub weight: Weight,
    pub ratio: Weight,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioReport {
    pub instance: String,
    pub operator: Operator,
    pub family: String,
    pub k1: u32,
    pub k2: u32,
    pub max_degree: u32,
    pub rows: Vec<RatioRow>,
    pub c_hat: Weight,
    pub c_hat_degree: u32,
    pub verdict: Boundedness,
    pub scope: &'static str,
}

impl RatioReport {
    /// Per-degree table as CSV with a header row.
    pub fn to_csv(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            degree: u32,
            elements: usize,
            argmax: &'a str,
            norm: f64,
            weight: f64,
            ratio: f64,
        }
        write_csv(self.rows.iter().map(|r| Row {
            degree: r.degree,
            elements: r.elements,
            argmax: &r.argmax,
            norm: r.norm.to_f64(),
            weight: r.weight.to_f64(),
            ratio: r.ratio.to_f64(),
        }))
    }
}

/// Serializes rows as CSV with a header.
pub fn write_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("in-memory CSV write");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
}

fn ratio_report(
    h: &dyn HopfAlgebra,
    operator: Operator,
    family: &GrowthFamily,
    k1: u32,
    k2: u32,
    max_degree: u32,
    scope: CheckScope,
) -> Result<RatioReport> {
    if k1 == 0 || k2 < k1 {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k1 ≤ k2, got k1={k1}, k2={k2}")));
    }
    crate::hopf::ensure_degree(max_degree, crate::hopf::degree_limit(h))?;
    let elements = scope_elements(h, max_degree, scope);
    let mut rows = Vec::new();
    for n in 1..=max_degree {
        let level: Vec<&(Monomial, String)> = elements.iter().filter(|(m, _)| m.degree() == n).collect();
        if level.is_empty() {
            continue;
        }
        let norms = par::map(&level, |(m, _)| match operator {
            Operator::Coproduct => h.coproduct(m).l1_norm(family, k1),
            Operator::Antipode => h.default_antipode(m).l1_norm(family, k1),
        });
        let (best, norm) = norms
            .into_iter()
            .enumerate()
            .fold((0, Weight::zero()), |(bi, bw), (i, w)| if bw.lt(&w) { (i, w) } else { (bi, bw) });
        let weight = family.eval(k2, n);
        rows.push(RatioRow {
            degree: n,
            elements: level.len(),
            argmax: level[best].1.clone(),
            ratio: norm.ratio(&weight),
            norm,
            weight,
        });
    }
    let (c_hat, c_hat_degree) = rows
        .iter()
        .fold((Weight::zero(), 0), |(c, d), r| if c.lt(&r.ratio) { (r.ratio.clone(), r.degree) } else { (c, d) });
    let verdict = if 2 * c_hat_degree <= max_degree { Boundedness::Bounded } else { Boundedness::Inconclusive };
    Ok(RatioReport {
        instance: h.name(),
        operator,
        family: family.name(),
        k1,
        k2,
        max_degree,
        rows,
        c_hat,
        c_hat_degree,
        verdict,
        scope: "finite degree",
    })
}

/// `max_{|x|=n} ‖Δx‖_{ℓ¹_{k₁}} / ω_{k₂}(n)` per degree over the generators.
pub fn coproduct_ratio(h: &dyn HopfAlgebra, family: &GrowthFamily, k1: u32, k2: u32, max_degree: u32) -> Result<RatioReport> {
    ratio_report(h, Operator::Coproduct, family, k1, k2, max_degree, CheckScope::Generators)
}

/// As [`coproduct_ratio`] for the antipode.
pub fn antipode_ratio(h: &dyn HopfAlgebra, family: &GrowthFamily, k1: u32, k2: u32, max_degree: u32) -> Result<RatioReport> {
    ratio_report(h, Operator::Antipode, family, k1, k2, max_degree, CheckScope::Generators)
}

/// Ratio report over an explicit scope (generators or all basis monomials).
pub fn operator_ratio(
    h: &dyn HopfAlgebra,
    operator: Operator,
    family: &GrowthFamily,
    k1: u32,
    k2: u32,
    max_degree: u32,
    scope: CheckScope,
) -> Result<RatioReport> {
    ratio_report(h, operator, family, k1, k2, max_degree, scope)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Growth {
    Linear,
    Superlinear,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RlbRow {
    pub degree: u32,
    pub generators: usize,
    /// `e(n)`: the largest ℓ¹-count of an elementary coproduct at this degree.
    pub e: String,
    pub argmax: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RlbReport {
    pub instance: String,
    pub max_degree: u32,
    pub rows: Vec<RlbRow>,
    pub a_hat: String,
    pub b_hat: String,
    pub verdict: Growth,
    #[serde(skip)]
    pub values: Vec<Rational>,
    #[serde(skip)]
    pub a: Rational,
    #[serde(skip)]
    pub b: Rational,
}

impl RlbReport {
    pub fn holds(&self) -> bool {
        self.verdict == Growth::Linear
    }

    pub fn to_csv(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            degree: u32,
            generators: usize,
            e: &'a str,
            argmax: &'a str,
        }
        write_csv(self.rows.iter().map(|r| Row { degree: r.degree, generators: r.generators, e: &r.e, argmax: &r.argmax }))
    }
}

/// ℓ¹-count `Σ|c_{α,β}|` of the elementary coproduct of each generator, and
/// the affine majorant `e(n) ≤ a·n + b` with the least slope the data allows.
pub fn rlb_check(h: &dyn HopfAlgebra, max_degree: u32) -> Result<RlbReport> {
    if max_degree < 2 {
        return Err(Error::InvalidArgument("rlb-check needs max degree ≥ 2".into()));
    }
    crate::hopf::ensure_degree(max_degree, crate::hopf::degree_limit(h))?;
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for n in 1..=max_degree {
        let gens = h.generators(n);
        let masses = par::map(&gens, |g| h.elementary_coproduct(g).mass());
        let (i, e) = masses
            .into_iter()
            .enumerate()
            .fold((0, Rational::zero()), |(bi, be), (i, m)| if m > be { (i, m) } else { (bi, be) });
        rows.push(RlbRow {
            degree: n,
            generators: gens.len(),
            e: format_rational(&e),
            argmax: gens.get(i).map(|g| g.key().to_owned()).unwrap_or_default(),
        });
        values.push(e);
    }
    let (a, b) = affine_majorant(&values);
    let verdict = classify(&values);
    Ok(RlbReport {
        instance: h.name(),
        max_degree,
        rows,
        a_hat: format_rational(&a),
        b_hat: format_rational(&b),
        verdict,
        values,
        a,
        b,
    })
}

/// `values[i]` is `e(i+1)`. The slope is the largest forward difference
/// (clamped at 0); the intercept is the least `b ≥ 0` making the line a
/// majorant.
pub fn affine_majorant(values: &[Rational]) -> (Rational, Rational) {
    let a = values
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .fold(Rational::zero(), |m, d| if d > m { d } else { m });
    let b = values
        .iter()
        .enumerate()
        .map(|(i, e)| e - &a * Rational::from_integer((i as i64 + 1).into()))
        .fold(Rational::zero(), |m, d| if d > m { d } else { m });
    (a, b)
}

/// Linear when no second difference is positive; superlinear when the last
/// two (or the only) second differences are positive.
pub fn classify(values: &[Rational]) -> Growth {
    let second: Vec<Rational> = values.windows(3).map(|w| &w[2] - &w[1] - (&w[1] - &w[0])).collect();
    if second.is_empty() {
        return Growth::Inconclusive;
    }
    let positive = |d: &Rational| d > &Rational::zero();
    if !second.iter().any(positive) {
        Growth::Linear
    } else if second.iter().rev().take(2).all(positive) {
        Growth::Superlinear
    } else {
        Growth::Inconclusive
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Handedness {
    /// Every reduced-coproduct term has a single generator on the left.
    Left,
    /// Every reduced-coproduct term has a single generator on the right.
    Right,
    Both,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HandednessWitness {
    pub generator: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HandednessReport {
    pub instance: String,
    pub max_degree: u32,
    pub verdict: Handedness,
    /// First term whose left factor is not a generator.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_violation: Option<HandednessWitness>,
    /// First term whose right factor is not a generator.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub right_violation: Option<HandednessWitness>,
}

/// Tests `Δ̄(g) ⊆ K^(Σ) ⊗ H` (left) and the mirrored condition (right) for
/// every generator up to `max_degree`.
pub fn right_handed_check(h: &dyn HopfAlgebra, max_degree: u32) -> Result<HandednessReport> {
    crate::hopf::ensure_degree(max_degree, crate::hopf::degree_limit(h))?;
    let gens = h.generators_up_to(max_degree);
    let per_gen = par::map(&gens, |g| {
        let red: TensorVector = h.reduced_coproduct(&h.as_basis(g));
        let witness = |pick: &dyn Fn(&Monomial, &Monomial) -> bool| {
            red.iter().find(|(l, r, _)| !pick(l, r)).map(|(l, r, _)| HandednessWitness {
                generator: g.key().to_owned(),
                left: l.encode(),
                right: r.encode(),
            })
        };
        (witness(&|l, _| h.is_generator(l)), witness(&|_, r| h.is_generator(r)))
    });
    let left_violation = per_gen.iter().find_map(|(l, _)| l.clone());
    let right_violation = per_gen.iter().find_map(|(_, r)| r.clone());
    let verdict = match (left_violation.is_none(), right_violation.is_none()) {
        (true, true) => Handedness::Both,
        (true, false) => Handedness::Left,
        (false, true) => Handedness::Right,
        (false, false) => Handedness::Neither,
    };
    Ok(HandednessReport { instance: h.name(), max_degree, verdict, left_violation, right_violation })
}

/// `e(n)` as integers, for instances whose elementary coproducts have
/// integral coefficients.
pub fn integral_values(report: &RlbReport) -> Option<Vec<i64>> {
    report.values.iter().map(|v| if v.is_integer() { v.to_integer().to_i64() } else { None }).collect()
}
