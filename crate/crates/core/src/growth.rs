//! Growth families `ω_k(n)` and finite-grid verification of the axioms
//! W1 (normalised, monotone in k), W2 (supermultiplicative), W3 (some larger
//! index dominates `2ⁿ·ω_{k₁}`) and the convexity condition cW.
//!
//! Comparisons are decided exactly. Products of weights are first compared
//! through their logarithms in `f64`; only when the two sides are within a
//! relative `1e-9` of each other are the integers themselves multiplied out.
//! For the non-family `e^{−n/k}` the logarithms are rationals and are
//! compared exactly, with `ln 2` enclosed between two rational bounds.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::par;
use crate::report::Status;
use crate::scalar::{factorial, format_rational, int, rat, to_f64, Rational};

/// A value of `ω_k(n)`: an exact rational, or a float for `e^{−n/k}`.
#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Exact(Rational),
    Approx(f64),
}

impl Weight {
    pub fn zero() -> Self {
        Weight::Exact(Rational::zero())
    }

    pub fn one() -> Self {
        Weight::Exact(Rational::one())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Weight::Exact(q) => to_f64(q),
            Weight::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Weight::Exact(q) => Some(q),
            Weight::Approx(_) => None,
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) => Weight::Exact(a + b),
            _ => Weight::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn times(&self, other: &Self) -> Self {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) => Weight::Exact(a * b),
            _ => Weight::Approx(self.to_f64() * other.to_f64()),
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        match self {
            Weight::Exact(a) => Weight::Exact(a * c),
            Weight::Approx(x) => Weight::Approx(x * to_f64(c)),
        }
    }

    /// `self / other`; `other` must be positive.
    pub fn ratio(&self, other: &Self) -> Self {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) => Weight::Exact(a / b),
            _ => Weight::Approx(self.to_f64() / other.to_f64()),
        }
    }

    pub fn le(&self, other: &Self) -> bool {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) => a <= b,
            _ => self.to_f64() <= other.to_f64(),
        }
    }

    pub fn lt(&self, other: &Self) -> bool {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) => a < b,
            _ => self.to_f64() < other.to_f64(),
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self.lt(&other) {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Exact(q) => f.write_str(&format_rational(q)),
            Weight::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// Exact weights serialize as `"p/q"` strings, approximate ones as numbers.
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Weight::Exact(q) => s.serialize_str(&format_rational(q)),
            Weight::Approx(x) => s.serialize_f64(*x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GrowthFamily {
    /// `kⁿ`
    Pow,
    /// `2^{kn}`
    Pow2,
    /// `kⁿ·n!`
    PowFact,
    /// `k^{n²}`
    PowNsq,
    /// `kⁿ·(n!)ᵏ`
    PowFactK,
    /// `e^{−n/k}`: satisfies W1, W2 and cW but not W3.
    Anti,
    /// `ω_k(nᵖ)` for a base family `ω`.
    Composed { base: Box<GrowthFamily>, power: u32 },
}

pub const BUILTIN_NAMES: [&str; 6] = ["pow", "pow2", "pow-fact", "pow-nsq", "pow-factk", "anti"];

impl GrowthFamily {
    /// Looks up a family by name. Besides the builtin names, `"<base>:n^<p>"`
    /// selects the composition of a builtin with `n ↦ nᵖ`.
    pub fn builtin(name: &str) -> Result<Self> {
        if let Some((base, exp)) = name.split_once(":n^") {
            let power: u32 = exp
                .parse()
                .ok()
                .filter(|&p| p >= 1)
                .ok_or_else(|| Error::UnknownFamily(name.to_owned()))?;
            return Ok(Self::builtin(base)?.composed(power));
        }
        Ok(match name {
            "pow" => GrowthFamily::Pow,
            "pow2" => GrowthFamily::Pow2,
            "pow-fact" => GrowthFamily::PowFact,
            "pow-nsq" => GrowthFamily::PowNsq,
            "pow-factk" => GrowthFamily::PowFactK,
            "anti" => GrowthFamily::Anti,
            _ => return Err(Error::UnknownFamily(name.to_owned())),
        })
    }

    pub fn composed(self, power: u32) -> Self {
        GrowthFamily::Composed { base: Box::new(self), power }
    }

    pub fn name(&self) -> String {
        match self {
            GrowthFamily::Pow => "pow".into(),
            GrowthFamily::Pow2 => "pow2".into(),
            GrowthFamily::PowFact => "pow-fact".into(),
            GrowthFamily::PowNsq => "pow-nsq".into(),
            GrowthFamily::PowFactK => "pow-factk".into(),
            GrowthFamily::Anti => "anti".into(),
            GrowthFamily::Composed { base, power } => format!("{}:n^{}", base.name(), power),
        }
    }

    pub fn is_growth_family(&self) -> bool {
        match self {
            GrowthFamily::Anti => false,
            GrowthFamily::Composed { base, .. } => base.is_growth_family(),
            _ => true,
        }
    }

    /// Whether `eval` returns exact values.
    pub fn is_exact(&self) -> bool {
        match self {
            GrowthFamily::Anti => false,
            GrowthFamily::Composed { base, .. } => base.is_exact(),
            _ => true,
        }
    }

    fn leaf_and_arg(&self, n: u32) -> (&GrowthFamily, u32) {
        match self {
            GrowthFamily::Composed { base, power } => {
                let (leaf, m) = base.leaf_and_arg(n);
                (leaf, m.checked_pow(*power).expect("composed degree overflows u32"))
            }
            _ => (self, n),
        }
    }

    /// `ω_k(n)` as an integer, for the exact families.
    pub fn eval_int(&self, k: u32, n: u32) -> Option<BigInt> {
        assert!(k >= 1, "growth family index k must be positive");
        let (leaf, n) = self.leaf_and_arg(n);
        let kb = BigInt::from(k);
        let pow = |b: &BigInt, e: u32| num_traits::pow(b.clone(), e as usize);
        Some(match leaf {
            GrowthFamily::Pow => pow(&kb, n),
            GrowthFamily::Pow2 => pow(&BigInt::from(2), k * n),
            GrowthFamily::PowFact => pow(&kb, n) * factorial(n),
            GrowthFamily::PowNsq => pow(&kb, n * n),
            GrowthFamily::PowFactK => pow(&kb, n) * pow(&factorial(n), k),
            GrowthFamily::Anti => return None,
            GrowthFamily::Composed { .. } => unreachable!(),
        })
    }

    /// The exponent `−n/k` of the anti family (`ω = e^{exponent}`).
    pub fn log_exponent(&self, k: u32, n: u32) -> Option<Rational> {
        let (leaf, n) = self.leaf_and_arg(n);
        match leaf {
            GrowthFamily::Anti => Some(-rat(n as i64, k as i64)),
            _ => None,
        }
    }

    pub fn eval(&self, k: u32, n: u32) -> Weight {
        match self.eval_int(k, n) {
            Some(v) => Weight::Exact(Rational::from_integer(v)),
            None => Weight::Approx(to_f64(&self.log_exponent(k, n).expect("anti family")).exp()),
        }
    }

    /// Natural logarithm of `ω_k(n)`, in floating point.
    pub fn ln(&self, k: u32, n: u32) -> f64 {
        let (leaf, n) = self.leaf_and_arg(n);
        let (kf, nf) = (k as f64, n as f64);
        match leaf {
            GrowthFamily::Pow => nf * kf.ln(),
            GrowthFamily::Pow2 => kf * nf * std::f64::consts::LN_2,
            GrowthFamily::PowFact => nf * kf.ln() + ln_factorial(n),
            GrowthFamily::PowNsq => nf * nf * kf.ln(),
            GrowthFamily::PowFactK => nf * kf.ln() + kf * ln_factorial(n),
            GrowthFamily::Anti => -nf / kf,
            GrowthFamily::Composed { .. } => unreachable!(),
        }
    }

    /// The W3 witness used in the standard proofs, if the family has one.
    pub fn analytic_w3_witness(&self, k1: u32) -> Option<u32> {
        match self {
            GrowthFamily::Pow | GrowthFamily::PowFact | GrowthFamily::PowNsq | GrowthFamily::PowFactK => {
                Some(2 * k1)
            }
            GrowthFamily::Pow2 => Some(k1 + 1),
            GrowthFamily::Anti => None,
            GrowthFamily::Composed { base, .. } => base.analytic_w3_witness(k1),
        }
    }
}

impl FromStr for GrowthFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::builtin(s)
    }
}

impl fmt::Display for GrowthFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// A formal product `2^{two_pow} · Π ω_k(n)^{mult}`.
#[derive(Clone, Debug, Default)]
struct Side {
    terms: BTreeMap<(u32, u32), u32>,
    two_pow: u32,
}

impl Side {
    fn new(terms: &[(u32, u32, u32)], two_pow: u32) -> Self {
        let mut side = Side { terms: BTreeMap::new(), two_pow };
        for &(k, n, mult) in terms {
            // ω_k(0) = 1 for every family handled here.
            if n > 0 && mult > 0 {
                *side.terms.entry((k, n)).or_insert(0) += mult;
            }
        }
        side
    }
}

fn cancel(lhs: &mut Side, rhs: &mut Side) {
    let keys: Vec<_> = lhs.terms.keys().copied().collect();
    for key in keys {
        if let Some(r) = rhs.terms.get_mut(&key) {
            let l = lhs.terms.get_mut(&key).expect("key present");
            let common = (*l).min(*r);
            *l -= common;
            *r -= common;
        }
    }
    lhs.terms.retain(|_, m| *m > 0);
    rhs.terms.retain(|_, m| *m > 0);
    let common = lhs.two_pow.min(rhs.two_pow);
    lhs.two_pow -= common;
    rhs.two_pow -= common;
}

/// Rational enclosure of `ln 2`.
fn ln2_bounds() -> (Rational, Rational) {
    let d = num_traits::pow(BigInt::from(10), 16);
    (
        Rational::new(BigInt::from(6_931_471_805_599_453_i64), d.clone()),
        Rational::new(BigInt::from(6_931_471_805_599_454_i64), d),
    )
}

/// Compares two formal products. `None` means the rational enclosure of
/// `ln 2` was too coarse to decide, which only the anti family can produce.
fn compare(fam: &GrowthFamily, lhs: &Side, rhs: &Side) -> Option<Ordering> {
    let (mut lhs, mut rhs) = (lhs.clone(), rhs.clone());
    cancel(&mut lhs, &mut rhs);
    if lhs.terms.is_empty() && rhs.terms.is_empty() {
        return Some(lhs.two_pow.cmp(&rhs.two_pow));
    }
    if !fam.is_exact() {
        let exponent = |s: &Side| -> Rational {
            s.terms
                .iter()
                .map(|(&(k, n), &m)| fam.log_exponent(k, n).expect("anti family") * int(m as i64))
                .sum()
        };
        let d = exponent(&rhs) - exponent(&lhs);
        let s = lhs.two_pow as i64 - rhs.two_pow as i64;
        // lhs ⋚ rhs  ⇔  s·ln2 ⋚ d
        if s == 0 {
            return Some(Rational::zero().cmp(&d));
        }
        let (lo, hi) = ln2_bounds();
        let (lo, hi) = if s > 0 { (lo * int(s), hi * int(s)) } else { (hi * int(s), lo * int(s)) };
        return if hi < d {
            Some(Ordering::Less)
        } else if lo > d {
            Some(Ordering::Greater)
        } else {
            None
        };
    }
    let ln = |s: &Side| -> f64 {
        s.terms.iter().map(|(&(k, n), &m)| m as f64 * fam.ln(k, n)).sum::<f64>()
            + s.two_pow as f64 * std::f64::consts::LN_2
    };
    let (l, r) = (ln(&lhs), ln(&rhs));
    let scale = l.abs().max(r.abs()).max(1.0);
    if (l - r).abs() > 1e-9 * scale {
        return l.partial_cmp(&r);
    }
    let value = |s: &Side| -> BigInt {
        let mut v = num_traits::pow(BigInt::from(2), s.two_pow as usize);
        for (&(k, n), &m) in &s.terms {
            v *= num_traits::pow(fam.eval_int(k, n).expect("exact family"), m as usize);
        }
        v
    };
    Some(value(&lhs).cmp(&value(&rhs)))
}

fn le(fam: &GrowthFamily, lhs: Side, rhs: Side) -> bool {
    matches!(compare(fam, &lhs, &rhs), Some(Ordering::Less | Ordering::Equal))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    W1,
    W2,
    W3,
    #[serde(rename = "cW")]
    CW,
}

/// The finite range an axiom is checked on: `1 ≤ k ≤ k_max`, `0 ≤ n ≤ n_max`,
/// and W3 witnesses searched up to `k2_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub k_max: u32,
    pub n_max: u32,
    pub k2_max: u32,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { k_max: 6, n_max: 40, k2_max: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct W3Outcome {
    pub k1: u32,
    /// Witness from the standard proof, if any.
    pub analytic: Option<u32>,
    pub analytic_holds: bool,
    /// Least `k₂ ≤ k2_max` that works on the grid.
    pub least: Option<u32>,
}

impl W3Outcome {
    /// The preferred witness: the analytic one when it holds on the grid.
    pub fn witness(&self) -> Option<u32> {
        if self.analytic_holds {
            self.analytic
        } else {
            self.least
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CwOutcome {
    pub k1: u32,
    pub k2: u32,
    pub k3: u32,
    /// `α` as `"p/q"`, absent when no `α` was found.
    pub alpha: Option<String>,
    pub holds: bool,
    pub first_failure: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Counterexample { k: u32, n: u32, m: Option<u32>, detail: String },
    Dominance { entries: Vec<W3Outcome> },
    Convexity { entries: Vec<CwOutcome> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub family: String,
    pub axiom: Axiom,
    pub grid: Grid,
    pub status: Status,
    /// Always `"finite grid"`: a pass certifies the inequality on the grid only.
    pub scope: &'static str,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    fn new(fam: &GrowthFamily, axiom: Axiom, grid: Grid, ok: bool, witness: Option<Witness>) -> Self {
        AxiomReport {
            family: fam.name(),
            axiom,
            grid,
            status: Status::from_bool(ok),
            scope: "finite grid",
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn check_w1(fam: &GrowthFamily, grid: Grid) -> AxiomReport {
    let failures = par::map_range(1..=grid.k_max, |k| {
        let zero_ok = match fam.eval(k, 0) {
            Weight::Exact(q) => q.is_one(),
            Weight::Approx(_) => fam.log_exponent(k, 0).is_some_and(|e| e.is_zero()),
        };
        if !zero_ok {
            return Some((k, 0, "ω_k(0) ≠ 1".to_owned()));
        }
        (1..=grid.n_max)
            .find(|&n| !le(fam, Side::new(&[(k, n, 1)], 0), Side::new(&[(k + 1, n, 1)], 0)))
            .map(|n| (k, n, "ω_k(n) > ω_{k+1}(n)".to_owned()))
    });
    let first = failures.into_iter().flatten().next();
    let witness = first
        .clone()
        .map(|(k, n, detail)| Witness::Counterexample { k, n, m: None, detail });
    AxiomReport::new(fam, Axiom::W1, grid, first.is_none(), witness)
}

pub fn check_w2(fam: &GrowthFamily, grid: Grid) -> AxiomReport {
    let failures = par::map_range(1..=grid.k_max, |k| {
        for n in 0..=grid.n_max {
            for m in n..=grid.n_max - n {
                if !le(fam, Side::new(&[(k, n, 1), (k, m, 1)], 0), Side::new(&[(k, n + m, 1)], 0)) {
                    return Some((k, n, m));
                }
            }
        }
        None
    });
    let first = failures.into_iter().flatten().next();
    let witness = first.map(|(k, n, m)| Witness::Counterexample {
        k,
        n,
        m: Some(m),
        detail: "ω_k(n)ω_k(m) > ω_k(n+m)".to_owned(),
    });
    AxiomReport::new(fam, Axiom::W2, grid, first.is_none(), witness)
}

fn dominates(fam: &GrowthFamily, k1: u32, k2: u32, n_max: u32) -> bool {
    (0..=n_max).all(|n| le(fam, Side::new(&[(k1, n, 1)], n), Side::new(&[(k2, n, 1)], 0)))
}

/// W3 for one `k₁`: is there `k₂ ≥ k₁` with `ω_{k₂}(n) ≥ 2ⁿω_{k₁}(n)` on the grid?
pub fn check_w3(fam: &GrowthFamily, k1: u32, n_max: u32, k2_max: u32) -> W3Outcome {
    let analytic = fam.analytic_w3_witness(k1);
    let analytic_holds = analytic.is_some_and(|k2| dominates(fam, k1, k2, n_max));
    let least = (k1..=k2_max).find(|&k2| dominates(fam, k1, k2, n_max));
    W3Outcome { k1, analytic, analytic_holds, least }
}

pub fn check_w3_grid(fam: &GrowthFamily, grid: Grid) -> AxiomReport {
    let entries = par::map_range(1..=grid.k_max, |k1| check_w3(fam, k1, grid.n_max, grid.k2_max));
    let ok = entries.iter().all(|e| e.witness().is_some());
    AxiomReport::new(fam, Axiom::W3, grid, ok, Some(Witness::Dominance { entries }))
}

/// cW for fixed `(k₁,k₂,k₃,α)`: `ω_{k₁}(n)^α ω_{k₃}(n)^{1−α} ≤ ω_{k₂}(n)` for
/// `n ≤ n_max`, decided after raising both sides to the denominator of `α`.
pub fn check_cw(fam: &GrowthFamily, k1: u32, k2: u32, k3: u32, alpha: &Rational, n_max: u32) -> Result<CwOutcome> {
    if !(alpha.is_positive() && *alpha < Rational::one()) {
        return Err(Error::InvalidArgument(format!("α = {} is not in (0,1)", format_rational(alpha))));
    }
    let p = alpha.numer().to_u32().ok_or_else(|| Error::InvalidArgument("α numerator too large".into()))?;
    let q = alpha.denom().to_u32().ok_or_else(|| Error::InvalidArgument("α denominator too large".into()))?;
    let first_failure = (0..=n_max).find(|&n| {
        !le(fam, Side::new(&[(k1, n, p), (k3, n, q - p)], 0), Side::new(&[(k2, n, q)], 0))
    });
    Ok(CwOutcome {
        k1,
        k2,
        k3,
        alpha: Some(format_rational(alpha)),
        holds: first_failure.is_none(),
        first_failure,
    })
}

/// Searches `α = (q−1)/q` for increasing `q`, which follows the standard
/// proofs' limit argument `α → 1`.
pub fn suggest_alpha(fam: &GrowthFamily, k1: u32, k2: u32, k3: u32, n_max: u32) -> Option<Rational> {
    (2..=512u32).map(|q| rat(q as i64 - 1, q as i64)).find(|alpha| {
        check_cw(fam, k1, k2, k3, alpha, 1.min(n_max)).is_ok_and(|o| o.holds)
            && check_cw(fam, k1, k2, k3, alpha, n_max).is_ok_and(|o| o.holds)
    })
}

/// cW over the grid: for each `k₁`, `k₂` is the W3 witness (or `k₁+1` when
/// there is none) and `k₃` ranges over `{k₂, k₂+1, 2k₂, 4k₂}`.
pub fn check_cw_grid(fam: &GrowthFamily, grid: Grid) -> AxiomReport {
    let per_k1 = par::map_range(1..=grid.k_max, |k1| {
        let k2 = check_w3(fam, k1, grid.n_max, grid.k2_max).witness().unwrap_or(k1 + 1);
        [k2, k2 + 1, 2 * k2, 4 * k2]
            .into_iter()
            .map(|k3| match suggest_alpha(fam, k1, k2, k3, grid.n_max) {
                Some(alpha) => check_cw(fam, k1, k2, k3, &alpha, grid.n_max).expect("α in (0,1)"),
                None => CwOutcome { k1, k2, k3, alpha: None, holds: false, first_failure: None },
            })
            .collect::<Vec<_>>()
    });
    let entries: Vec<CwOutcome> = per_k1.into_iter().flatten().collect();
    let ok = entries.iter().all(|e| e.holds);
    AxiomReport::new(fam, Axiom::CW, grid, ok, Some(Witness::Convexity { entries }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub is_growth_family: bool,
    pub axioms: Vec<AxiomReport>,
}

impl FamilyReport {
    pub fn passed(&self, axiom: Axiom) -> bool {
        self.axioms.iter().any(|r| r.axiom == axiom && r.passed())
    }

    pub fn failing(&self) -> Vec<Axiom> {
        self.axioms.iter().filter(|r| !r.passed()).map(|r| r.axiom).collect()
    }
}

pub fn verify_family(fam: &GrowthFamily, grid: Grid) -> FamilyReport {
    FamilyReport {
        family: fam.name(),
        is_growth_family: fam.is_growth_family(),
        axioms: vec![
            check_w1(fam, grid),
            check_w2(fam, grid),
            check_w3_grid(fam, grid),
            check_cw_grid(fam, grid),
        ],
    }
}
