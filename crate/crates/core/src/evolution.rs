//! The evolution equation `γ'(t) = γ(t)⋆η(t)`, `γ(0) = ε`, solved exactly
//! degree by degree for infinitesimal characters polynomial in `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;
use serde::Serialize;
use serde_json::Value;

use crate::character::{Character, Functional, InfChar, NormScope};
use crate::error::{Error, Result};
use crate::graded::Generator;
use crate::growth::{GrowthFamily, Weight};
use crate::hopf::HopfAlgebra;
use crate::par;
use crate::report::Status;
use crate::scalar::{format_rational, json_rational, to_f64, Rational, TargetAlgebra};

/// A polynomial in `t` with rational coefficients, lowest degree first and
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TimePoly {
    coeffs: Vec<Rational>,
}

impl TimePoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·tᵈ`.
    pub fn monomial(c: Rational, d: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); d + 1];
        coeffs[d] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// `∫₀ᵗ p(s) ds`.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(self.coeffs.iter().enumerate().map(|(i, c)| c / Rational::from_integer((i as i64 + 1).into())));
        Self::new(coeffs)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
    }
}

impl fmt::Debug for TimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format_rational(c),
                1 => format!("{}·t", format_rational(c)),
                _ => format!("{}·t^{i}", format_rational(c)),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl TargetAlgebra for TimePoly {
    const NAME: &'static str = "time-poly";

    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(Rational::from_integer(1.into()))
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
    fn plus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
    fn times(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
    fn negated(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Sum of absolute coefficients, which bounds the sup norm on `[0, 1]`.
    fn norm(&self) -> f64 {
        to_f64(&self.exact_norm().expect("exact"))
    }
    fn exact_norm(&self) -> Option<Rational> {
        Some(self.coeffs.iter().map(Signed::abs).sum())
    }
    fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| Value::String(format_rational(c))).collect())
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Array(items) => Ok(Self::new(items.iter().map(json_rational).collect::<Result<_>>()?)),
            _ => Ok(Self::constant(json_rational(v)?)),
        }
    }
}

/// A character-valued curve `t ↦ γ(t)`.
pub type CharacterCurve = Character<TimePoly>;

/// An infinitesimal-character-valued curve `t ↦ η(t)`.
pub type InfCharCurve = InfChar<TimePoly>;

/// Lifts a constant infinitesimal character to a constant curve.
pub fn constant_curve(eta: &InfChar<Rational>) -> InfCharCurve {
    eta.map(|q| TimePoly::constant(q.clone()))
}

/// `γ(t)` at a rational time.
pub fn curve_at(curve: &CharacterCurve, t: &Rational) -> Character<Rational> {
    curve.map(|p| p.eval(t))
}

/// `η(t)` at a rational time.
pub fn inf_curve_at(curve: &InfCharCurve, t: &Rational) -> InfChar<Rational> {
    curve.map(|p| p.eval(t))
}

/// Solves `γ' = γ⋆η`, `γ(0) = ε` up to the truncation degree of `η`:
/// `γ(t)(τ) = ∫₀ᵗ Σ_{Δτ} c·γ(s)(μ)·η(s)(σ) ds`, where only terms with
/// `|μ| < |τ|` contribute and those are already known.
pub fn evolve(eta: &InfCharCurve) -> CharacterCurve {
    let h: Arc<dyn HopfAlgebra> = Arc::clone(eta.hopf());
    let n = eta.truncation();
    let mut values: BTreeMap<Generator, TimePoly> = BTreeMap::new();
    for d in 1..=n {
        let gamma = Character::from_values_unchecked(Arc::clone(&h), n, values.clone());
        let gens = h.generators(d);
        let level = par::map(&gens, |g| {
            let x = h.as_basis(g);
            let integrand = h.coproduct(&x).iter().fold(TimePoly::zero(), |acc, (l, r, c)| {
                if l.degree() == d {
                    return acc; // η(1) = 0
                }
                let e = eta.value(r);
                if e.is_zero() {
                    return acc;
                }
                acc.plus(&gamma.value(l).times(&e).scaled(c))
            });
            integrand.integral()
        });
        for (g, p) in gens.iter().zip(level) {
            if !p.is_zero() {
                values.insert(g.clone(), p);
            }
        }
    }
    Character::from_values_unchecked(h, n, values)
}

/// `A·e^{tB}`.
pub fn gronwall_bound(a: f64, b: f64, t: f64) -> f64 {
    a * (t * b).exp()
}

/// Relative guard band on float comparisons against `e^{(an+b)t}`.
pub const GUARD: f64 = 1.0 / (1u64 << 40) as f64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemiregularityRow {
    pub t: String,
    pub n: u32,
    /// `h_n(t) = sup_{|τ| ≤ n} ‖γ(t)(τ)‖ / ω_k(|τ|)`.
    pub h: f64,
    pub bound: f64,
    pub argmax: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemiregularityReport {
    pub hopf: String,
    pub family: String,
    pub k: u32,
    pub a: f64,
    pub b: f64,
    #[serde(rename = "N")]
    pub truncation: u32,
    /// `max_t ‖η(t)|_Σ‖_{ℓ∞ₖ}` over the samples; the bound presumes `≤ 1`.
    pub eta_norm: f64,
    pub precondition: Status,
    pub rows: Vec<SemiregularityRow>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<SemiregularityRow>,
}

/// Evaluates `h_n(t)` for `n ≤ N` at each sample time and compares with
/// `e^{(an+b)t}`.
pub fn semiregularity_check(
    eta: &InfCharCurve,
    family: &GrowthFamily,
    k: u32,
    (a, b): (f64, f64),
    samples: &[Rational],
) -> Result<SemiregularityReport> {
    if samples.iter().any(|t| t.is_negative() || t > &Rational::from_integer(1.into())) {
        return Err(Error::InvalidArgument("sample times must lie in [0, 1]".into()));
    }
    let h = eta.hopf();
    let n_max = eta.truncation();
    let eta_norm = samples
        .iter()
        .map(|t| inf_curve_at(eta, t).linf_norm(family, k, NormScope::Generators).value.to_f64())
        .fold(0.0, f64::max);
    let gamma = evolve(eta);
    let gens = h.generators_up_to(n_max);
    let mut rows = Vec::new();
    for t in samples {
        let at = curve_at(&gamma, t);
        let ratios: Vec<f64> = gens
            .iter()
            .map(|g| {
                Weight::Exact(at.on_generator(g).abs()).ratio(&family.eval(k, g.degree())).to_f64()
            })
            .collect();
        let tf = to_f64(t);
        let (mut best, mut arg) = (0.0f64, String::new());
        for n in 1..=n_max {
            for (g, r) in gens.iter().zip(&ratios).filter(|(g, _)| g.degree() == n) {
                if *r > best {
                    best = *r;
                    arg = g.key().to_owned();
                }
            }
            let bound = gronwall_bound(1.0, a * n as f64 + b, tf);
            rows.push(SemiregularityRow {
                t: format_rational(t),
                n,
                h: best,
                bound,
                argmax: arg.clone(),
                status: Status::from_bool(best <= bound * (1.0 + GUARD)),
            });
        }
    }
    let violation = rows.iter().find(|r| !r.status.is_pass()).cloned();
    Ok(SemiregularityReport {
        hopf: h.name(),
        family: family.name(),
        k,
        a,
        b,
        truncation: n_max,
        eta_norm,
        precondition: Status::from_bool(eta_norm <= 1.0 + GUARD),
        status: Status::from_bool(violation.is_none()),
        rows,
        violation,
    })
}
