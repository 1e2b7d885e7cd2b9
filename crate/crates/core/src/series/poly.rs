//! Sparse multivariate polynomials with rational coefficients, and
//! polynomial vector fields.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, json_rational, Rational};

/// `Σ c_e y^e` in `nvars` variables; exponent vectors map to nonzero
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(nvars, vec![0; nvars], c)
    }

    /// The coordinate `y_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, e, Rational::one())
    }

    pub fn term(nvars: usize, exponents: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exponents.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        p.add_term(exponents, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v * c);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        out.add_scaled(self, c);
        out
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.iter().zip(b).map(|(i, j)| i + j).collect(), x * y);
            }
        }
        out
    }

    /// `∂/∂y_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * Rational::from_integer(e[i].into()));
            }
        }
        out
    }

    /// `Σ_i v_i ∂p/∂y_i` for a constant direction `v`.
    pub fn directional(&self, v: &[Rational]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (i, vi) in v.iter().enumerate().filter(|(_, vi)| !vi.is_zero()) {
            out.add_scaled(&self.derivative(i), vi);
        }
        out
    }

    pub fn eval(&self, y: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            e.iter().zip(y).fold(c.clone(), |m, (&k, yi)| m * num_traits::pow(yi.clone(), k as usize)) + acc
        })
    }

    /// `[{exponents, coeff}]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!({ "exponents": e, "coeff": format_rational(c) }))
                .collect(),
        )
    }

    pub fn from_json(nvars: usize, v: &Value) -> Result<Self> {
        let bad = |what: String| Error::Parse(format!("polynomial: {what}"));
        let mut p = Self::zero(nvars);
        for t in v.as_array().ok_or_else(|| bad("expected an array of terms".into()))? {
            let e: Vec<u32> = t
                .get("exponents")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term without `exponents`".into()))?
                .iter()
                .map(|x| x.as_u64().map(|k| k as u32).ok_or_else(|| bad(format!("bad exponent {x}"))))
                .collect::<Result<_>>()?;
            if e.len() != nvars {
                return Err(bad(format!("exponent vector {e:?} has length {}, expected {nvars}", e.len())));
            }
            p.add_term(e, json_rational(t.get("coeff").ok_or_else(|| bad("term without `coeff`".into()))?)?);
        }
        Ok(p)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("y{}", i + 1) } else { format!("y{}^{k}", i + 1) })
                    .collect();
                if vars.is_empty() {
                    format_rational(c)
                } else {
                    format!("{}·{}", format_rational(c), vars.join("·"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A vector of polynomials in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    nvars: usize,
    components: Vec<Poly>,
}

impl PolyVectorField {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let nvars = components.first().map_or(0, Poly::nvars);
        if components.iter().any(|p| p.nvars() != nvars) {
            return Err(Error::InvalidArgument("components use different numbers of variables".into()));
        }
        Ok(Self { nvars, components })
    }

    /// An autonomous field `ℝ^d → ℝ^d`.
    pub fn square(components: Vec<Poly>) -> Result<Self> {
        let f = Self::new(components)?;
        if f.nvars != f.components.len() {
            return Err(Error::InvalidArgument(format!(
                "a field on ℝ^{} needs {} components, got {}",
                f.nvars,
                f.nvars,
                f.components.len()
            )));
        }
        Ok(f)
    }

    /// The identity map `y ↦ y`.
    pub fn identity(d: usize) -> Self {
        Self { nvars: d, components: (0..d).map(|i| Poly::var(d, i)).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn eval(&self, y: &[Rational]) -> Vec<Rational> {
        self.components.iter().map(|p| p.eval(y)).collect()
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self { nvars: self.nvars, components: self.components.iter().map(|p| p.scaled(c)).collect() }
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self { nvars: self.nvars, components: self.components.iter().zip(&other.components).map(|(a, b)| a.plus(b)).collect() }
    }

    /// Componentwise directional derivative along a constant vector.
    pub fn directional(&self, v: &[Rational]) -> Self {
        Self { nvars: self.nvars, components: self.components.iter().map(|p| p.directional(v)).collect() }
    }

    /// `g'(y)·f(y)` as a polynomial map: `(Σ_j f_j ∂_j g_i)_i`.
    pub fn derivative_along(&self, f: &Self) -> Self {
        let components = self
            .components
            .iter()
            .map(|g| {
                let mut out = Poly::zero(self.nvars);
                for (j, fj) in f.components.iter().enumerate() {
                    let dg = g.derivative(j);
                    if !dg.is_zero() {
                        out = out.plus(&dg.times(fj));
                    }
                }
                out
            })
            .collect();
        Self { nvars: self.nvars, components }
    }

    /// `{dim, components: [[{exponents, coeff}]]}`.
    pub fn to_json(&self) -> Value {
        json!({ "dim": self.nvars, "components": self.components.iter().map(Poly::to_json).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| Error::Parse("vector field: missing `dim`".into()))? as usize;
        let comps = v
            .get("components")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("vector field: missing `components`".into()))?;
        let components = comps.iter().map(|c| Poly::from_json(dim, c)).collect::<Result<Vec<_>>>()?;
        if components.is_empty() {
            return Ok(Self { nvars: dim, components });
        }
        Self::new(components)
    }
}

/// Coefficients `T_n(y₀)` of the flow `y(h) = Σ hⁿ T_n(y₀)` of `y' = f(y)`,
/// from iterated Lie derivatives `T_n = L_fⁿ(id)/n!`.
pub fn flow_taylor(f: &PolyVectorField, y0: &[Rational], order: u32) -> Vec<Vec<Rational>> {
    let mut g = PolyVectorField::identity(f.nvars());
    let mut out = vec![g.eval(y0)];
    let mut fact = Rational::one();
    for n in 1..=order {
        g = g.derivative_along(f);
        fact *= Rational::from_integer(n.into());
        out.push(g.eval(y0).into_iter().map(|c| c / &fact).collect());
    }
    out
}

/// `Σ_{n ≤ order} hⁿ T_n`.
pub fn taylor_sum(coeffs: &[Vec<Rational>], h: &Rational) -> Vec<Rational> {
    let d = coeffs.first().map_or(0, Vec::len);
    let mut out = vec![Rational::zero(); d];
    let mut hn = Rational::one();
    for c in coeffs {
        for (o, x) in out.iter_mut().zip(c) {
            *o += &hn * x;
        }
        hn *= h;
    }
    out
}
