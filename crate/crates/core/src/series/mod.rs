//! B-series, P-series and word series over polynomial vector fields.

pub mod bseries;
pub mod poly;
pub mod pseries;
pub mod wordseries;

use serde_json::Value;

use crate::scalar::{to_f64, Rational, TargetAlgebra};

pub use bseries::{
    bseries_partial, character_coefficients, convergence_probe, elementary_differential, elementary_differentials,
    exact_flow, exact_flow_character, sigma, ConvergenceRow, ConvergenceReport, Decay,
};
pub use poly::{flow_taylor, taylor_sum, Poly, PolyVectorField};
pub use pseries::{pseries_partial, ColouredPolySystem};
pub use wordseries::{iterated_integral_character, iterated_integrals, word_basis_function, wordseries_partial, WordSystem};

/// A truncated series grouped by order: `increments[n]` is the sum of all
/// order-`n` terms, `increments[0]` the leading term.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTerms<B> {
    pub increments: Vec<Vec<B>>,
}

impl<B: TargetAlgebra> SeriesTerms<B> {
    pub fn order(&self) -> u32 {
        self.increments.len().saturating_sub(1) as u32
    }

    /// Sum of the increments of order `≤ n`.
    pub fn partial(&self, n: u32) -> Vec<B> {
        let dim = self.increments.first().map_or(0, Vec::len);
        let mut acc = vec![B::zero(); dim];
        for inc in self.increments.iter().take(n as usize + 1) {
            for (a, x) in acc.iter_mut().zip(inc) {
                *a = a.plus(x);
            }
        }
        acc
    }

    pub fn total(&self) -> Vec<B> {
        self.partial(self.order())
    }

    /// Max-norm of the order-`n` increment.
    pub fn increment_norm(&self, n: u32) -> f64 {
        self.increments[n as usize].iter().map(B::norm).fold(0.0, f64::max)
    }

    /// CSV with columns `order, increment, partial_1 … partial_d`.
    pub fn to_csv(&self) -> String {
        let dim = self.increments.first().map_or(0, Vec::len);
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["order".to_owned(), "increment".to_owned()];
        header.extend((1..=dim).map(|i| format!("partial_{i}")));
        w.write_record(&header).expect("in-memory CSV write");
        let mut acc = vec![B::zero(); dim];
        for (n, inc) in self.increments.iter().enumerate() {
            for (a, x) in acc.iter_mut().zip(inc) {
                *a = a.plus(x);
            }
            let mut row = vec![n.to_string(), self.increment_norm(n as u32).to_string()];
            row.extend(acc.iter().map(|v| cell(&v.to_json())));
            w.write_record(&row).expect("in-memory CSV write");
        }
        String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `hⁿ` for `n = 0..=order`.
pub(crate) fn powers(h: &Rational, order: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(order as usize + 1);
    let mut p = Rational::from_integer(1.into());
    for _ in 0..=order {
        out.push(p.clone());
        p *= h;
    }
    out
}

/// Least-squares slope of `log err` against `log h`.
pub fn measured_order(samples: &[(Rational, Rational)]) -> f64 {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .map(|(h, e)| (to_f64(h).ln(), log_abs(e)))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `ln|q|` without underflow for tiny rationals.
fn log_abs(q: &Rational) -> f64 {
    if num_traits::Zero::is_zero(q) {
        return f64::NEG_INFINITY;
    }
    let ln = |x: &num_bigint::BigUint| -> f64 {
        let shift = x.bits().saturating_sub(60);
        let top: f64 = (x >> shift).to_string().parse().expect("integer");
        top.ln() + shift as f64 * std::f64::consts::LN_2
    };
    ln(q.numer().magnitude()) - ln(q.denom().magnitude())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn slope_of_exact_powers() {
        let samples: Vec<_> = (3..8).map(|k| (rat(1, 1 << k), num_traits::pow(rat(1, 1 << k), 5))).collect();
        assert!((measured_order(&samples) - 5.0).abs() < 1e-9);
    }

    #[test]
    fn log_of_tiny_rationals() {
        let q = num_traits::pow(rat(1, 1024), 80);
        assert!((log_abs(&q) + 800.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }
}
