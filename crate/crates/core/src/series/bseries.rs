//! Butcher series `B_f(a, y, h) = y + Σ_τ h^{|τ|}/σ(τ)·a(τ)·F_f(τ)(y)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::poly::PolyVectorField;
use super::{powers, SeriesTerms};
use crate::character::Character;
use crate::error::{Error, Result};
use crate::hopf::ck::ConnesKreimer;
use crate::hopf::tree::{trees_of_order, RootedTree};
use crate::par;
use crate::scalar::{format_rational, Rational, TargetAlgebra};

/// Symmetry coefficient, the order of the automorphism group of `τ`.
pub fn sigma(tau: &RootedTree) -> Rational {
    Rational::from_integer(tau.symmetry())
}

/// Coefficients of the exact flow, `a(τ) = 1/τ!`.
pub fn exact_flow(tau: &RootedTree) -> Rational {
    Rational::new(1.into(), tau.tree_factorial())
}

/// The exact-flow character on the rooted-tree algebra (coloured when
/// `colours > 0`), truncated at degree `n`.
pub fn exact_flow_character(n: u32, colours: u8) -> Result<Character<Rational>> {
    let hopf: Arc<dyn crate::HopfAlgebra> =
        if colours == 0 { Arc::new(ConnesKreimer::new()) } else { Arc::new(ConnesKreimer::coloured(colours)) };
    let values: Vec<_> = (1..=n)
        .flat_map(|k| trees_of_order(k, colours))
        .map(|t| (t.to_generator(), exact_flow(&t)))
        .collect();
    Character::new(hopf, n, values)
}

/// Reads tree coefficients off a character of a rooted-tree algebra.
pub fn character_coefficients<B: TargetAlgebra>(phi: &Character<B>) -> Result<impl Fn(&RootedTree) -> B + Sync + '_> {
    let name = phi.hopf().name();
    if !name.starts_with("ck") {
        return Err(Error::InvalidArgument(format!("tree coefficients need a rooted-tree algebra, got `{name}`")));
    }
    Ok(move |t: &RootedTree| phi.on_generator(&t.to_generator()))
}

/// Elementary differentials of every tree of order `≤ n`, built order by
/// order: the root's field is differentiated once along each child's value.
pub(crate) type Lift<'a> = &'a (dyn Fn(Option<u8>, &[Rational]) -> Vec<Rational> + Sync);

/// `field` picks the field for a root colour and `lift` embeds a child's
/// value as a direction in the full variable space.
pub(crate) fn differentials<'f>(
    n: u32,
    colours: u8,
    y: &[Rational],
    field: &(dyn Fn(Option<u8>) -> &'f PolyVectorField + Sync),
    lift: Lift<'_>,
) -> BTreeMap<RootedTree, Vec<Rational>> {
    let mut out: BTreeMap<RootedTree, Vec<Rational>> = BTreeMap::new();
    for k in 1..=n {
        let trees = trees_of_order(k, colours);
        let values = par::map(&trees, |t| {
            let mut g = field(t.colour()).clone();
            for c in t.children() {
                g = g.directional(&lift(c.colour(), &out[c]));
            }
            g.eval(y)
        });
        out.extend(trees.into_iter().zip(values));
    }
    out
}

/// `F_f(τ)(y)` for every tree of order `≤ n`.
pub fn elementary_differentials(f: &PolyVectorField, y: &[Rational], n: u32) -> BTreeMap<RootedTree, Vec<Rational>> {
    differentials(n, 0, y, &|_| f, &|_, v| v.to_vec())
}

/// `F_f(τ)(y) = f^{(m)}(y)(F_f(τ₁)(y), …, F_f(τ_m)(y))`.
pub fn elementary_differential(f: &PolyVectorField, tau: &RootedTree, y: &[Rational]) -> Vec<Rational> {
    let mut g = f.clone();
    for c in tau.children() {
        g = g.directional(&elementary_differential(f, c, y));
    }
    g.eval(y)
}

fn check_point(f: &PolyVectorField, y: &[Rational]) -> Result<()> {
    if f.dim() != f.nvars() || y.len() != f.nvars() {
        return Err(Error::InvalidArgument(format!(
            "field maps ℝ^{} → ℝ^{} but the point has {} coordinates",
            f.nvars(),
            f.dim(),
            y.len()
        )));
    }
    Ok(())
}

/// The B-series truncated at order `n`, grouped by order.
pub fn bseries_partial<B: TargetAlgebra>(
    a: &(dyn Fn(&RootedTree) -> B + Sync),
    f: &PolyVectorField,
    y: &[Rational],
    h: &Rational,
    n: u32,
) -> Result<SeriesTerms<B>> {
    check_point(f, y)?;
    let diffs = elementary_differentials(f, y, n);
    let hs = powers(h, n);
    let mut increments = vec![y.iter().map(B::from_rational).collect::<Vec<_>>()];
    increments.extend((1..=n).map(|k| {
        let mut inc = vec![B::zero(); y.len()];
        for t in trees_of_order(k, 0) {
            let c = a(&t);
            if c.is_zero() {
                continue;
            }
            let w = &hs[k as usize] / sigma(&t);
            for (acc, v) in inc.iter_mut().zip(&diffs[&t]) {
                if !v.is_zero() {
                    *acc = acc.plus(&c.scaled(&(&w * v)));
                }
            }
        }
        inc
    }));
    Ok(SeriesTerms { increments })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decay {
    /// Increments shrink by a factor below one at each of the last orders.
    Contracting,
    NotContracting,
    /// Every increment of positive order vanishes.
    Vanishing,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub h: String,
    /// Max-norm of the order-`n` increment, `n = 1..=N`.
    pub increments: Vec<f64>,
    pub ratios: Vec<f64>,
    pub verdict: Decay,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub max_order: u32,
    /// Orders over which the decay is judged.
    pub window: u32,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    /// Columns `h, order, increment, verdict`.
    pub fn to_csv(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            h: &'a str,
            order: usize,
            increment: f64,
            verdict: Decay,
        }
        crate::control::write_csv(self.rows.iter().flat_map(|r| {
            r.increments
                .iter()
                .enumerate()
                .map(move |(i, &increment)| Line { h: &r.h, order: i + 1, increment, verdict: r.verdict })
        }))
    }
}

const WINDOW: u32 = 4;

/// Increment magnitudes of the truncated B-series for each step size, with
/// a verdict on the last four orders.
pub fn convergence_probe<B: TargetAlgebra>(
    a: &(dyn Fn(&RootedTree) -> B + Sync),
    f: &PolyVectorField,
    y: &[Rational],
    hs: &[Rational],
    n: u32,
) -> Result<ConvergenceReport> {
    if n < WINDOW {
        return Err(Error::InvalidArgument(format!("the probe needs at least {WINDOW} orders, got {n}")));
    }
    check_point(f, y)?;
    let diffs = elementary_differentials(f, y, n);
    // per-order sums without the step size: Σ_{|τ|=k} a(τ)/σ(τ)·F(τ)(y)
    let unit: Vec<Vec<B>> = (1..=n)
        .map(|k| {
            let mut inc = vec![B::zero(); y.len()];
            for t in trees_of_order(k, 0) {
                let c = a(&t).scaled(&(Rational::one() / sigma(&t)));
                for (acc, v) in inc.iter_mut().zip(&diffs[&t]) {
                    *acc = acc.plus(&c.scaled(v));
                }
            }
            inc
        })
        .collect();
    let rows = hs
        .iter()
        .map(|h| {
            let p = powers(h, n);
            let increments: Vec<f64> = unit
                .iter()
                .enumerate()
                .map(|(i, inc)| inc.iter().map(|v| v.scaled(&p[i + 1]).norm()).fold(0.0, f64::max))
                .collect();
            let ratios: Vec<f64> = increments.windows(2).map(|w| w[1] / w[0]).collect();
            let tail = &increments[(n - WINDOW) as usize..];
            let verdict = if increments.iter().all(|&x| x == 0.0) {
                Decay::Vanishing
            } else if tail.iter().all(|&x| x > 0.0) && tail.windows(2).all(|w| w[1] < w[0]) {
                Decay::Contracting
            } else {
                Decay::NotContracting
            };
            ConvergenceRow { h: format_rational(h), increments, ratios, verdict }
        })
        .collect();
    Ok(ConvergenceReport { max_order: n, window: WINDOW, rows })
}
