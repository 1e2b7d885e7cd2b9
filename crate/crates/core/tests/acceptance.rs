//! Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. Runs without the libtest harness so the lines print in order.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{random_character, random_field, random_inf_char, random_point, rng, unit_rational};
use hopfchar::character::{convolve_maps, Character, InfChar, NormScope};
use hopfchar::control::{antipode_ratio, coproduct_ratio, rlb_check, Growth};
use hopfchar::evolution::{constant_curve, curve_at, evolve, semiregularity_check, InfCharCurve, TimePoly};
use hopfchar::growth::{verify_family, Axiom, Grid, GrowthFamily, Weight};
use hopfchar::hopf::axioms::{check_hopf_axioms, default_scope, AxiomsReport, Check};
use hopfchar::hopf::bell::bell_partial;
use hopfchar::hopf::fdb::{admissible_tuples, generator, FdbBasis};
use hopfchar::hopf::lyndon::lyndon_words;
use hopfchar::hopf::shuffle::Shuffle;
use hopfchar::hopf::tree::trees_of_order;
use hopfchar::hopf::{instance, Binomial};
use hopfchar::scalar::{binomial, catalan, factorial, int, rat, to_f64, Rational};
use hopfchar::series::*;
use hopfchar::GradedVector;

/// Wall-clock budget for the axiom suite.
const AXIOM_BUDGET: Duration = Duration::from_secs(60);
/// `|B-series − e^h|` at `h = 1/2`, `N = 8`.
const EXP_TOL: f64 = 1e-6;
/// `|word series − e|` at `N = 8`.
const WORD_EXP_TOL: f64 = 1e-4;
/// Relative deviation of the measured convergence order from `N + 1`.
const ORDER_TOL: f64 = 0.10;
/// `0.9 ≤ e^{−1/10}` is decided up to this slack.
const COUNTEREXAMPLE_TOL: f64 = 1e-12;

type Outcome = Result<String, String>;
type Criterion<'a> = Box<dyn FnOnce() -> Outcome + panic::UnwindSafe + 'a>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const AXIOM_RANGES: [(&str, u32); 6] =
    [("ck", 8), ("ck2", 7), ("shuffle:ab", 7), ("fdb-a", 8), ("fdb-x", 8), ("binomial", 12)];

fn axiom_reports() -> (Vec<AxiomsReport>, Duration) {
    let start = Instant::now();
    let reports = AXIOM_RANGES
        .iter()
        .map(|&(name, n)| {
            let h = instance(name).unwrap();
            check_hopf_axioms(h.as_ref(), n, default_scope(h.as_ref()))
        })
        .collect();
    (reports, start.elapsed())
}

fn hopf_axioms(reports: &[AxiomsReport], elapsed: Duration) -> Outcome {
    let checks = [Check::Coassociativity, Check::CounitLeft, Check::CounitRight, Check::AntipodeLeft, Check::AntipodeRight];
    let mut elements = 0;
    for r in reports {
        for c in checks {
            ensure(r.passed_check(c), || format!("{} {c:?}: {:?}", r.instance, r.first_failure()))?;
        }
        elements += r.elements();
    }
    ensure(elapsed <= AXIOM_BUDGET, || format!("took {elapsed:.1?}"))?;
    Ok(format!("{elements} elements in {elapsed:.1?}"))
}

fn antipode_agreement(reports: &[AxiomsReport]) -> Outcome {
    for r in reports {
        ensure(r.passed_check(Check::AntipodeAgreement), || format!("{}: {:?}", r.instance, r.first_failure()))?;
    }
    Ok(format!("{} instances", reports.len()))
}

/// Canonical string of the rooted tree given by a parent array.
fn canonical(parents: &[usize], node: usize) -> String {
    let mut kids: Vec<String> = (1..parents.len()).filter(|&c| parents[c] == node).map(|c| canonical(parents, c)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Counts unlabelled rooted trees on `n` nodes by canonicalising every
/// parent array with `parent[i] < i`.
fn brute_force_tree_count(n: usize) -> usize {
    let mut seen = BTreeSet::new();
    let mut parents = vec![0usize; n];
    fn rec(i: usize, parents: &mut Vec<usize>, seen: &mut BTreeSet<String>) {
        if i == parents.len() {
            seen.insert(canonical(parents, 0));
            return;
        }
        for p in 0..i {
            parents[i] = p;
            rec(i + 1, parents, seen);
        }
    }
    rec(1, &mut parents, &mut seen);
    seen.len()
}

fn ck_cardinality() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=8u32 {
        let trees = trees_of_order(n, 0);
        for t in &trees {
            let bound = 1usize << t.order();
            ensure(t.ordered_subtrees().len() <= bound, || format!("|OST({t})| = {}", t.ordered_subtrees().len()))?;
            ensure(t.edge_cut_forests().len() <= bound, || format!("|P({t})| = {}", t.edge_cut_forests().len()))?;
        }
        let oracle = brute_force_tree_count(n as usize);
        ensure(trees.len() == oracle, || format!("order {n}: {} trees, oracle {oracle}", trees.len()))?;
        counts.push(trees.len());
    }
    ensure(counts == [1, 1, 2, 4, 9, 20, 48, 115], || format!("counts {counts:?}"))?;
    Ok(format!("counts {counts:?}"))
}

fn fdb_estimates() -> Outcome {
    let fdb = instance("fdb-a").unwrap();
    let pow = GrowthFamily::builtin("pow").unwrap();
    for n in 1..=8u32 {
        let delta = fdb.coproduct(&fdb.as_basis(&generator(FdbBasis::A, n)));
        for k in 1..=4 {
            let lhs = delta.l1_norm(&pow, k);
            let rhs = pow.eval(k, n).scaled(&Rational::from_integer(num_traits::pow(2.into(), n as usize)));
            ensure(lhs.le(&rhs), || format!("n={n} k={k}: {lhs} > {rhs}"))?;
        }
    }
    for n in 1..=10i64 {
        let mass = fdb.elementary_coproduct(&generator(FdbBasis::A, n as u32)).mass();
        ensure(mass == int(n * (n + 1) / 2 - 1), || format!("elementary mass at n={n} is {mass}"))?;
    }
    for n in 0..=10u32 {
        let xs: Vec<Rational> = (1..=n + 1).map(|i| Rational::from_integer(factorial(i))).collect();
        for r in 0..=n {
            let lhs = bell_partial(n + 1, r + 1, &xs);
            let rhs = Rational::new(binomial(n, r) * factorial(n + 1), factorial(r + 1));
            ensure(lhs == rhs, || format!("Bell n={n} r={r}: {lhs} ≠ {rhs}"))?;
        }
    }
    for r in 1..=6 {
        let count = admissible_tuples(r).len();
        ensure(num_bigint::BigInt::from(count) == catalan(r), || format!("r={r}: {count} tuples"))?;
    }
    Ok("norm bound k≤4 n≤8, mass n≤10, Bell n≤10, Catalan r≤6".into())
}

fn rlb_verdicts() -> Outcome {
    let ck = instance("ck").unwrap();
    let r = rlb_check(ck.as_ref(), 8).map_err(|e| e.to_string())?;
    let expected: Vec<Rational> = (1..=8).map(|n| int(n - 1)).collect();
    ensure(r.values == expected, || format!("ck values {:?}", r.values))?;
    ensure((r.a.clone(), r.b.clone()) == (int(1), int(0)), || format!("ck (a, b) = ({}, {})", r.a, r.b))?;
    let fdb = instance("fdb-a").unwrap();
    let f = rlb_check(fdb.as_ref(), 8).map_err(|e| e.to_string())?;
    ensure(f.verdict == Growth::Superlinear, || format!("fdb verdict {:?}", f.verdict))?;
    Ok("ck e(n) = n−1, fdb superlinear".into())
}

fn exact(w: &Weight) -> Result<Rational, String> {
    w.as_exact().cloned().ok_or_else(|| format!("{w} is not exact"))
}

fn control_pairs() -> Outcome {
    let pow = GrowthFamily::builtin("pow").unwrap();
    let mut worst = int(0);
    for name in ["ck", "fdb-a"] {
        let h = instance(name).unwrap();
        for k1 in 1..=2 {
            let r = coproduct_ratio(h.as_ref(), &pow, k1, 2 * k1, 8).map_err(|e| e.to_string())?;
            let c = exact(&r.c_hat)?;
            ensure(c <= int(1), || format!("{name} k1={k1}: C_hat {c}"))?;
            worst = worst.max(c);
        }
    }
    let fdb = instance("fdb-a").unwrap();
    let r = antipode_ratio(fdb.as_ref(), &pow, 1, 32, 8).map_err(|e| e.to_string())?;
    let c = exact(&r.c_hat)?;
    ensure(to_f64(&c).is_finite(), || format!("antipode C_hat {c}"))?;
    Ok(format!("Δ C_hat ≤ {worst}, fdb S C_hat = {c}"))
}

fn group_laws() -> Outcome {
    let pow = GrowthFamily::builtin("pow").unwrap();
    let n = 6;
    for name in ["ck", "fdb-a"] {
        let h = instance(name).unwrap();
        let eps = Character::counit(Arc::clone(&h), n).unwrap();
        let c_hat = coproduct_ratio(h.as_ref(), &pow, 1, 2, n).map_err(|e| e.to_string())?.c_hat;
        for seed in 0..20u64 {
            let phi = random_character(&h, n, 3 * seed);
            let psi = random_character(&h, n, 3 * seed + 1);
            let chi = random_character(&h, n, 3 * seed + 2);
            let (p, q, r) = (phi.table(), psi.table(), chi.table());
            let left = convolve_maps(&h, n, &convolve_maps(&h, n, &p, &q), &r);
            let right = convolve_maps(&h, n, &p, &convolve_maps(&h, n, &q, &r));
            ensure(left == right, || format!("{name} seed {seed}: associativity"))?;
            let pq = phi.convolve(&psi).unwrap();
            ensure(pq.first_mismatch(&convolve_maps(&h, n, &p, &q)).is_none(), || format!("{name} seed {seed}: product table"))?;
            ensure(phi.convolve(&eps).unwrap() == phi && eps.convolve(&phi).unwrap() == phi, || {
                format!("{name} seed {seed}: unit")
            })?;
            let inv = phi.inverse();
            ensure(phi.convolve(&inv).unwrap() == eps && inv.convolve(&phi).unwrap() == eps, || {
                format!("{name} seed {seed}: inverse")
            })?;
            let lhs = pq.linf_norm(&pow, 2, NormScope::Generators).value;
            let rhs = phi
                .linf_norm(&pow, 1, NormScope::Monomials)
                .value
                .times(&psi.linf_norm(&pow, 1, NormScope::Monomials).value)
                .times(&c_hat);
            ensure(lhs.le(&rhs), || format!("{name} seed {seed}: closure {lhs} > {rhs}"))?;
        }
    }
    Ok("20 seeds each on ck and fdb-a at N = 6".into())
}

fn counterexample() -> Outcome {
    let r = hopfchar::character::counterexample_demo().map_err(|e| e.to_string())?;
    ensure(r.k == 10 && r.controlled, || format!("controlled = {} at k = {}", r.controlled, r.k))?;
    ensure(r.value <= (-0.1f64).exp() + COUNTEREXAMPLE_TOL, || format!("{} > e^(-1/10)", r.value))?;
    ensure((r.product_value - 1.8).abs() <= COUNTEREXAMPLE_TOL, || format!("(φ⋆φ)(X) = {}", r.product_value))?;
    ensure(r.k_searched >= 1_000_000 && r.product_uncontrolled, || {
        format!("uncontrolled = {} up to k = {}", r.product_uncontrolled, r.k_searched)
    })?;
    Ok(format!("(φ⋆φ)(X) = {}, smallest excess {:.3e}", r.product_value, r.smallest_excess))
}

fn exp_log() -> Outcome {
    let n = 6;
    for name in ["ck", "fdb-a", "fdb-x", "binomial"] {
        let h = instance(name).unwrap();
        for seed in 0..3 {
            let eta = random_inf_char(&h, n, seed);
            ensure(eta.exp().log() == eta, || format!("{name} seed {seed}: log∘exp"))?;
            let chi = random_character(&h, n, 100 + seed);
            ensure(chi.log().exp() == chi, || format!("{name} seed {seed}: exp∘log"))?;
        }
    }
    let h = instance("binomial").unwrap();
    let c = rat(-7, 3);
    let e = InfChar::new(Arc::clone(&h), n, [(Binomial::x(), c.clone())]).unwrap().exp();
    let x = Character::new(h, n, [(Binomial::x(), c.clone())]).unwrap();
    ensure(e == x, || "binomial exp(η) differs from the character x = c".into())?;
    Ok("ck, fdb-a, fdb-x, binomial at N = 6".into())
}

fn evolution() -> Outcome {
    let n = 6;
    for name in ["ck", "fdb-a", "binomial"] {
        let h = instance(name).unwrap();
        let eta = random_inf_char(&h, n, 17);
        let gamma = evolve(&constant_curve(&eta));
        ensure(curve_at(&gamma, &int(1)) == eta.exp(), || format!("{name}: γ(1) ≠ exp(η)"))?;
        for (s, t) in [(rat(1, 4), rat(1, 2)), (rat(1, 3), rat(2, 3)), (rat(-1, 2), rat(5, 7))] {
            let lhs = curve_at(&gamma, &(&s + &t));
            let rhs = curve_at(&gamma, &s).convolve(&curve_at(&gamma, &t)).unwrap();
            ensure(lhs == rhs, || format!("{name}: cocycle fails at s={s} t={t}"))?;
        }
    }
    let h = instance("ck").unwrap();
    let pow = GrowthFamily::builtin("pow").unwrap();
    let samples = [rat(1, 4), rat(1, 2), int(1)];
    let mut rows = 0;
    for seed in 0..10 {
        let mut r = rng(seed);
        let values: Vec<_> = h
            .generators_up_to(8)
            .into_iter()
            .map(|g| (g, TimePoly::constant(unit_rational(&mut r))))
            .collect();
        let eta = InfCharCurve::new(Arc::clone(&h), 8, values).unwrap();
        let report = semiregularity_check(&eta, &pow, 1, (1.0, 0.0), &samples).map_err(|e| e.to_string())?;
        ensure(report.precondition.is_pass(), || format!("seed {seed}: ‖η‖ = {}", report.eta_norm))?;
        ensure(report.status.is_pass(), || format!("seed {seed}: {:?}", report.violation))?;
        rows += report.rows.len();
    }
    Ok(format!("exp and cocycle exact; {rows} Gronwall rows hold"))
}

fn growth_families() -> Outcome {
    for name in ["pow", "pow2", "pow-fact", "pow-nsq", "pow-factk"] {
        let r = verify_family(&GrowthFamily::builtin(name).unwrap(), Grid::default());
        ensure(r.failing().is_empty(), || format!("{name} fails {:?}", r.failing()))?;
    }
    let anti = verify_family(&GrowthFamily::builtin("anti").unwrap(), Grid::default());
    ensure(anti.failing() == [Axiom::W3], || format!("anti fails {:?}", anti.failing()))?;
    Ok("five builtins pass, anti fails W3 only".into())
}

fn series() -> Outcome {
    let x = PolyVectorField::square(vec![Poly::var(1, 0)]).unwrap();
    let b = bseries_partial(&exact_flow, &x, &[int(1)], &rat(1, 2), 8).map_err(|e| e.to_string())?;
    let exp_err = (to_f64(&b.total()[0]) - 0.5f64.exp()).abs();
    ensure(exp_err <= EXP_TOL, || format!("|B − e^h| = {exp_err:e}"))?;

    for seed in 0..5u64 {
        let d = 1 + (seed % 2) as usize;
        let f = random_field(d, seed);
        let y = random_point(d, seed);
        let b = bseries_partial(&exact_flow, &f, &y, &int(1), 6).map_err(|e| e.to_string())?;
        ensure(b.increments == flow_taylor(&f, &y, 6), || format!("Taylor mismatch for seed {seed}"))?;
    }

    let n = 6;
    let sq = PolyVectorField::square(vec![Poly::var(1, 0).times(&Poly::var(1, 0))]).unwrap();
    let samples: Vec<(Rational, Rational)> = (3..=7)
        .map(|k| {
            let h = rat(1, 1 << k);
            let total = bseries_partial(&exact_flow, &sq, &[int(1)], &h, n).unwrap().total();
            let exact = int(1) / (int(1) - &h);
            (h, &total[0] - exact)
        })
        .collect();
    let slope = measured_order(&samples);
    let target = (n + 1) as f64;
    ensure((slope - target).abs() <= ORDER_TOL * target, || format!("measured order {slope}"))?;

    let sys = WordSystem::autonomous("a", vec![x]).map_err(|e| e.to_string())?;
    let delta = |w: &[u8]| Rational::new(1.into(), factorial(w.len() as u32));
    let w = wordseries_partial(&delta, &sys, &[int(1)], 8).map_err(|e| e.to_string())?;
    let word_err = (to_f64(&w.total()[0]) - std::f64::consts::E).abs();
    ensure(word_err <= WORD_EXP_TOL, || format!("|word series − e| = {word_err:e}"))?;

    let f = PolyVectorField::new(vec![Poly::var(2, 1)]).unwrap();
    let g = PolyVectorField::new(vec![Poly::var(2, 0).scaled(&int(-1))]).unwrap();
    let rot = ColouredPolySystem::new(f, g).map_err(|e| e.to_string())?;
    let p = pseries_partial(&exact_flow, &rot, &[int(1)], &[int(0)], &int(1), 8).map_err(|e| e.to_string())?;
    ensure(p.increments == flow_taylor(&rot.joint(), &[int(1), int(0)], 8), || "rotation P-series mismatch".into())?;

    Ok(format!("e^h err {exp_err:.1e}, order {slope:.2}, word err {word_err:.1e}"))
}

fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Aperiodic necklaces of length `n` over `k` letters.
fn necklaces(n: u64, k: i64) -> i64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| mobius(d) * k.pow((n / d) as u32)).sum::<i64>() / n as i64
}

fn all_words(letters: u8, len: usize) -> Vec<Vec<u8>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter().flat_map(|w| (0..letters).map(move |c| [w.clone(), vec![c]].concat())).collect()
    })
}

fn lyndon() -> Outcome {
    for letters in [2u8, 3] {
        let mut by_len: BTreeMap<usize, i64> = BTreeMap::new();
        for w in lyndon_words(letters, 8) {
            *by_len.entry(w.len()).or_default() += 1;
        }
        for len in 1..=8usize {
            let got = by_len.get(&len).copied().unwrap_or(0);
            let want = necklaces(len as u64, letters as i64);
            ensure(got == want, || format!("{letters} letters, length {len}: {got} vs {want}"))?;
        }
    }
    let mut checked = 0;
    for alphabet in ["ab", "abc"] {
        let sh = Shuffle::new(alphabet).unwrap();
        for len in 0..=5 {
            for w in all_words(sh.letter_count(), len) {
                let back = sh.expand(&sh.lyndon_rewrite(&w));
                ensure(back == GradedVector::from_monomial(sh.word_monomial(&w)), || {
                    format!("round trip fails for {}", sh.word_string(&w))
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("counts to length 8, {checked} round trips"))
}

fn run(f: impl FnOnce() -> Outcome + panic::UnwindSafe) -> Outcome {
    panic::catch_unwind(f).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    })
}

fn main() -> ExitCode {
    let (reports, elapsed) = axiom_reports();
    let reports = &reports;
    let criteria: Vec<(&str, Criterion<'_>)> = vec![
        ("Hopf axioms", Box::new(move || hopf_axioms(reports, elapsed))),
        ("antipode cross-check", Box::new(move || antipode_agreement(reports))),
        ("CK cardinality bounds", Box::new(ck_cardinality)),
        ("FdB estimates", Box::new(fdb_estimates)),
        ("RLB verdicts", Box::new(rlb_verdicts)),
        ("control pairs", Box::new(control_pairs)),
        ("group laws", Box::new(group_laws)),
        ("counterexample", Box::new(counterexample)),
        ("exp/log", Box::new(exp_log)),
        ("evolution", Box::new(evolution)),
        ("growth families", Box::new(growth_families)),
        ("series", Box::new(series)),
        ("Lyndon machinery", Box::new(lyndon)),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run(check);
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{took:.1?}]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{took:.1?}]", i + 1);
            }
        }
    }
    println!("{} of 13 criteria pass", 13 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
