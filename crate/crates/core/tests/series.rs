mod common;

use common::{random_field, random_point, rng, small_rational};
use hopfchar::evolution::TimePoly;
use hopfchar::hopf::tree::{trees_of_order, RootedTree};
use hopfchar::scalar::{factorial, int, rat, to_f64, Dual, Rational};
use hopfchar::series::*;
use proptest::prelude::*;

/// Parent array in preorder, with node colours.
fn flatten(t: &RootedTree) -> (Vec<Option<usize>>, Vec<Option<u8>>) {
    fn go(t: &RootedTree, parent: Option<usize>, ps: &mut Vec<Option<usize>>, cs: &mut Vec<Option<u8>>) {
        let me = ps.len();
        ps.push(parent);
        cs.push(t.colour());
        for c in t.children() {
            go(c, Some(me), ps, cs);
        }
    }
    let (mut ps, mut cs) = (Vec::new(), Vec::new());
    go(t, None, &mut ps, &mut cs);
    (ps, cs)
}

/// Counts colour-preserving bijections of the nodes that commute with the
/// parent map, by trying every permutation.
fn automorphisms(t: &RootedTree) -> u64 {
    let (ps, cs) = flatten(t);
    let n = ps.len();
    fn rec(i: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, ps: &[Option<usize>], cs: &[Option<u8>]) -> u64 {
        let n = ps.len();
        if i == n {
            let ok = (0..n).all(|v| ps[perm[v]] == ps[v].map(|p| perm[p]) && cs[perm[v]] == cs[v]);
            return ok as u64;
        }
        let mut total = 0;
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                perm.push(j);
                total += rec(i + 1, perm, used, ps, cs);
                perm.pop();
                used[j] = false;
            }
        }
        total
    }
    rec(0, &mut Vec::with_capacity(n), &mut vec![false; n], &ps, &cs)
}

fn scalar(p: Poly) -> PolyVectorField {
    PolyVectorField::square(vec![p]).unwrap()
}

fn y_squared() -> PolyVectorField {
    scalar(Poly::var(1, 0).times(&Poly::var(1, 0)))
}

fn is_chain(t: &RootedTree) -> bool {
    match t.children() {
        [] => true,
        [c] => is_chain(c),
        _ => false,
    }
}

#[test]
fn sigma_counts_automorphisms() {
    assert_eq!(sigma(&RootedTree::parse("[B,B]").unwrap()), int(2));
    assert_eq!(sigma(&RootedTree::parse("[[B]]").unwrap()), int(1));
    for n in 1..=7 {
        for t in trees_of_order(n, 0) {
            assert_eq!(sigma(&t), int(automorphisms(&t) as i64), "{t}");
        }
    }
    for n in 1..=5 {
        for t in trees_of_order(n, 2) {
            assert_eq!(sigma(&t), int(automorphisms(&t) as i64), "{t}");
        }
    }
}

#[test]
fn exact_flow_matches_symbolic_taylor() {
    for seed in 0..5u64 {
        let d = 1 + (seed % 2) as usize;
        let f = random_field(d, seed);
        let y = random_point(d, seed);
        let taylor = flow_taylor(&f, &y, 6);
        let b = bseries_partial(&exact_flow, &f, &y, &int(1), 6).unwrap();
        assert_eq!(b.increments, taylor, "seed {seed}");
        let h = small_rational(&mut rng(seed));
        assert_eq!(bseries_partial(&exact_flow, &f, &y, &h, 6).unwrap().total(), taylor_sum(&taylor, &h));
    }
}

#[test]
fn exponential_at_half_step() {
    let f = scalar(Poly::var(1, 0));
    let b = bseries_partial(&exact_flow, &f, &[int(1)], &rat(1, 2), 8).unwrap();
    assert!((to_f64(&b.total()[0]) - 0.5f64.exp()).abs() < 1e-6);
}

#[test]
fn order_sums_of_exact_flow() {
    for n in 1..=8u32 {
        let trees = trees_of_order(n, 0);
        // the y' = y Taylor coefficient comes from the chain alone
        let chain: Rational = trees.iter().filter(|t| is_chain(t)).map(exact_flow).sum();
        assert_eq!(chain, Rational::new(1.into(), factorial(n)));
        // Σ n!/(σ·τ!) counts recursive trees on n nodes, (n−1)!
        let s: Rational = trees.iter().map(|t| exact_flow(t) / sigma(t)).sum();
        assert_eq!(s, rat(1, n as i64));
    }
}

#[test]
fn square_field_gives_geometric_series() {
    let b = bseries_partial(&exact_flow, &y_squared(), &[int(1)], &int(1), 8).unwrap();
    assert!(b.increments.iter().all(|inc| inc == &vec![int(1)]));
}

#[test]
fn convergence_order_is_n_plus_one() {
    let n = 6;
    let samples: Vec<(Rational, Rational)> = (3..=7)
        .map(|k| {
            let h = rat(1, 1 << k);
            let b = bseries_partial(&exact_flow, &y_squared(), &[int(1)], &h, n).unwrap().total();
            let exact = int(1) / (int(1) - &h);
            (h, (&b[0] - exact))
        })
        .collect();
    let slope = measured_order(&samples);
    assert!((slope - (n + 1) as f64).abs() <= 0.1 * (n + 1) as f64, "slope {slope}");
}

#[test]
fn convergence_probe_verdicts() {
    let f = y_squared();
    let y = [int(1)];
    let pow2 = |t: &RootedTree| int(1 << t.order());
    let r = convergence_probe(&pow2, &f, &y, &[rat(1, 100)], 8).unwrap();
    assert_eq!(r.rows[0].verdict, Decay::Contracting);
    let fact = |t: &RootedTree| Rational::from_integer(factorial(t.order()));
    let hs = [rat(1, 2), rat(1, 4), rat(1, 8)];
    let r = convergence_probe(&fact, &f, &y, &hs, 12).unwrap();
    for row in &r.rows {
        assert_eq!(row.verdict, Decay::NotContracting, "h = {}", row.h);
        let tail = &row.increments[8..];
        assert!(tail.windows(2).all(|w| w[1] > w[0]), "h = {}: {:?}", row.h, row.increments);
    }
    let r = convergence_probe(&|_: &RootedTree| int(0), &f, &y, &hs, 6).unwrap();
    assert!(r.rows.iter().all(|row| row.verdict == Decay::Vanishing));
    assert!(r.to_csv().starts_with("h,order,increment,verdict"));
}

#[test]
fn dual_coefficients_differentiate_in_the_step() {
    // a(τ) + ε·|τ|a(τ)/h makes the ε-part the h-derivative of the series
    let h = rat(1, 3);
    let a = |t: &RootedTree| {
        let v = exact_flow(t);
        Dual::new(v.clone(), v * int(t.order() as i64) / &h)
    };
    let f = scalar(Poly::var(1, 0));
    let b = bseries_partial(&a, &f, &[int(1)], &h, 8).unwrap().total();
    let below = bseries_partial(&exact_flow, &f, &[int(1)], &h, 7).unwrap().total();
    assert_eq!(b[0].eps, below[0]);
}

#[test]
fn doubling_the_field_scales_by_powers_of_two() {
    for seed in 0..3u64 {
        let f = random_field(2, seed);
        let f2 = f.scaled(&int(2));
        let y = random_point(2, seed);
        let a = elementary_differentials(&f, &y, 5);
        let b = elementary_differentials(&f2, &y, 5);
        for (t, v) in &a {
            let scale = int(1 << t.order());
            let expected: Vec<Rational> = v.iter().map(|x| x * &scale).collect();
            assert_eq!(b[t], expected, "{t}");
        }
    }
}

#[test]
fn csv_lists_partial_sums() {
    let b = bseries_partial(&exact_flow, &y_squared(), &[int(1)], &rat(1, 2), 3).unwrap();
    let csv = b.to_csv();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "order,increment,partial_1");
    assert_eq!(lines[4], "3,0.125,15/8");
}

#[test]
fn word_series_exponential() {
    let sys = WordSystem::autonomous("a", vec![scalar(Poly::var(1, 0))]).unwrap();
    let delta = |w: &[u8]| Rational::new(1.into(), factorial(w.len() as u32));
    let s = wordseries_partial(&delta, &sys, &[int(1)], 8).unwrap().total();
    assert!((to_f64(&s[0]) - std::f64::consts::E).abs() < 1e-4);
    let one_letter = wordseries_partial(&delta, &sys, &[int(3)], 1).unwrap().total();
    assert_eq!(one_letter, vec![int(6)]);
}

#[test]
fn word_series_matches_bseries_of_exact_flow() {
    for seed in 0..4u64 {
        let d = 1 + (seed % 2) as usize;
        let f = random_field(d, seed + 10);
        let x = random_point(d, seed + 10);
        let sys = WordSystem::autonomous("a", vec![f.clone()]).unwrap();
        let delta = |w: &[u8]| Rational::new(1.into(), factorial(w.len() as u32));
        let w = wordseries_partial(&delta, &sys, &x, 6).unwrap();
        let b = bseries_partial(&exact_flow, &f, &x, &int(1), 6).unwrap();
        assert_eq!(w.increments, b.increments, "seed {seed}");
    }
}

#[test]
fn third_word_basis_function() {
    let fa = random_field(2, 1);
    let fb = random_field(2, 2);
    let fc = random_field(2, 3);
    let x = random_point(2, 4);
    let sys = WordSystem::autonomous("abc", vec![fa.clone(), fb.clone(), fc.clone()]).unwrap();
    let (vb, vc) = (fb.eval(&x), fc.eval(&x));
    // f''_a(f_b, f_c) + f'_a(f'_b f_c)
    let second = fa.directional(&vb).directional(&vc).eval(&x);
    let inner = fb.directional(&vc).eval(&x);
    let first = fa.directional(&inner).eval(&x);
    let expected: Vec<Rational> = second.iter().zip(&first).map(|(u, v)| u + v).collect();
    let cba = word_basis_function(&sys, &[2, 1, 0]).unwrap();
    assert_eq!(cba.eval(&x), expected);
    let ba = word_basis_function(&sys, &[1, 0]).unwrap();
    assert_eq!(ba.eval(&x), fa.directional(&vb).eval(&x));
}

#[test]
fn two_letter_series_is_the_summed_flow() {
    let fa = random_field(2, 21);
    let fb = random_field(2, 22);
    let x = random_point(2, 23);
    let sys = WordSystem::autonomous("ab", vec![fa.clone(), fb.clone()]).unwrap();
    let delta = |w: &[u8]| Rational::new(1.into(), factorial(w.len() as u32));
    let w = wordseries_partial(&delta, &sys, &x, 5).unwrap();
    assert_eq!(w.increments, flow_taylor(&fa.plus(&fb), &x, 5));
}

#[test]
fn iterated_integrals_solve_time_dependent_flow() {
    // x' = t·x has x(t) = x₀·e^{t²/2}
    let sys = WordSystem::new("a", vec![scalar(Poly::var(1, 0))], vec![TimePoly::monomial(int(1), 1)]).unwrap();
    let ints = iterated_integrals(&sys, 6);
    let t = rat(1, 2);
    let delta = |w: &[u8]| ints[w].eval(&t);
    let s = wordseries_partial(&delta, &sys, &[int(1)], 6).unwrap().total();
    assert!((to_f64(&s[0]) - (0.125f64).exp()).abs() < 1e-9);
    for n in 0..=6u32 {
        let expected = TimePoly::monomial(Rational::new(1.into(), factorial(n) * num_traits::pow(num_bigint::BigInt::from(2), n as usize)), 2 * n as usize);
        assert_eq!(ints[&vec![0u8; n as usize]], expected);
    }
}

#[test]
fn iterated_integrals_form_a_shuffle_character() {
    let sys = WordSystem::new(
        "ab",
        vec![scalar(Poly::var(1, 0)); 2],
        vec![TimePoly::new(vec![int(1), int(2)]), TimePoly::new(vec![int(0), int(-1), int(3)])],
    )
    .unwrap();
    let ints = iterated_integrals(&sys, 5);
    let phi = iterated_integral_character(&sys, 5).unwrap();
    let shuffle = hopfchar::hopf::shuffle::Shuffle::new("ab").unwrap();
    for (w, v) in &ints {
        assert_eq!(&phi.evaluate(&shuffle.word_monomial(w)).unwrap(), v, "{}", shuffle.word_string(w));
    }
    assert_eq!(phi.hopf().name(), "shuffle:ab");
}

#[test]
fn rotation_pseries_matches_taylor() {
    let f = PolyVectorField::new(vec![Poly::var(2, 1)]).unwrap();
    let g = PolyVectorField::new(vec![Poly::var(2, 0).scaled(&int(-1))]).unwrap();
    let sys = ColouredPolySystem::new(f, g).unwrap();
    let (p, q) = ([int(1)], [int(0)]);
    let s = pseries_partial(&exact_flow, &sys, &p, &q, &int(1), 8).unwrap();
    assert_eq!(s.increments, flow_taylor(&sys.joint(), &[int(1), int(0)], 8));
    // cos and −sin coefficients
    for (n, inc) in s.increments.iter().enumerate() {
        let c = Rational::new(1.into(), factorial(n as u32));
        let (cos, sin) = match n % 4 {
            0 => (c.clone(), int(0)),
            1 => (int(0), -c.clone()),
            2 => (-c.clone(), int(0)),
            _ => (int(0), c.clone()),
        };
        assert_eq!(inc, &vec![cos, sin], "order {n}");
    }
}

#[test]
fn partitioned_pseries_matches_taylor() {
    for seed in 0..3u64 {
        let joint = random_field(2, seed + 40);
        let comps = joint.components();
        let f = PolyVectorField::new(vec![comps[0].clone()]).unwrap();
        let g = PolyVectorField::new(vec![comps[1].clone()]).unwrap();
        let sys = ColouredPolySystem::new(f, g).unwrap();
        let y = random_point(2, seed + 40);
        let s = pseries_partial(&exact_flow, &sys, &y[..1], &y[1..], &int(1), 5).unwrap();
        assert_eq!(s.increments, flow_taylor(&joint, &y, 5), "seed {seed}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bseries_is_linear_in_coefficients(seed in 0u64..1000, c in -4i64..5) {
        let f = random_field(1, seed);
        let y = random_point(1, seed);
        let h = rat(1, 3);
        let scaled = |t: &RootedTree| exact_flow(t) * int(c);
        let a = bseries_partial(&scaled, &f, &y, &h, 4).unwrap();
        let b = bseries_partial(&exact_flow, &f, &y, &h, 4).unwrap();
        for n in 1..=4usize {
            let expected: Vec<Rational> = b.increments[n].iter().map(|x| x * int(c)).collect();
            prop_assert_eq!(&a.increments[n], &expected);
        }
    }
}

#[test]
fn exact_flow_character_on_trees() {
    let phi = exact_flow_character(6, 0).unwrap();
    let a = character_coefficients(&phi).unwrap();
    let f = random_field(2, 77);
    let y = random_point(2, 77);
    let h = rat(2, 5);
    assert_eq!(
        bseries_partial(&a, &f, &y, &h, 6).unwrap(),
        bseries_partial(&exact_flow, &f, &y, &h, 6).unwrap()
    );
}
