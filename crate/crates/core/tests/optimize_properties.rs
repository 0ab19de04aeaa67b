mod common;

use common::{function, interval, smooth_corpus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uniopt::optimize::{brent_min, brent_min_observed, golden_section, golden_section_observed};
use uniopt::{maximize_bounded, minimize_bounded, Method, SolveOptions};

const RHO: f64 = 0.618_033_988_749_894_8;

#[test]
fn both_methods_find_the_known_minimizer() {
    let opts = SolveOptions::default();
    for (text, lo, hi, x_star) in smooth_corpus() {
        let f = function(text);
        for method in [Method::Brent, Method::Golden] {
            let r = minimize_bounded(&f, interval(lo, hi), &opts.with_method(method)).unwrap();
            assert!(r.converged, "{text} {method:?}");
            assert!((r.x_min - x_star).abs() <= 1e-6, "{text} {method:?}: {r:?}");
            assert!(lo <= r.x_min && r.x_min <= hi);
            assert!(r.final_bracket_width <= 2.0 * opts.x_tolerance * r.x_min.abs().max(1.0));
        }
    }
}

#[test]
fn brent_and_golden_agree_within_ten_tolerances() {
    let opts = SolveOptions::default();
    for (text, lo, hi, _) in smooth_corpus() {
        let f = function(text);
        let b = brent_min(&f, interval(lo, hi), &opts).unwrap();
        let g = golden_section(&f, interval(lo, hi), &opts).unwrap();
        assert!(
            (b.x_min - g.x_min).abs() <= 10.0 * opts.x_tolerance * b.x_min.abs().max(1.0),
            "{text}: {} vs {}",
            b.x_min,
            g.x_min
        );
    }
}

#[test]
fn golden_width_is_geometric_for_any_function() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let texts = ["sin(5*x) + x", "abs(x)", "1/x", "x^3 - x", "exp(-x^2)"];
    for _ in 0..40 {
        let text = texts[rng.gen_range(0..texts.len())];
        let lo = rng.gen_range(-5.0..0.0);
        let hi = lo + rng.gen_range(0.1..8.0);
        let n = rng.gen_range(1..80);
        let opts = SolveOptions::default()
            .with_margin(0.0)
            .with_tolerance(1e-300)
            .with_max_iterations(n);
        let r = golden_section(&function(text), interval(lo, hi), &opts).unwrap();
        let want = (hi - lo) * RHO.powi(n as i32);
        assert_eq!(r.iterations, n);
        assert!(((r.final_bracket_width - want) / want).abs() <= 1e-12, "{text}: n={n}");
    }
}

#[test]
fn golden_width_with_margin() {
    let m = 1e-3;
    let opts = SolveOptions::default().with_margin(m).with_max_iterations(20).with_tolerance(1e-300);
    let r = golden_section(&function("x^2"), interval(-1.0, 3.0), &opts).unwrap();
    let want = 4.0 * (1.0 - 2.0 * m) * RHO.powi(20);
    assert!(((r.final_bracket_width - want) / want).abs() <= 1e-12);
}

#[test]
fn negation_duality_is_bit_exact() {
    for (text, lo, hi, _) in smooth_corpus() {
        let f = function(text);
        let parsed_neg = function(&format!("-({text})"));
        for method in [Method::Brent, Method::Golden] {
            let opts = SolveOptions::default().with_method(method);
            let iv = interval(lo, hi);
            let max_of_neg = maximize_bounded(&f.clone().negated(), iv, &opts).unwrap();
            let min = minimize_bounded(&f, iv, &opts).unwrap();
            assert_eq!(max_of_neg.x_min.to_bits(), min.x_min.to_bits(), "{text}");
            assert_eq!(max_of_neg.f_min.to_bits(), (-min.f_min).to_bits(), "{text}");
            let via_parse = maximize_bounded(&parsed_neg, iv, &opts).unwrap();
            assert_eq!(via_parse.x_min.to_bits(), min.x_min.to_bits(), "{text}");
        }
    }
}

#[test]
fn best_value_is_monotone_for_both_methods() {
    let opts = SolveOptions::default();
    for (text, lo, hi, _) in smooth_corpus().into_iter().chain([("sin(7*x) + 0.2*x^2", -5.0, 5.0, 0.0)]) {
        let f = function(text);
        let mut trace = Vec::new();
        brent_min_observed(&f, interval(lo, hi), &opts, |s| trace.push(s.f_best)).unwrap();
        assert!(trace.windows(2).all(|w| w[1] <= w[0]), "brent {text}");
        trace.clear();
        golden_section_observed(&f, interval(lo, hi), &opts, |s| trace.push(s.f_best)).unwrap();
        assert!(trace.windows(2).all(|w| w[1] <= w[0]), "golden {text}");
    }
}

#[test]
fn brent_uses_fewer_evaluations_on_the_smooth_corpus() {
    let opts = SolveOptions::default();
    let mut brent = Vec::new();
    let mut golden = Vec::new();
    for (text, lo, hi, _) in smooth_corpus() {
        let f = function(text);
        brent.push(brent_min(&f, interval(lo, hi), &opts).unwrap().function_evaluations);
        golden.push(golden_section(&f, interval(lo, hi), &opts).unwrap().function_evaluations);
    }
    brent.sort_unstable();
    golden.sort_unstable();
    assert!(brent[brent.len() / 2] < golden[golden.len() / 2], "{brent:?} vs {golden:?}");
}

#[test]
fn containment_on_random_intervals() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let lo: f64 = rng.gen_range(-10.0..10.0);
        let hi = lo + rng.gen_range(1e-3..20.0);
        let c: f64 = rng.gen_range(-15.0..15.0);
        let f = function(&format!("(x - ({c}))^2 + sin(3*x)"));
        for method in [Method::Brent, Method::Golden] {
            let r = minimize_bounded(&f, interval(lo, hi), &SolveOptions::default().with_method(method)).unwrap();
            assert!(lo <= r.x_min && r.x_min <= hi);
        }
    }
}
