mod common;

use common::{function, interval};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uniopt::critical::classify_first_derivative;
use uniopt::{find_critical_points, monotonic_intervals, CriticalKind, CriticalOptions, Direction, Expr, TestUsed, Univariate};

/// Coefficients (ascending powers) of `scale * prod (x - r)`.
fn poly_from_roots(scale: f64, roots: &[f64]) -> Vec<f64> {
    let mut coeffs = vec![scale];
    for &r in roots {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= r * c;
        }
        coeffs = next;
    }
    coeffs
}

fn antiderivative(coeffs: &[f64]) -> Vec<f64> {
    std::iter::once(0.0)
        .chain(coeffs.iter().enumerate().map(|(k, c)| c / (k as f64 + 1.0)))
        .collect()
}

fn poly_expr(coeffs: &[f64]) -> Expr<f64> {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| Expr::Constant(c).mul(Expr::Variable.pow(Expr::Constant(k as f64))))
        .reduce(|a, b| a.add(b))
        .unwrap()
}

fn distinct_roots(rng: &mut ChaCha8Rng, count: usize) -> Vec<f64> {
    let mut roots: Vec<f64> = Vec::new();
    while roots.len() < count {
        let r: f64 = rng.gen_range(-2.8..2.8);
        let near_bound = (r.abs() - 2.0).abs() < 0.02;
        if !near_bound && roots.iter().all(|q| (q - r).abs() > 0.05) {
            roots.push(r);
        }
    }
    roots
}

#[test]
fn recovers_every_planted_critical_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (lo, hi) = (-2.0, 2.0);
    let opts = CriticalOptions::default();
    for case in 0..50 {
        let count = rng.gen_range(1..=4);
        let roots = distinct_roots(&mut rng, count);
        let scale = rng.gen_range(0.5..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let f = poly_expr(&antiderivative(&poly_from_roots(scale, &roots)));
        let mut expected: Vec<f64> = roots
            .iter()
            .copied()
            .filter(|r| *r > lo && *r < hi)
            .collect();
        expected.sort_by(f64::total_cmp);

        let report = find_critical_points(&f.clone().into(), interval(lo, hi), &opts).unwrap();
        let found: Vec<f64> = report.points.iter().map(|p| p.x).collect();
        assert_eq!(found.len(), expected.len(), "case {case}: roots {roots:?}, found {found:?}");
        for (p, want) in report.points.iter().zip(&expected) {
            assert!((p.x - want).abs() <= 1e-6, "case {case}: {} vs {want}", p.x);
            // sign of f'' at a simple root: scale * prod over the other roots
            let curvature: f64 = scale * roots.iter().filter(|r| *r != want).map(|r| want - r).product::<f64>();
            let kind = if curvature > 0.0 { CriticalKind::LocalMin } else { CriticalKind::LocalMax };
            assert_eq!(p.kind, kind, "case {case} at {want}");
        }
    }
}

#[test]
fn residual_is_bounded_for_every_point() {
    let opts = CriticalOptions::default();
    for (text, lo, hi) in [
        ("sin(x)", 0.0, 20.0),
        ("x^5 - 3*x^3 + x", -2.0, 2.0),
        ("exp(-x^2) * cos(3*x)", -3.0, 3.0),
        ("3*csc(x)+6*sec(x)", 0.0, std::f64::consts::FRAC_PI_2),
    ] {
        let f = function(text);
        let df = f.symbolic_derivative().unwrap();
        let report = find_critical_points(&f, interval(lo, hi), &opts).unwrap();
        assert!(!report.points.is_empty(), "{text}");
        for p in &report.points {
            assert!(p.derivative_residual <= opts.root_tolerance, "{text}: {p:?}");
            assert!(df.eval(p.x).unwrap().abs() <= opts.root_tolerance, "{text}: {p:?}");
        }
    }
}

#[test]
fn first_and_second_tests_agree_when_second_is_conclusive() {
    let opts = CriticalOptions::default();
    for (text, lo, hi) in [
        ("sin(x)", 0.0, 20.0),
        ("x^5 - 3*x^3 + x", -2.0, 2.0),
        ("exp(-x^2) * cos(3*x)", -3.0, 3.0),
        ("x^2", -1.0, 1.0),
        ("-x^2", -1.0, 1.0),
        ("x*ln(x)", 0.1, 2.0),
    ] {
        let f = function(text);
        let df = f.symbolic_derivative().unwrap();
        for p in find_critical_points(&f, interval(lo, hi), &opts).unwrap().points {
            if p.test_used == TestUsed::SecondDerivative && p.kind != CriticalKind::Inconclusive {
                let first = classify_first_derivative(&df, p.x, 1e-4, opts.zero_threshold).unwrap();
                assert_eq!(first, p.kind, "{text} at {}", p.x);
            }
        }
    }
}

#[test]
fn segment_directions_match_derivative_sign() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let opts = CriticalOptions::default();
    for (text, lo, hi) in [
        ("sin(x)", 0.0, 20.0),
        ("x^5 - 3*x^3 + x", -2.0, 2.0),
        ("exp(-x^2) * cos(3*x)", -3.0, 3.0),
        ("3*csc(x)+6*sec(x)", 0.01, 1.56),
    ] {
        let f = function(text);
        let df = f.symbolic_derivative().unwrap();
        let report = monotonic_intervals(&f, interval(lo, hi), &opts).unwrap();
        // segments tile the interval
        assert_eq!(report.segments.first().unwrap().interval.lo(), lo);
        assert_eq!(report.segments.last().unwrap().interval.hi(), hi);
        for w in report.segments.windows(2) {
            assert_eq!(w[0].interval.hi(), w[1].interval.lo());
        }
        for s in &report.segments {
            let (a, b) = (s.interval.lo(), s.interval.hi());
            for _ in 0..10 {
                // stay clear of the refined endpoints where f' is ~0
                let x = rng.gen_range(a + 1e-6 * (b - a)..b - 1e-6 * (b - a));
                let d = df.eval(x).unwrap();
                match s.direction {
                    Direction::Increasing => assert!(d > 0.0, "{text}: {x} in {a}..{b}"),
                    Direction::Decreasing => assert!(d < 0.0, "{text}: {x} in {a}..{b}"),
                    Direction::Undetermined => panic!("{text}: unlabeled segment"),
                }
            }
        }
    }
}
