#![allow(dead_code)]

use uniopt::{parse, Interval, ScalarFunction};

/// Smooth, strictly unimodal functions with a known interior minimizer.
pub fn smooth_corpus() -> Vec<(&'static str, f64, f64, f64)> {
    vec![
        ("(x-2)^2", 0.0, 5.0, 2.0),
        ("(x+1.5)^2 + 3", -4.0, 2.0, -1.5),
        ("exp(x-0.7) + exp(0.7-x)", -2.0, 3.0, 0.7),
        ("x^2 - 4*x + ln(1 + x^2)", 0.0, 4.0, 1.543689012692076),
        ("3*csc(x)+6*sec(x)", 0.0, std::f64::consts::FRAC_PI_2, 0.6708879787125152),
        ("-cos(x - 1)", -1.0, 3.0, 1.0),
        ("sqrt(1 + (x-3)^2)", 0.0, 10.0, 3.0),
        ("x*ln(x)", 0.05, 2.0, 0.36787944117144233),
        ("(x-0.25)^4 + (x-0.25)^2", -1.0, 1.0, 0.25),
        ("x + 4/x", 0.5, 8.0, 2.0),
        ("-x*exp(-x)", 0.0, 5.0, 1.0),
    ]
}

pub fn function(text: &str) -> ScalarFunction<f64> {
    parse::<f64>(text).unwrap().into()
}

pub fn interval(lo: f64, hi: f64) -> Interval<f64> {
    Interval::new(lo, hi).unwrap()
}
