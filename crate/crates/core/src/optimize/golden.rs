use super::{finish, min_magnitude, Interval, IterationState, MinimizeResult, OptimizeError, Probe, SolveOptions};
use crate::function::Univariate;
use crate::Real;

/// Golden-section search on the margin-shrunk interval.
///
/// The bracket width is tracked as `w0 * rho^n` rather than recomputed from
/// the endpoints, so `final_bracket_width` is the exact geometric contraction
/// up to `n` roundings.
pub fn golden_section<T, F>(
    f: &F,
    iv: Interval<T>,
    opts: &SolveOptions<T>,
) -> Result<MinimizeResult<T>, OptimizeError>
where
    T: Real,
    F: Univariate<T> + ?Sized,
{
    golden_section_observed(f, iv, opts, |_| {})
}

pub fn golden_section_observed<T, F, O>(
    f: &F,
    iv: Interval<T>,
    opts: &SolveOptions<T>,
    mut observer: O,
) -> Result<MinimizeResult<T>, OptimizeError>
where
    T: Real,
    F: Univariate<T> + ?Sized,
    O: FnMut(&IterationState<T>),
{
    opts.validate()?;
    let rho = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let rho2 = T::one() - rho;
    let mut probe = Probe::new(f);

    let (mut lo, hi) = iv.shrunk(opts.endpoint_margin);
    let mut width = hi - lo;
    let mut x1 = lo + rho2 * width;
    let mut x2 = lo + rho * width;
    let mut f1 = probe.value(x1);
    let mut f2 = probe.value(x2);
    let (mut x_best, mut f_best) = if f2 < f1 { (x2, f2) } else { (x1, f1) };

    let mut iterations = 0;
    let converged = loop {
        observer(&IterationState {
            iteration: iterations,
            lo,
            hi: lo + width,
            x_best,
            f_best,
        });
        if width <= opts.converged_width(min_magnitude(lo, lo + width)) {
            break true;
        }
        if iterations >= opts.max_iterations {
            break false;
        }
        iterations += 1;

        // Ties keep whichever side holds the incumbent.
        let keep_left = f1 < f2 || (f1 == f2 && x_best == x1);
        width = width * rho;
        let (x_new, f_new) = if keep_left {
            x2 = x1;
            f2 = f1;
            x1 = lo + rho2 * width;
            f1 = probe.value(x1);
            (x1, f1)
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + rho * width;
            f2 = probe.value(x2);
            (x2, f2)
        };
        if f_new < f_best {
            x_best = x_new;
            f_best = f_new;
        }
    };

    finish(x_best, f_best, iterations, probe.evaluations, converged, width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, DomainFault};

    #[test]
    fn contraction_after_fifty_iterations() {
        let e = parse::<f64>("(x-2)^2").unwrap();
        let iv = Interval::new(0.0, 5.0).unwrap();
        let opts = SolveOptions::default()
            .with_margin(0.0)
            .with_tolerance(1e-30)
            .with_max_iterations(50);
        let r = golden_section(&e, iv, &opts).unwrap();
        let rho = (5f64.sqrt() - 1.0) / 2.0;
        assert_eq!(r.iterations, 50);
        assert!(!r.converged);
        assert!(r.final_bracket_width <= 5.0 * rho.powi(50) * (1.0 + 1e-12));
        assert!(((r.final_bracket_width - 5.0 * rho.powi(50)) / r.final_bracket_width).abs() < 1e-12);
    }

    #[test]
    fn nonsmooth_kink() {
        let e = parse::<f64>("abs(x - 0.3)").unwrap();
        let r = golden_section(&e, Interval::new(0.0, 1.0).unwrap(), &SolveOptions::default()).unwrap();
        assert!(r.converged);
        assert!((r.x_min - 0.3).abs() <= 1e-6);
    }

    #[test]
    fn best_value_never_increases() {
        let e = parse::<f64>("sin(3*x) + 0.1*x^2").unwrap();
        let mut seen = Vec::new();
        golden_section_observed(
            &e,
            Interval::new(-4.0, 4.0).unwrap(),
            &SolveOptions::default(),
            |s| seen.push(s.f_best),
        )
        .unwrap();
        assert!(seen.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn plateau_keeps_first_incumbent() {
        let flat = |_: f64| -> Result<f64, DomainFault> { Ok(1.0) };
        let a = golden_section(&flat, Interval::new(0.0, 1.0).unwrap(), &SolveOptions::default()).unwrap();
        let b = golden_section(&flat, Interval::new(0.0, 1.0).unwrap(), &SolveOptions::default()).unwrap();
        assert_eq!(a, b);
        let rho2 = 1.0 - (5f64.sqrt() - 1.0) / 2.0;
        // the first probe stays the incumbent
        assert!((a.x_min - rho2).abs() < 1e-8, "{a:?}");
    }
}
