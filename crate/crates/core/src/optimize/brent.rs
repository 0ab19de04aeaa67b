use super::{finish, Interval, IterationState, MinimizeResult, OptimizeError, Probe, SolveOptions};
use crate::function::Univariate;
use crate::Real;

/// Brent's bounded minimizer: safeguarded parabolic interpolation through the
/// three best points, with golden-section steps whenever the parabola is
/// rejected. The same scheme sits behind fminbnd.
pub fn brent_min<T, F>(
    f: &F,
    iv: Interval<T>,
    opts: &SolveOptions<T>,
) -> Result<MinimizeResult<T>, OptimizeError>
where
    T: Real,
    F: Univariate<T> + ?Sized,
{
    brent_min_observed(f, iv, opts, |_| {})
}

fn sign<T: Real>(v: T) -> T {
    if v >= T::zero() {
        T::one()
    } else {
        -T::one()
    }
}

pub fn brent_min_observed<T, F, O>(
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
    let half = T::lit(0.5);
    let golden = half * (T::lit(3.0) - T::lit(5.0).sqrt());
    let mut probe = Probe::new(f);

    let (mut a, mut b) = iv.shrunk(opts.endpoint_margin);
    // x: best point, w: second best, v: previous w
    let mut x = a + golden * (b - a);
    let mut fx = probe.value(x);
    let (mut w, mut fw, mut v, mut fv) = (x, fx, x, fx);
    // d: last step, e: step before that
    let mut d = T::zero();
    let mut e = T::zero();

    let mut iterations = 0;
    let converged = loop {
        observer(&IterationState {
            iteration: iterations,
            lo: a,
            hi: b,
            x_best: x,
            f_best: fx,
        });
        let tol_width = opts.converged_width(x);
        if b - a <= tol_width {
            break true;
        }
        if iterations >= opts.max_iterations {
            break false;
        }
        iterations += 1;

        let xm = half * (a + b);
        let tol1 = half * half * tol_width + T::epsilon() * x.abs();
        let tol2 = tol1 + tol1;

        let mut parabolic = false;
        if e.abs() > tol1 && fx.is_finite() && fw.is_finite() && fv.is_finite() {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = (q - r) + (q - r);
            if q > T::zero() {
                p = -p;
            }
            q = q.abs();
            let e_prev = e;
            e = d;
            if p.abs() < (half * q * e_prev).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1 * sign(xm - x);
                }
                parabolic = true;
            }
        }
        if !parabolic {
            e = if x >= xm { a - x } else { b - x };
            d = golden * e;
        }

        let u = if d.abs() >= tol1 { x + d } else { x + tol1 * sign(d) };
        let fu = probe.value(u);

        // Strict comparison: on a tie the older incumbent stays.
        if fu < fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    };

    finish(x, fx, iterations, probe.evaluations, converged, b - a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::optimize::{golden_section, Method};

    fn run(text: &str, lo: f64, hi: f64) -> MinimizeResult<f64> {
        brent_min(
            &parse::<f64>(text).unwrap(),
            Interval::new(lo, hi).unwrap(),
            &SolveOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn quadratic_needs_few_evaluations() {
        let r = run("(x-2)^2", 0.0, 5.0);
        assert!(r.converged);
        assert!((r.x_min - 2.0).abs() <= 1e-7);
        // pinned from the first verified run
        assert!(r.function_evaluations <= BRENT_QUADRATIC_EVALUATIONS, "{r:?}");
    }

    #[test]
    fn flat_quartic_bottom() {
        let r = run("x^4", -1.0, 2.0);
        assert!(r.x_min.abs() <= 1e-4, "{r:?}");
    }

    #[test]
    fn beats_golden_on_pipe_objective() {
        let e = parse::<f64>("3*csc(x)+6*sec(x)").unwrap();
        let iv = Interval::new(0.01, 1.56).unwrap();
        let opts = SolveOptions::default();
        let brent = brent_min(&e, iv, &opts).unwrap();
        let golden = golden_section(&e, iv, &opts.with_method(Method::Golden)).unwrap();
        assert!(brent.function_evaluations < golden.function_evaluations);
        assert!((brent.x_min - golden.x_min).abs() <= 1e-5);
    }

    #[test]
    fn converged_width_invariant() {
        for (text, lo, hi) in [("(x-2)^2", 0.0, 5.0), ("(x-300)^2", 0.0, 500.0), ("exp(x) - 2*x", -3.0, 3.0)] {
            let r = run(text, lo, hi);
            assert!(r.converged);
            assert!(r.final_bracket_width <= 2.0 * 1e-8 * r.x_min.abs().max(1.0), "{text}: {r:?}");
        }
        let r = run("(x-300)^2", 0.0, 500.0);
        assert!((r.x_min - 300.0).abs() <= 300.0 * 1e-8);
    }

    #[test]
    fn best_value_never_increases() {
        let e = parse::<f64>("sin(3*x) + 0.1*x^2").unwrap();
        let mut seen = Vec::new();
        brent_min_observed(&e, Interval::new(-4.0, 4.0).unwrap(), &SolveOptions::default(), |s| {
            seen.push(s.f_best)
        })
        .unwrap();
        assert!(seen.len() > 3);
        assert!(seen.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn faulting_region_loses() {
        // ln faults for x <= 0; the minimum of ln(x) + 1/x sits at x = 1
        let r = run("ln(x) + 1/x", -1.0, 3.0);
        assert!((r.x_min - 1.0).abs() < 1e-6, "{r:?}");
    }

    const BRENT_QUADRATIC_EVALUATIONS: usize = 6;
}
