use super::{OptimizeError, Probe};
use crate::function::Univariate;
use crate::Real;

const GROWTH: f64 = 1.618_033_988_749_895;
const MAX_EXPANSIONS: usize = 100;

/// Walks downhill from `x0` with geometrically growing steps until the
/// function turns up again. Returns `a < b < c` with `f(b)` below both ends.
///
/// `f(x0)` and `f(x0 + step)` must evaluate; later probes that fault count as
/// `+inf` and therefore close the bracket.
pub fn bracket_minimum<T, F>(f: &F, x0: T, step: T) -> Result<(T, T, T), OptimizeError>
where
    T: Real,
    F: Univariate<T> + ?Sized,
{
    if !(step > T::zero() && step.is_finite() && x0.is_finite()) {
        return Err(OptimizeError::InvalidOptions(format!(
            "bracket search needs a finite start and a positive step, got x0 = {x0}, step = {step}"
        )));
    }
    let mut a = x0;
    let mut fa = f.eval(a)?;
    let mut b = x0 + step;
    let mut fb = f.eval(b)?;
    if fb > fa {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let growth = T::lit(GROWTH);
    let mut probe = Probe::new(f);
    let mut c = b + growth * (b - a);
    let mut fc = probe.value(c);
    let mut expansions = 0;
    while fc <= fb {
        if expansions == MAX_EXPANSIONS {
            return Err(OptimizeError::BracketFailure { expansions });
        }
        a = b;
        fa = fb;
        b = c;
        fb = fc;
        c = b + growth * (b - a);
        fc = probe.value(c);
        expansions += 1;
    }
    if fb >= fa {
        // flat start: no strict descent was ever seen
        return Err(OptimizeError::BracketFailure { expansions });
    }
    Ok(if a < c { (a, b, c) } else { (c, b, a) })
}
