//! Bounded scalar minimization with fminbnd-style semantics.
//!
//! [`minimize_bounded`] returns a local minimizer of `f` inside an interval
//! without ever evaluating the exact endpoints: the search runs on the
//! interval shrunk by [`SolveOptions::endpoint_margin`] on both sides. Any
//! probe that faults compares as `+inf`, so a pole near the boundary simply
//! loses every comparison.

mod bracket;
mod brent;
mod golden;

use thiserror::Error;

use crate::expr::DomainFault;
use crate::function::{Negated, Univariate};
use crate::Real;

pub use bracket::bracket_minimum;
pub use brent::{brent_min, brent_min_observed};
pub use golden::{golden_section, golden_section_observed};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimizeError {
    #[error("invalid interval [{lo}, {hi}]: need finite bounds with lo < hi")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("invalid solver options: {0}")]
    InvalidOptions(String),
    #[error("function faulted at every probe point")]
    NoEvaluablePoint,
    #[error("no bracket found after {expansions} expansions; function looks monotone on the explored ray")]
    BracketFailure { expansions: usize },
    #[error(transparent)]
    Fault(#[from] DomainFault),
}

/// Closed search interval with finite `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self, OptimizeError> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(OptimizeError::InvalidInterval {
                lo: lo.to_f64().unwrap_or(f64::NAN),
                hi: hi.to_f64().unwrap_or(f64::NAN),
            })
        }
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> T {
        self.lo + self.width() / T::lit(2.0)
    }

    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Bounds after pulling each end inward by `fraction * width`.
    pub fn shrunk(&self, fraction: T) -> (T, T) {
        let m = fraction * self.width();
        (self.lo + m, self.hi - m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Brent,
    Golden,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions<T> {
    /// Stop once the bracket is no wider than `2 * x_tolerance * max(1, |x|)`.
    pub x_tolerance: T,
    pub max_iterations: usize,
    pub method: Method,
    /// Fraction of the interval width kept clear at each end.
    pub endpoint_margin: T,
}

impl<T: Real> Default for SolveOptions<T> {
    fn default() -> Self {
        SolveOptions {
            x_tolerance: T::lit(1e-8),
            max_iterations: 500,
            method: Method::Brent,
            endpoint_margin: T::lit(1e-9),
        }
    }
}

impl<T: Real> SolveOptions<T> {
    pub fn validate(&self) -> Result<(), OptimizeError> {
        if !(self.x_tolerance > T::zero() && self.x_tolerance.is_finite()) {
            return Err(OptimizeError::InvalidOptions(format!(
                "x_tolerance must be positive, got {}",
                self.x_tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(OptimizeError::InvalidOptions(
                "max_iterations must be at least 1".to_string(),
            ));
        }
        if !(self.endpoint_margin >= T::zero() && self.endpoint_margin < T::lit(0.5)) {
            return Err(OptimizeError::InvalidOptions(format!(
                "endpoint_margin must lie in [0, 0.5), got {}",
                self.endpoint_margin
            )));
        }
        Ok(())
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_tolerance(mut self, x_tolerance: T) -> Self {
        self.x_tolerance = x_tolerance;
        self
    }

    pub fn with_margin(mut self, endpoint_margin: T) -> Self {
        self.endpoint_margin = endpoint_margin;
        self
    }

    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    /// Width at which a bracket containing `x` counts as converged.
    pub(crate) fn converged_width(&self, x_scale: T) -> T {
        T::lit(2.0) * self.x_tolerance * x_scale.abs().max(T::one())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeResult<T> {
    pub x_min: T,
    pub f_min: T,
    pub iterations: usize,
    pub function_evaluations: usize,
    pub converged: bool,
    pub final_bracket_width: T,
}

/// Snapshot passed to observers once per iteration, before the convergence test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationState<T> {
    pub iteration: usize,
    pub lo: T,
    pub hi: T,
    pub x_best: T,
    pub f_best: T,
}

/// Counts evaluations and turns faults into `+inf`.
struct Probe<'a, F: ?Sized> {
    f: &'a F,
    evaluations: usize,
}

impl<'a, F: ?Sized> Probe<'a, F> {
    fn new(f: &'a F) -> Self {
        Probe { f, evaluations: 0 }
    }

    fn value<T: Real>(&mut self, x: T) -> T
    where
        F: Univariate<T>,
    {
        self.evaluations += 1;
        self.f.eval(x).unwrap_or_else(|_| T::infinity())
    }
}

/// Smallest |x| over `[lo, hi]`; used so the convergence width is valid for
/// every point still in the bracket.
fn min_magnitude<T: Real>(lo: T, hi: T) -> T {
    if lo <= T::zero() && T::zero() <= hi {
        T::zero()
    } else {
        lo.abs().min(hi.abs())
    }
}

fn finish<T: Real>(
    x: T,
    fx: T,
    iterations: usize,
    evaluations: usize,
    converged: bool,
    width: T,
) -> Result<MinimizeResult<T>, OptimizeError> {
    if !fx.is_finite() {
        return Err(OptimizeError::NoEvaluablePoint);
    }
    Ok(MinimizeResult {
        x_min: x,
        f_min: fx,
        iterations,
        function_evaluations: evaluations,
        converged,
        final_bracket_width: width,
    })
}

/// Local minimizer of `f` on `iv` with the method chosen in `opts`.
///
/// Running out of iterations is not an error: the best point so far comes
/// back with `converged == false`.
pub fn minimize_bounded<T, F>(
    f: &F,
    iv: Interval<T>,
    opts: &SolveOptions<T>,
) -> Result<MinimizeResult<T>, OptimizeError>
where
    T: Real,
    F: Univariate<T> + ?Sized,
{
    match opts.method {
        Method::Brent => brent_min(f, iv, opts),
        Method::Golden => golden_section(f, iv, opts),
    }
}

/// Maximizes by minimizing `-f`; the reported `f_min` is the maximum of `f`.
pub fn maximize_bounded<T, F>(
    f: &F,
    iv: Interval<T>,
    opts: &SolveOptions<T>,
) -> Result<MinimizeResult<T>, OptimizeError>
where
    T: Real,
    F: Univariate<T> + ?Sized,
{
    let mut result = minimize_bounded(&Negated(f), iv, opts)?;
    result.f_min = -result.f_min;
    Ok(result)
}
