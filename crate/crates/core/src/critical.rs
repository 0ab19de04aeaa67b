//! Critical points and monotonic segments of a function on an interval.
//!
//! The derivative is sampled on a uniform grid; every sign change is refined
//! by bisection and the resulting point is classified with the second
//! derivative test, falling back to the first derivative test when the
//! curvature is too small to decide. Derivatives are symbolic for parsed
//! expressions and central differences for the built-in models.

use thiserror::Error;

use crate::expr::DomainFault;
use crate::function::{ScalarFunction, Univariate};
use crate::numdiff::{CentralDerivative, DiffConfig, SecondDerivative};
use crate::optimize::Interval;
use crate::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CriticalError {
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error(transparent)]
    Fault(#[from] DomainFault),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalKind {
    LocalMin,
    LocalMax,
    NotExtremum,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestUsed {
    FirstDerivative,
    SecondDerivative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint<T> {
    pub x: T,
    pub f_value: T,
    pub kind: CriticalKind,
    pub test_used: TestUsed,
    /// `|f'(x)|` at the reported point.
    pub derivative_residual: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Increasing,
    Decreasing,
    /// The derivative at the segment midpoint was zero (within threshold) or faulted.
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicSegment<T> {
    pub interval: Interval<T>,
    pub direction: Direction,
}

/// A place where `f'` crosses or touches zero on the scan grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SignChange<T> {
    /// `f'` has opposite signs at the two ends.
    Straddle(Interval<T>),
    /// `f'` vanishes at an interior grid node without changing sign around it.
    Touch(T),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalOptions<T> {
    pub grid_points: usize,
    /// Bisection width, and the bound on `|f'|` at every reported point.
    pub root_tolerance: T,
    /// Derivative values at or below this magnitude count as zero.
    pub zero_threshold: T,
    /// Finite-difference steps used when no symbolic derivative exists.
    pub first_step: DiffConfig<T>,
    pub second_step: DiffConfig<T>,
}

impl<T: Real> Default for CriticalOptions<T> {
    fn default() -> Self {
        CriticalOptions {
            grid_points: 1001,
            root_tolerance: T::lit(1e-9),
            zero_threshold: T::lit(1e-10),
            first_step: DiffConfig::first(),
            second_step: DiffConfig::second(),
        }
    }
}

impl<T: Real> CriticalOptions<T> {
    pub fn with_grid(mut self, grid_points: usize) -> Self {
        self.grid_points = grid_points;
        self
    }

    pub fn with_root_tolerance(mut self, root_tolerance: T) -> Self {
        self.root_tolerance = root_tolerance;
        self
    }

    /// Stand-off for the first derivative test: `max(1e-6, 10 * root_tolerance)`.
    pub fn probe_delta(&self) -> T {
        T::lit(1e-6).max(T::lit(10.0) * self.root_tolerance)
    }

    fn validate(&self) -> Result<(), CriticalError> {
        if self.grid_points < 3 {
            return Err(CriticalError::PreconditionViolation(format!(
                "grid needs at least 3 points, got {}",
                self.grid_points
            )));
        }
        if !(self.root_tolerance > T::zero() && self.zero_threshold >= T::zero()) {
            return Err(CriticalError::PreconditionViolation(
                "root_tolerance must be positive and zero_threshold non-negative".to_string(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalReport<T> {
    pub points: Vec<CriticalPoint<T>>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicReport<T> {
    pub segments: Vec<MonotonicSegment<T>>,
    pub critical_points: Vec<CriticalPoint<T>>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sign {
    Negative,
    Zero,
    Positive,
}

fn sign_of<T: Real>(v: T, zero_threshold: T) -> Sign {
    if v.abs() <= zero_threshold {
        Sign::Zero
    } else if v > T::zero() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Node `i` of an `n`-point uniform grid over `iv`; the last node is `hi` exactly.
fn grid_node<T: Real>(iv: &Interval<T>, i: usize, n: usize) -> T {
    if i + 1 == n {
        iv.hi()
    } else {
        iv.lo() + iv.width() * T::from_count(i) / T::from_count(n - 1)
    }
}

/// Samples `df` on `grid_points` nodes and reports the cells where it changes
/// sign. Faulting nodes are skipped.
///
/// A node where `|df|` is below `zero_threshold` is reported as a straddle of
/// its two neighbours when they have opposite signs, and as a touch when they
/// share a sign. Runs of consecutive zero nodes (flat derivative) are ignored.
pub fn scan_sign_changes<T, D>(
    df: &D,
    iv: Interval<T>,
    grid_points: usize,
    zero_threshold: T,
) -> Vec<SignChange<T>>
where
    T: Real,
    D: Univariate<T> + ?Sized,
{
    let n = grid_points.max(3);
    let nodes: Vec<(T, Option<Sign>)> = (0..n)
        .map(|i| {
            let x = grid_node(&iv, i, n);
            (x, df.eval(x).ok().map(|v| sign_of(v, zero_threshold)))
        })
        .collect();

    let mut out = Vec::new();
    for i in 0..n - 1 {
        let (x0, s0) = nodes[i];
        let (x1, s1) = nodes[i + 1];
        match (s0, s1) {
            (Some(Sign::Positive), Some(Sign::Negative)) | (Some(Sign::Negative), Some(Sign::Positive)) => {
                out.push(SignChange::Straddle(Interval::new(x0, x1).expect("grid nodes increase")));
            }
            (_, Some(Sign::Zero)) if i + 2 < n => {
                let (x2, s2) = nodes[i + 2];
                match (s0, s2) {
                    (Some(a), Some(b)) if a != Sign::Zero && b != Sign::Zero => {
                        if a == b {
                            out.push(SignChange::Touch(x1));
                        } else {
                            out.push(SignChange::Straddle(Interval::new(x0, x2).expect("grid nodes increase")));
                        }
                    }
                    _ => {}
                }
            }
            _ => {}
        }
    }
    out
}

/// Bisects a sign-straddling cell down to `root_tolerance`, then keeps halving
/// while `|df(mid)|` still exceeds it and the cell can be split.
pub fn refine_root<T, D>(df: &D, cell: Interval<T>, root_tolerance: T) -> Result<T, CriticalError>
where
    T: Real,
    D: Univariate<T> + ?Sized,
{
    let (mut lo, mut hi) = (cell.lo(), cell.hi());
    let f_lo = df.eval(lo)?;
    let f_hi = df.eval(hi)?;
    if f_lo == T::zero() {
        return Ok(lo);
    }
    if f_hi == T::zero() {
        return Ok(hi);
    }
    if (f_lo > T::zero()) == (f_hi > T::zero()) {
        return Err(CriticalError::PreconditionViolation(format!(
            "derivative does not change sign on [{lo}, {hi}]"
        )));
    }
    let lo_positive = f_lo > T::zero();
    let two = T::lit(2.0);
    loop {
        let mid = lo + (hi - lo) / two;
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let v = df.eval(mid)?;
        if (hi - lo) <= root_tolerance && v.abs() <= root_tolerance {
            return Ok(mid);
        }
        if v == T::zero() {
            return Ok(mid);
        }
        if (v > T::zero()) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// First derivative test: the sign of `df` just left and right of `x_c`.
pub fn classify_first_derivative<T, D>(
    df: &D,
    x_c: T,
    probe_delta: T,
    zero_threshold: T,
) -> Result<CriticalKind, DomainFault>
where
    T: Real,
    D: Univariate<T> + ?Sized,
{
    let left = sign_of(df.eval(x_c - probe_delta)?, zero_threshold);
    let right = sign_of(df.eval(x_c + probe_delta)?, zero_threshold);
    Ok(match (left, right) {
        (Sign::Zero, _) | (_, Sign::Zero) => CriticalKind::Inconclusive,
        (Sign::Positive, Sign::Negative) => CriticalKind::LocalMax,
        (Sign::Negative, Sign::Positive) => CriticalKind::LocalMin,
        _ => CriticalKind::NotExtremum,
    })
}

/// Second derivative test on an already evaluated `f''(x_c)`.
pub fn classify_second_derivative<T: Real>(d2f_value: T, curvature_threshold: T) -> CriticalKind {
    if d2f_value > curvature_threshold {
        CriticalKind::LocalMin
    } else if d2f_value < -curvature_threshold {
        CriticalKind::LocalMax
    } else {
        CriticalKind::Inconclusive
    }
}

/// Critical points of `f` with explicitly supplied first and second derivatives.
pub fn find_critical_points_with<T, F, D, D2>(
    f: &F,
    df: &D,
    d2f: &D2,
    iv: Interval<T>,
    opts: &CriticalOptions<T>,
) -> Result<CriticalReport<T>, CriticalError>
where
    T: Real,
    F: Univariate<T> + ?Sized,
    D: Univariate<T> + ?Sized,
    D2: Univariate<T> + ?Sized,
{
    opts.validate()?;
    let spacing = iv.width() / T::from_count(opts.grid_points - 1);
    let mut points = Vec::new();
    let mut warnings = Vec::new();

    for change in scan_sign_changes(df, iv, opts.grid_points, opts.zero_threshold) {
        let x = match change {
            SignChange::Touch(x) => x,
            SignChange::Straddle(cell) => match refine_root(df, cell, opts.root_tolerance) {
                Ok(x) => x,
                Err(err) => {
                    warnings.push(format!(
                        "dropped sign change in [{}, {}]: {err}",
                        cell.lo(),
                        cell.hi()
                    ));
                    continue;
                }
            },
        };
        match classify_point(f, df, d2f, x, spacing, opts) {
            Ok(point) if point.derivative_residual <= opts.root_tolerance => points.push(point),
            Ok(point) => warnings.push(format!(
                "dropped candidate at x = {x}: |f'| = {} exceeds root tolerance {}",
                point.derivative_residual, opts.root_tolerance
            )),
            Err(fault) => warnings.push(format!("dropped candidate at x = {x}: {fault}")),
        }
    }
    points.sort_by(|a, b| a.x.partial_cmp(&b.x).expect("finite critical points"));
    Ok(CriticalReport { points, warnings })
}

fn classify_point<T, F, D, D2>(
    f: &F,
    df: &D,
    d2f: &D2,
    x: T,
    spacing: T,
    opts: &CriticalOptions<T>,
) -> Result<CriticalPoint<T>, DomainFault>
where
    T: Real,
    F: Univariate<T> + ?Sized,
    D: Univariate<T> + ?Sized,
    D2: Univariate<T> + ?Sized,
{
    let f_value = f.eval(x)?;
    let derivative_residual = df.eval(x)?.abs();
    let curvature_threshold = T::lit(1e-8) * f_value.abs().max(T::one());
    let second = d2f
        .eval(x)
        .map(|d2| classify_second_derivative(d2, curvature_threshold))
        .unwrap_or(CriticalKind::Inconclusive);
    let mut point = CriticalPoint {
        x,
        f_value,
        kind: second,
        test_used: TestUsed::SecondDerivative,
        derivative_residual,
    };
    if second != CriticalKind::Inconclusive {
        return Ok(point);
    }
    // Widen the probe tenfold while the derivative is still indistinguishable
    // from zero, but never beyond one grid cell.
    let mut delta = opts.probe_delta();
    loop {
        let kind = classify_first_derivative(df, x, delta, opts.zero_threshold)?;
        if kind != CriticalKind::Inconclusive {
            point.kind = kind;
            point.test_used = TestUsed::FirstDerivative;
            return Ok(point);
        }
        delta = delta * T::lit(10.0);
        if delta > spacing {
            return Ok(point);
        }
    }
}

/// Exact derivatives for expressions, central differences otherwise.
enum Derivatives<'a, T: Real> {
    Symbolic(ScalarFunction<T>, ScalarFunction<T>),
    Numeric(CentralDerivative<'a, ScalarFunction<T>, T>, SecondDerivative<'a, ScalarFunction<T>, T>),
}

impl<'a, T: Real> Derivatives<'a, T> {
    fn of(f: &'a ScalarFunction<T>, opts: &CriticalOptions<T>) -> Self {
        match f.symbolic_derivative() {
            Some(df) => {
                let d2f = df.symbolic_derivative().expect("derivative of an expression is an expression");
                Derivatives::Symbolic(df, d2f)
            }
            None => Derivatives::Numeric(
                CentralDerivative {
                    f,
                    cfg: opts.first_step,
                },
                SecondDerivative {
                    f,
                    cfg: opts.second_step,
                },
            ),
        }
    }

    fn first(&self) -> &dyn Univariate<T> {
        match self {
            Derivatives::Symbolic(df, _) => df,
            Derivatives::Numeric(df, _) => df,
        }
    }

    fn second(&self) -> &dyn Univariate<T> {
        match self {
            Derivatives::Symbolic(_, d2f) => d2f,
            Derivatives::Numeric(_, d2f) => d2f,
        }
    }
}

/// Locates, refines and classifies every critical point of `f` in `iv`.
pub fn find_critical_points<T: Real>(
    f: &ScalarFunction<T>,
    iv: Interval<T>,
    opts: &CriticalOptions<T>,
) -> Result<CriticalReport<T>, CriticalError> {
    let d = Derivatives::of(f, opts);
    find_critical_points_with(f, d.first(), d.second(), iv, opts)
}

/// Splits `iv` at the critical points and labels each piece by the sign of
/// `f'` at its midpoint.
pub fn monotonic_intervals<T: Real>(
    f: &ScalarFunction<T>,
    iv: Interval<T>,
    opts: &CriticalOptions<T>,
) -> Result<MonotonicReport<T>, CriticalError> {
    let d = Derivatives::of(f, opts);
    monotonic_intervals_with(f, d.first(), d.second(), iv, opts)
}

pub fn monotonic_intervals_with<T, F, D, D2>(
    f: &F,
    df: &D,
    d2f: &D2,
    iv: Interval<T>,
    opts: &CriticalOptions<T>,
) -> Result<MonotonicReport<T>, CriticalError>
where
    T: Real,
    F: Univariate<T> + ?Sized,
    D: Univariate<T> + ?Sized,
    D2: Univariate<T> + ?Sized,
{
    let CriticalReport { points, mut warnings } = find_critical_points_with(f, df, d2f, iv, opts)?;
    let mut bounds = vec![iv.lo()];
    bounds.extend(points.iter().map(|p| p.x).filter(|&x| x > iv.lo() && x < iv.hi()));
    bounds.push(iv.hi());

    let segments = bounds
        .windows(2)
        .filter_map(|w| Interval::new(w[0], w[1]).ok())
        .map(|interval| {
            let mid = interval.midpoint();
            let direction = match df.eval(mid) {
                Ok(v) if v > opts.zero_threshold => Direction::Increasing,
                Ok(v) if v < -opts.zero_threshold => Direction::Decreasing,
                Ok(_) => {
                    warnings.push(format!(
                        "UnlabeledSegment: f' vanishes at the midpoint of [{}, {}]",
                        interval.lo(),
                        interval.hi()
                    ));
                    Direction::Undetermined
                }
                Err(fault) => {
                    warnings.push(format!(
                        "UnlabeledSegment: [{}, {}]: {fault}",
                        interval.lo(),
                        interval.hi()
                    ));
                    Direction::Undetermined
                }
            };
            MonotonicSegment { interval, direction }
        })
        .collect();

    Ok(MonotonicReport {
        segments,
        critical_points: points,
        warnings,
    })
}
