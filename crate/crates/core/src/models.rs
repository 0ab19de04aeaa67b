//! The two applied problems: the longest pipe that can be carried flat around
//! a corridor corner, and the seat distance that maximizes the angle a cinema
//! screen subtends.

use thiserror::Error;

use crate::expr::DomainFault;
use crate::optimize::{maximize_bounded, minimize_bounded, Interval, MinimizeResult, OptimizeError, SolveOptions};
use crate::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error(transparent)]
    Solve(#[from] OptimizeError),
}

/// Corner between a corridor of width `a` and one of width `b`.
///
/// A pipe touching the inner corner at angle `alpha` to the `b` corridor has
/// length `L(alpha) = a / sin(alpha) + b / cos(alpha)`; the longest pipe that
/// fits is the minimum of `L` over `(0, pi/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipeModel<T> {
    width_a: T,
    width_b: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipeSolution<T> {
    pub alpha: T,
    pub length: T,
    pub solve: MinimizeResult<T>,
}

impl<T: Real> PipeModel<T> {
    pub fn new(width_a: T, width_b: T) -> Result<Self, ModelError> {
        let ok = |w: T| w > T::zero() && w.is_finite();
        if !(ok(width_a) && ok(width_b)) {
            return Err(ModelError::Invalid(format!(
                "corridor widths must be positive and finite, got a = {width_a}, b = {width_b}"
            )));
        }
        Ok(PipeModel { width_a, width_b })
    }

    pub fn width_a(&self) -> T {
        self.width_a
    }

    pub fn width_b(&self) -> T {
        self.width_b
    }

    /// `a csc(alpha) + b sec(alpha)` for `0 < alpha < pi/2`.
    pub fn length(&self, alpha: T) -> Result<T, DomainFault> {
        if !(alpha > T::zero() && alpha < T::FRAC_PI_2()) {
            return Err(DomainFault::at("pipe angle outside (0, pi/2)", alpha));
        }
        let value = self.width_a / alpha.sin() + self.width_b / alpha.cos();
        if value.is_finite() {
            Ok(value)
        } else {
            Err(DomainFault::at("pipe length overflow", alpha))
        }
    }

    /// `(0, pi/2)` as a closed interval; the solver's endpoint margin keeps
    /// probes off the poles.
    pub fn domain() -> Interval<T> {
        Interval::new(T::zero(), T::FRAC_PI_2()).expect("quarter turn is a valid interval")
    }

    /// Numerically minimizes the length over the open quarter turn.
    pub fn max_length(&self, opts: &SolveOptions<T>) -> Result<PipeSolution<T>, ModelError> {
        let solve = minimize_bounded(&|alpha: T| self.length(alpha), Self::domain(), opts)?;
        Ok(PipeSolution {
            alpha: solve.x_min,
            length: solve.f_min,
            solve,
        })
    }

    /// `tan^3(alpha*) = a / b` and `L* = (a^(2/3) + b^(2/3))^(3/2)`.
    pub fn closed_form(&self) -> (T, T) {
        let two_thirds = T::lit(2.0) / T::lit(3.0);
        let alpha = (self.width_a / self.width_b).cbrt().atan();
        let length = (self.width_a.powf(two_thirds) + self.width_b.powf(two_thirds)).powf(T::lit(1.5));
        (alpha, length)
    }
}

/// Screen spanning heights `[bottom, top]` above eye level, seen from a
/// horizontal distance `x`: `theta(x) = atan(top/x) - atan(bottom/x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CinemaModel<T> {
    top: T,
    bottom: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CinemaSolution<T> {
    pub distance: T,
    pub angle: T,
    pub solve: MinimizeResult<T>,
    pub warnings: Vec<String>,
}

impl<T: Real> CinemaModel<T> {
    pub fn new(top: T, bottom: T) -> Result<Self, ModelError> {
        if !(bottom >= T::zero() && bottom < top && top.is_finite()) {
            return Err(ModelError::Invalid(format!(
                "screen heights need 0 <= bottom < top, got top = {top}, bottom = {bottom}"
            )));
        }
        Ok(CinemaModel { top, bottom })
    }

    pub fn top(&self) -> T {
        self.top
    }

    pub fn bottom(&self) -> T {
        self.bottom
    }

    pub fn angle(&self, x: T) -> Result<T, DomainFault> {
        if !(x > T::zero() && x.is_finite()) {
            return Err(DomainFault::at("viewing distance must be positive", x));
        }
        Ok((self.top / x).atan() - (self.bottom / x).atan())
    }

    /// Maximizes the viewing angle over `search`.
    ///
    /// With `bottom == 0` the angle grows all the way to `x -> 0`; the solver
    /// then stops at the lower bound and a boundary warning is attached.
    pub fn best_distance(
        &self,
        search: Interval<T>,
        opts: &SolveOptions<T>,
    ) -> Result<CinemaSolution<T>, ModelError> {
        let solve = maximize_bounded(&|x: T| self.angle(x), search, opts)?;
        let mut warnings = Vec::new();
        if self.bottom == T::zero() {
            warnings.push(
                "BoundaryOptimum: bottom = 0, the angle increases monotonically as x -> 0 and has no interior maximum"
                    .to_string(),
            );
        } else {
            let edge = T::lit(4.0) * opts.converged_width(solve.x_min) + opts.endpoint_margin * search.width();
            if solve.x_min - search.lo() <= edge || search.hi() - solve.x_min <= edge {
                warnings.push(format!(
                    "BoundaryOptimum: maximum found at the edge of the search interval [{}, {}]",
                    search.lo(),
                    search.hi()
                ));
            }
        }
        Ok(CinemaSolution {
            distance: solve.x_min,
            angle: solve.f_min,
            solve,
            warnings,
        })
    }

    /// `x* = sqrt(top * bottom)` and the angle there.
    pub fn closed_form(&self) -> (T, T) {
        let x = (self.top * self.bottom).sqrt();
        let theta = if x > T::zero() {
            (self.top / x).atan() - (self.bottom / x).atan()
        } else {
            T::FRAC_PI_2()
        };
        (x, theta)
    }
}

/// Free-function form of [`PipeModel::length`].
pub fn pipe_length<T: Real>(alpha: T, m: &PipeModel<T>) -> Result<T, DomainFault> {
    m.length(alpha)
}

/// Free-function form of [`PipeModel::max_length`].
pub fn pipe_max_length<T: Real>(m: &PipeModel<T>, opts: &SolveOptions<T>) -> Result<PipeSolution<T>, ModelError> {
    m.max_length(opts)
}

/// Free-function form of [`CinemaModel::angle`].
pub fn cinema_angle<T: Real>(x: T, m: &CinemaModel<T>) -> Result<T, DomainFault> {
    m.angle(x)
}

/// Free-function form of [`CinemaModel::best_distance`].
pub fn cinema_best_distance<T: Real>(
    m: &CinemaModel<T>,
    search: Interval<T>,
    opts: &SolveOptions<T>,
) -> Result<CinemaSolution<T>, ModelError> {
    m.best_distance(search, opts)
}
