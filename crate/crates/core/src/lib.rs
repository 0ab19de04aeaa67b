//! One-dimensional optimization toolkit.
//!
//! Scalar functions are entered as text ([`expr::parse`]), evaluated and
//! differentiated symbolically, minimized or maximized over a bounded interval
//! with Brent's method or golden-section search ([`optimize`]), and analysed
//! for critical points and monotonic segments ([`critical`]). Two applied
//! problems, carrying a pipe around a corridor corner and choosing a cinema
//! seat distance, live in [`models`] with their closed-form optima.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases below fix
//! the scalar type for the common `f64` case.

pub mod critical;
pub mod expr;
pub mod function;
pub mod models;
pub mod numdiff;
pub mod optimize;
mod scalar;

pub use critical::{
    find_critical_points, monotonic_intervals, CriticalKind, CriticalOptions, CriticalPoint, CriticalReport, Direction,
    MonotonicReport, MonotonicSegment, SignChange, TestUsed,
};
pub use expr::{differentiate, parse, simplify, BinaryOp, DomainFault, Expr, ParseError, UnaryOp};
pub use function::{Negated, ScalarFunction, Univariate};
pub use models::{CinemaModel, CinemaSolution, ModelError, PipeModel, PipeSolution};
pub use numdiff::DiffConfig;
pub use optimize::{maximize_bounded, minimize_bounded, Interval, Method, MinimizeResult, OptimizeError, SolveOptions};
pub use scalar::Real;

pub type Expr64 = Expr<f64>;
pub type Expr32 = Expr<f32>;
pub type ScalarFunction64 = ScalarFunction<f64>;
pub type ScalarFunction32 = ScalarFunction<f32>;
pub type Interval64 = Interval<f64>;
pub type Interval32 = Interval<f32>;
pub type SolveOptions64 = SolveOptions<f64>;
pub type MinimizeResult64 = MinimizeResult<f64>;
pub type CriticalPoint64 = CriticalPoint<f64>;
pub type PipeModel64 = PipeModel<f64>;
pub type CinemaModel64 = CinemaModel<f64>;
