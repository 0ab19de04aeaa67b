use crate::expr::{differentiate, DomainFault, Expr};
use crate::models::{CinemaModel, PipeModel};
use crate::Real;

/// A real function of one real variable that may fault outside its domain.
///
/// Solvers and analysers accept anything implementing this, so closures
/// (`Fn(T) -> Result<T, DomainFault>`) work alongside [`ScalarFunction`].
pub trait Univariate<T> {
    fn eval(&self, x: T) -> Result<T, DomainFault>;
}

impl<T: Real> Univariate<T> for Expr<T> {
    fn eval(&self, x: T) -> Result<T, DomainFault> {
        Expr::eval(self, x)
    }
}

impl<T, F> Univariate<T> for F
where
    F: Fn(T) -> Result<T, DomainFault>,
{
    fn eval(&self, x: T) -> Result<T, DomainFault> {
        self(x)
    }
}

/// `x -> -f(x)`, borrowing `f`.
#[derive(Debug, Clone, Copy)]
pub struct Negated<'a, F: ?Sized>(pub &'a F);

impl<T: Real, F: Univariate<T> + ?Sized> Univariate<T> for Negated<'_, F> {
    fn eval(&self, x: T) -> Result<T, DomainFault> {
        self.0.eval(x).map(|v| -v)
    }
}

/// The functions the toolkit knows how to build from user input.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarFunction<T> {
    Expr(Expr<T>),
    Pipe(PipeModel<T>),
    Cinema(CinemaModel<T>),
    Neg(Box<ScalarFunction<T>>),
}

impl<T: Real> ScalarFunction<T> {
    pub fn negated(self) -> Self {
        ScalarFunction::Neg(Box::new(self))
    }

    /// Exact derivative when the function is (a negation of) an expression.
    /// Built-in model curves return `None`; callers fall back to finite differences.
    pub fn symbolic_derivative(&self) -> Option<ScalarFunction<T>> {
        match self {
            ScalarFunction::Expr(e) => Some(ScalarFunction::Expr(differentiate(e))),
            ScalarFunction::Neg(inner) => inner.symbolic_derivative().map(Self::negated),
            ScalarFunction::Pipe(_) | ScalarFunction::Cinema(_) => None,
        }
    }
}

impl<T: Real> Univariate<T> for ScalarFunction<T> {
    fn eval(&self, x: T) -> Result<T, DomainFault> {
        match self {
            ScalarFunction::Expr(e) => e.eval(x),
            ScalarFunction::Pipe(m) => m.length(x),
            ScalarFunction::Cinema(m) => m.angle(x),
            ScalarFunction::Neg(inner) => inner.eval(x).map(|v| -v),
        }
    }
}

impl<T> From<Expr<T>> for ScalarFunction<T> {
    fn from(e: Expr<T>) -> Self {
        ScalarFunction::Expr(e)
    }
}

impl<T> From<PipeModel<T>> for ScalarFunction<T> {
    fn from(m: PipeModel<T>) -> Self {
        ScalarFunction::Pipe(m)
    }
}

impl<T> From<CinemaModel<T>> for ScalarFunction<T> {
    fn from(m: CinemaModel<T>) -> Self {
        ScalarFunction::Cinema(m)
    }
}
