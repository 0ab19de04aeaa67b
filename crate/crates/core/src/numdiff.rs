//! Central finite differences for functions without a symbolic form.

use crate::expr::DomainFault;
use crate::function::Univariate;
use crate::Real;

/// Step for a central difference. Must be positive and finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffConfig<T> {
    step: T,
}

impl<T: Real> DiffConfig<T> {
    pub fn new(step: T) -> Option<Self> {
        (step > T::zero() && step.is_finite()).then_some(DiffConfig { step })
    }

    /// h = 1e-5, about eps^(1/3) for f64.
    pub fn first() -> Self {
        DiffConfig {
            step: T::lit(1e-5),
        }
    }

    /// h = 1e-4, about eps^(1/4) for f64.
    pub fn second() -> Self {
        DiffConfig {
            step: T::lit(1e-4),
        }
    }

    pub fn step(&self) -> T {
        self.step
    }
}

/// `(f(x+h) - f(x-h)) / 2h`
pub fn central_diff<T: Real, F: Univariate<T> + ?Sized>(
    f: &F,
    x: T,
    cfg: DiffConfig<T>,
) -> Result<T, DomainFault> {
    let h = cfg.step;
    let forward = f.eval(x + h)?;
    let backward = f.eval(x - h)?;
    Ok((forward - backward) / (h + h))
}

/// `(f(x+h) - 2f(x) + f(x-h)) / h^2`
pub fn second_diff<T: Real, F: Univariate<T> + ?Sized>(
    f: &F,
    x: T,
    cfg: DiffConfig<T>,
) -> Result<T, DomainFault> {
    let h = cfg.step;
    let forward = f.eval(x + h)?;
    let centre = f.eval(x)?;
    let backward = f.eval(x - h)?;
    Ok((forward - (centre + centre) + backward) / (h * h))
}

/// Finite-difference derivative of `f`, usable wherever a function is expected.
#[derive(Debug, Clone, Copy)]
pub struct CentralDerivative<'a, F: ?Sized, T> {
    pub f: &'a F,
    pub cfg: DiffConfig<T>,
}

impl<T: Real, F: Univariate<T> + ?Sized> Univariate<T> for CentralDerivative<'_, F, T> {
    fn eval(&self, x: T) -> Result<T, DomainFault> {
        central_diff(self.f, x, self.cfg)
    }
}

/// Second-difference curvature of `f`.
#[derive(Debug, Clone, Copy)]
pub struct SecondDerivative<'a, F: ?Sized, T> {
    pub f: &'a F,
    pub cfg: DiffConfig<T>,
}

impl<T: Real, F: Univariate<T> + ?Sized> Univariate<T> for SecondDerivative<'_, F, T> {
    fn eval(&self, x: T) -> Result<T, DomainFault> {
        second_diff(self.f, x, self.cfg)
    }
}
