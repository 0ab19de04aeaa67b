use thiserror::Error;

use super::{BinaryOp, Expr, UnaryOp};
use crate::Real;

/// Evaluation left the function's domain: a pole, an invalid argument, or a
/// non-finite intermediate value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("domain fault: {description}")]
pub struct DomainFault {
    pub description: String,
}

impl DomainFault {
    pub fn new(description: impl Into<String>) -> Self {
        DomainFault {
            description: description.into(),
        }
    }

    pub(crate) fn at<T: Real>(what: &str, x: T) -> Self {
        Self::new(format!("{what} at x = {x}"))
    }
}

fn finite<T: Real>(value: T, what: &str, x: T) -> Result<T, DomainFault> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(DomainFault::at(&format!("non-finite value in {what}"), x))
    }
}

fn reciprocal<T: Real>(denominator: T, name: &str, x: T) -> Result<T, DomainFault> {
    if denominator == T::zero() {
        return Err(DomainFault::at(&format!("{name} pole"), x));
    }
    finite(T::one() / denominator, name, x)
}

impl<T: Real> Expr<T> {
    /// Evaluates at `x`. Never returns a non-finite value; those become faults.
    pub fn eval(&self, x: T) -> Result<T, DomainFault> {
        match self {
            Expr::Constant(c) => finite(*c, "constant", x),
            Expr::Variable => finite(x, "variable", x),
            Expr::Unary(op, arg) => {
                let v = arg.eval(x)?;
                let out = match op {
                    UnaryOp::Neg => -v,
                    UnaryOp::Sin => v.sin(),
                    UnaryOp::Cos => v.cos(),
                    UnaryOp::Tan => v.tan(),
                    UnaryOp::Csc => return reciprocal(v.sin(), "csc", x),
                    UnaryOp::Sec => return reciprocal(v.cos(), "sec", x),
                    UnaryOp::Cot => return reciprocal(v.tan(), "cot", x),
                    UnaryOp::Asin | UnaryOp::Acos if v.abs() > T::one() => {
                        return Err(DomainFault::at(
                            &format!("{} argument outside [-1, 1]", op.name()),
                            x,
                        ))
                    }
                    UnaryOp::Asin => v.asin(),
                    UnaryOp::Acos => v.acos(),
                    UnaryOp::Atan => v.atan(),
                    UnaryOp::Sqrt if v < T::zero() => {
                        return Err(DomainFault::at("sqrt of negative argument", x))
                    }
                    UnaryOp::Sqrt => v.sqrt(),
                    UnaryOp::Exp => v.exp(),
                    UnaryOp::Ln if v <= T::zero() => {
                        return Err(DomainFault::at("ln of non-positive argument", x))
                    }
                    UnaryOp::Ln => v.ln(),
                    UnaryOp::Abs => v.abs(),
                };
                finite(out, op.name(), x)
            }
            Expr::Binary(op, lhs, rhs) => {
                let a = lhs.eval(x)?;
                let b = rhs.eval(x)?;
                let out = match op {
                    BinaryOp::Add => a + b,
                    BinaryOp::Sub => a - b,
                    BinaryOp::Mul => a * b,
                    BinaryOp::Div if b == T::zero() => {
                        return Err(DomainFault::at("division by zero", x))
                    }
                    BinaryOp::Div => a / b,
                    BinaryOp::Pow => a.powf(b),
                };
                finite(out, &format!("`{}`", op.symbol()), x)
            }
        }
    }
}
