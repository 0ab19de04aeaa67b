use super::{simplify, BinaryOp, Expr, UnaryOp};
use crate::Real;

/// Symbolic derivative with respect to `x`, passed through [`simplify`].
pub fn differentiate<T: Real>(e: &Expr<T>) -> Expr<T> {
    simplify(&derive(e))
}

fn c<T: Real>(v: f64) -> Expr<T> {
    Expr::Constant(T::lit(v))
}

fn derive<T: Real>(e: &Expr<T>) -> Expr<T> {
    match e {
        Expr::Constant(_) => c(0.0),
        Expr::Variable => c(1.0),
        Expr::Unary(UnaryOp::Neg, u) => derive(u).neg(),
        Expr::Unary(op, u) => {
            let u = u.as_ref().clone();
            let du = derive(&u);
            let outer = match op {
                UnaryOp::Neg => unreachable!(),
                UnaryOp::Sin => u.apply(UnaryOp::Cos),
                UnaryOp::Cos => u.apply(UnaryOp::Sin).neg(),
                UnaryOp::Tan => u.apply(UnaryOp::Sec).pow(c(2.0)),
                UnaryOp::Csc => u
                    .clone()
                    .apply(UnaryOp::Csc)
                    .mul(u.apply(UnaryOp::Cot))
                    .neg(),
                UnaryOp::Sec => u.clone().apply(UnaryOp::Sec).mul(u.apply(UnaryOp::Tan)),
                UnaryOp::Cot => u.apply(UnaryOp::Csc).pow(c(2.0)).neg(),
                UnaryOp::Asin => c(1.0).div(c(1.0).sub(u.pow(c(2.0))).apply(UnaryOp::Sqrt)),
                UnaryOp::Acos => c(1.0)
                    .div(c(1.0).sub(u.pow(c(2.0))).apply(UnaryOp::Sqrt))
                    .neg(),
                UnaryOp::Atan => c(1.0).div(c(1.0).add(u.pow(c(2.0)))),
                UnaryOp::Sqrt => c(1.0).div(c(2.0).mul(u.apply(UnaryOp::Sqrt))),
                UnaryOp::Exp => u.apply(UnaryOp::Exp),
                UnaryOp::Ln => c(1.0).div(u),
                // undefined at 0, where the division faults
                UnaryOp::Abs => u.clone().div(u.apply(UnaryOp::Abs)),
            };
            outer.mul(du)
        }
        Expr::Binary(op, u, v) => {
            let (u, v) = (u.as_ref().clone(), v.as_ref().clone());
            match op {
                BinaryOp::Add => derive(&u).add(derive(&v)),
                BinaryOp::Sub => derive(&u).sub(derive(&v)),
                BinaryOp::Mul => derive(&u).mul(v.clone()).add(u.clone().mul(derive(&v))),
                BinaryOp::Div => {
                    let num = derive(&u).mul(v.clone()).sub(u.mul(derive(&v)));
                    num.div(v.pow(c(2.0)))
                }
                BinaryOp::Pow => derive_pow(u, v),
            }
        }
    }
}

fn derive_pow<T: Real>(base: Expr<T>, exponent: Expr<T>) -> Expr<T> {
    if exponent.is_constant() {
        // n * u^(n-1) * u'
        let lowered = match exponent.as_constant() {
            Some(n) => Expr::Constant(n - T::one()),
            None => exponent.clone().sub(c(1.0)),
        };
        let du = derive(&base);
        exponent.mul(base.pow(lowered)).mul(du)
    } else if base.is_constant() {
        // a^v * ln(a) * v'
        let dv = derive(&exponent);
        base.clone()
            .pow(exponent)
            .mul(base.apply(UnaryOp::Ln))
            .mul(dv)
    } else {
        // u^v * (v' ln(u) + v u' / u)
        let du = derive(&base);
        let dv = derive(&exponent);
        let inner = dv
            .mul(base.clone().apply(UnaryOp::Ln))
            .add(exponent.clone().mul(du).div(base.clone()));
        base.pow(exponent).mul(inner)
    }
}
