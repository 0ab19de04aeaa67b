use super::{BinaryOp, Expr};
use crate::Real;

/// Bottom-up constant folding plus the identities `x+0`, `0+x`, `x-0`, `x*1`,
/// `1*x`, `x*0`, `0*x`, `x/1` and `x^1`. No other algebra is attempted.
///
/// Constant subtrees that would fault (`1/0`, `ln(-1)`) are left unfolded.
pub fn simplify<T: Real>(e: &Expr<T>) -> Expr<T> {
    match e {
        Expr::Constant(_) | Expr::Variable => e.clone(),
        Expr::Unary(op, a) => {
            let a = simplify(a);
            fold(Expr::unary(*op, a))
        }
        Expr::Binary(op, a, b) => {
            let (a, b) = (simplify(a), simplify(b));
            let zero = T::zero();
            let one = T::one();
            match (op, a.as_constant(), b.as_constant()) {
                (_, Some(_), Some(_)) => fold(Expr::binary(*op, a, b)),
                (BinaryOp::Add, _, Some(k)) if k == zero => a,
                (BinaryOp::Add, Some(k), _) if k == zero => b,
                (BinaryOp::Sub, _, Some(k)) if k == zero => a,
                (BinaryOp::Mul, _, Some(k)) | (BinaryOp::Mul, Some(k), _) if k == zero => {
                    Expr::Constant(zero)
                }
                (BinaryOp::Mul, _, Some(k)) if k == one => a,
                (BinaryOp::Mul, Some(k), _) if k == one => b,
                (BinaryOp::Div, _, Some(k)) if k == one => a,
                (BinaryOp::Pow, _, Some(k)) if k == one => a,
                _ => Expr::binary(*op, a, b),
            }
        }
    }
}

fn fold<T: Real>(e: Expr<T>) -> Expr<T> {
    let foldable = match &e {
        Expr::Unary(_, a) => a.as_constant().is_some(),
        Expr::Binary(_, a, b) => a.as_constant().is_some() && b.as_constant().is_some(),
        _ => false,
    };
    if !foldable {
        return e;
    }
    match e.eval(T::zero()) {
        Ok(v) => Expr::Constant(v),
        Err(_) => e,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{differentiate, parse, UnaryOp};

    fn s(text: &str) -> Expr<f64> {
        simplify(&parse::<f64>(text).unwrap())
    }

    #[test]
    fn identities() {
        assert_eq!(s("x*1 + 0"), Expr::Variable);
        assert_eq!(s("0 + 1*x"), Expr::Variable);
        assert_eq!(s("x - 0"), Expr::Variable);
        assert_eq!(s("x / 1"), Expr::Variable);
        assert_eq!(s("x^1"), Expr::Variable);
        assert_eq!(s("sin(x)*0"), Expr::Constant(0.0));
        assert_eq!(s("0*sin(x)"), Expr::Constant(0.0));
    }

    #[test]
    fn constant_folding() {
        assert_eq!(s("2+3"), Expr::Constant(5.0));
        assert_eq!(s("2*3 + x"), parse("6 + x").unwrap());
        assert_eq!(s("cos(0)*x"), Expr::Variable);
        assert_eq!(s("-(2)"), Expr::Constant(-2.0));
    }

    #[test]
    fn faulting_constants_stay_unfolded() {
        assert_eq!(s("1/0"), parse("1/0").unwrap());
        assert_eq!(
            s("ln(0-1) + x"),
            Expr::Constant(-1.0).apply(UnaryOp::Ln).add(Expr::Variable)
        );
    }

    #[test]
    fn no_other_rewrites() {
        assert_eq!(s("x + x"), parse("x + x").unwrap());
        assert_eq!(s("x - x"), parse("x - x").unwrap());
        assert_eq!(s("x^0"), parse("x^0").unwrap());
        assert_eq!(s("--x"), parse("--x").unwrap());
    }

    #[test]
    fn derivative_of_square() {
        let d = simplify(&differentiate(&parse::<f64>("x^2").unwrap()));
        assert_eq!(d, Expr::Constant(2.0).mul(Expr::Variable));
    }
}
