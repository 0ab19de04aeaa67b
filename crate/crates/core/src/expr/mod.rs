//! Expression trees for scalar functions of the single variable `x`.

mod diff;
mod eval;
mod parser;
mod simplify;

use std::fmt;

use crate::Real;

pub use diff::differentiate;
pub use eval::DomainFault;
pub use parser::{parse, ParseError};
pub use simplify::simplify;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Neg,
    Sin,
    Cos,
    Tan,
    Csc,
    Sec,
    Cot,
    Asin,
    Acos,
    Atan,
    Sqrt,
    Exp,
    Ln,
    Abs,
}

impl UnaryOp {
    /// Every named function, in grammar order. `Neg` is an operator, not a name.
    pub const FUNCTIONS: [UnaryOp; 13] = [
        UnaryOp::Sin,
        UnaryOp::Cos,
        UnaryOp::Tan,
        UnaryOp::Csc,
        UnaryOp::Sec,
        UnaryOp::Cot,
        UnaryOp::Asin,
        UnaryOp::Acos,
        UnaryOp::Atan,
        UnaryOp::Sqrt,
        UnaryOp::Exp,
        UnaryOp::Ln,
        UnaryOp::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "-",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Tan => "tan",
            UnaryOp::Csc => "csc",
            UnaryOp::Sec => "sec",
            UnaryOp::Cot => "cot",
            UnaryOp::Asin => "asin",
            UnaryOp::Acos => "acos",
            UnaryOp::Atan => "atan",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Exp => "exp",
            UnaryOp::Ln => "ln",
            UnaryOp::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<UnaryOp> {
        Self::FUNCTIONS.iter().copied().find(|op| op.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

/// Immutable expression tree over the variable `x`.
///
/// Structural equality (`==`) compares trees node by node; two trees that
/// evaluate identically but are shaped differently are not equal.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr<T> {
    Constant(T),
    Variable,
    Unary(UnaryOp, Box<Expr<T>>),
    Binary(BinaryOp, Box<Expr<T>>, Box<Expr<T>>),
}

#[allow(clippy::should_implement_trait)]
impl<T: Real> Expr<T> {
    pub fn constant(value: T) -> Self {
        Expr::Constant(value)
    }

    pub fn var() -> Self {
        Expr::Variable
    }

    pub fn unary(op: UnaryOp, arg: Expr<T>) -> Self {
        Expr::Unary(op, Box::new(arg))
    }

    pub fn binary(op: BinaryOp, lhs: Expr<T>, rhs: Expr<T>) -> Self {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn neg(self) -> Self {
        Self::unary(UnaryOp::Neg, self)
    }

    pub fn add(self, rhs: Expr<T>) -> Self {
        Self::binary(BinaryOp::Add, self, rhs)
    }

    pub fn sub(self, rhs: Expr<T>) -> Self {
        Self::binary(BinaryOp::Sub, self, rhs)
    }

    pub fn mul(self, rhs: Expr<T>) -> Self {
        Self::binary(BinaryOp::Mul, self, rhs)
    }

    pub fn div(self, rhs: Expr<T>) -> Self {
        Self::binary(BinaryOp::Div, self, rhs)
    }

    pub fn pow(self, rhs: Expr<T>) -> Self {
        Self::binary(BinaryOp::Pow, self, rhs)
    }

    pub fn apply(self, op: UnaryOp) -> Self {
        Self::unary(op, self)
    }

    /// True when the tree does not mention `x`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Constant(_) => true,
            Expr::Variable => false,
            Expr::Unary(_, a) => a.is_constant(),
            Expr::Binary(_, a, b) => a.is_constant() && b.is_constant(),
        }
    }

    pub fn as_constant(&self) -> Option<T> {
        match self {
            Expr::Constant(c) => Some(*c),
            _ => None,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Expr::Constant(_) | Expr::Variable => 1,
            Expr::Unary(_, a) => 1 + a.node_count(),
            Expr::Binary(_, a, b) => 1 + a.node_count() + b.node_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Constant(_) | Expr::Variable => 1,
            Expr::Unary(_, a) => 1 + a.depth(),
            Expr::Binary(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

// Binding strength used by the printer; mirrors the grammar levels.
const PREC_SUM: u8 = 1;
const PREC_PRODUCT: u8 = 2;
const PREC_FACTOR: u8 = 3;
const PREC_ATOM: u8 = 5;

impl<T: Real> Expr<T> {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Constant(c) if c.is_sign_negative() => PREC_ATOM,
            Expr::Constant(_) | Expr::Variable => PREC_ATOM,
            Expr::Unary(UnaryOp::Neg, _) => PREC_FACTOR,
            Expr::Unary(_, _) => PREC_ATOM,
            Expr::Binary(BinaryOp::Add | BinaryOp::Sub, _, _) => PREC_SUM,
            Expr::Binary(BinaryOp::Mul | BinaryOp::Div, _, _) => PREC_PRODUCT,
            Expr::Binary(BinaryOp::Pow, _, _) => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Constant(c) if c.is_sign_negative() => write!(f, "(-{})", c.abs()),
            Expr::Constant(c) => write!(f, "{c}"),
            Expr::Variable => f.write_str("x"),
            Expr::Unary(UnaryOp::Neg, a) => {
                f.write_str("-")?;
                a.write_at(f, PREC_FACTOR)
            }
            Expr::Unary(op, a) => {
                write!(f, "{}(", op.name())?;
                a.write_at(f, 0)?;
                f.write_str(")")
            }
            Expr::Binary(op, a, b) => {
                let (lhs, rhs) = match op {
                    BinaryOp::Add | BinaryOp::Sub => (PREC_SUM, PREC_PRODUCT),
                    BinaryOp::Mul | BinaryOp::Div => (PREC_PRODUCT, PREC_FACTOR),
                    BinaryOp::Pow => (PREC_ATOM, PREC_FACTOR),
                };
                a.write_at(f, lhs)?;
                if *op == BinaryOp::Pow {
                    f.write_str("^")?;
                } else {
                    write!(f, " {} ", op.symbol())?;
                }
                b.write_at(f, rhs)
            }
        }
    }
}

/// Prints in the input grammar with the fewest parentheses that keep the tree
/// shape, so `parse(&e.to_string())` rebuilds `e` for any tree whose constants
/// are non-negative (every tree the parser itself produces).
impl<T: Real> fmt::Display for Expr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
