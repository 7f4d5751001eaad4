//! Immutable expression trees over complex scalars.
//!
//! An [`Expr`] is a reference-counted tree whose leaves are complex
//! constants and named symbols and whose interior nodes are the
//! arithmetic operators, `pow`, and a fixed set of unary functions.
//! Trees are cheap to clone and share; nothing is mutated after
//! construction, so they can be sent freely between threads.
//!
//! Powers and logarithms use the principal branch with argument in
//! (−π, π]. `logabs` is a separate node for `ln|·|`; it exists so that
//! finite-part integrands can be written symbolically, and its formal
//! derivative is `1/x`.

mod calculus;
mod eval;
mod simplify;

pub use calculus::{differentiate, substitute};
pub use eval::{evaluate, Binding};
pub use simplify::simplify;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex64;

/// Unary function tags carried by [`Node::Func`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Log,
    LogAbs,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Sqrt,
    Conj,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::LogAbs => "logabs",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Sqrt => "sqrt",
            Func::Conj => "conj",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "logabs" => Func::LogAbs,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "sqrt" => Func::Sqrt,
            "conj" => Func::Conj,
            _ => return None,
        })
    }
}

#[derive(Debug, PartialEq)]
pub enum Node {
    Const(Complex64),
    Symbol(Arc<str>),
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Neg(Expr),
    Pow(Expr, Expr),
    Func(Func, Expr),
}

/// An immutable expression tree. Clones share structure.
#[derive(Clone)]
pub struct Expr(Arc<Node>);

impl std::fmt::Debug for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Expr({})", self)
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Expr {
    pub(crate) fn new(node: Node) -> Expr {
        Expr(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn constant(value: Complex64) -> Expr {
        Expr::new(Node::Const(value))
    }

    pub fn real(value: f64) -> Expr {
        Expr::constant(Complex64::new(value, 0.0))
    }

    pub fn i() -> Expr {
        Expr::constant(Complex64::new(0.0, 1.0))
    }

    pub fn pi() -> Expr {
        Expr::real(std::f64::consts::PI)
    }

    pub fn symbol(name: &str) -> Expr {
        assert!(!name.is_empty(), "symbol names must be nonempty");
        Expr::new(Node::Symbol(Arc::from(name)))
    }

    /// The spatial variable `x`.
    pub fn x() -> Expr {
        Expr::symbol("x")
    }

    /// The regularization parameter `eps`.
    pub fn eps() -> Expr {
        Expr::symbol("eps")
    }

    pub fn pow(self, exponent: Expr) -> Expr {
        Expr::new(Node::Pow(self, exponent))
    }

    pub fn powf(self, exponent: f64) -> Expr {
        self.pow(Expr::real(exponent))
    }

    pub fn func(f: Func, arg: Expr) -> Expr {
        Expr::new(Node::Func(f, arg))
    }

    pub fn exp(self) -> Expr {
        Expr::func(Func::Exp, self)
    }

    pub fn log(self) -> Expr {
        Expr::func(Func::Log, self)
    }

    pub fn logabs(self) -> Expr {
        Expr::func(Func::LogAbs, self)
    }

    pub fn sin(self) -> Expr {
        Expr::func(Func::Sin, self)
    }

    pub fn cos(self) -> Expr {
        Expr::func(Func::Cos, self)
    }

    pub fn tan(self) -> Expr {
        Expr::func(Func::Tan, self)
    }

    pub fn sinh(self) -> Expr {
        Expr::func(Func::Sinh, self)
    }

    pub fn cosh(self) -> Expr {
        Expr::func(Func::Cosh, self)
    }

    pub fn tanh(self) -> Expr {
        Expr::func(Func::Tanh, self)
    }

    pub fn sqrt(self) -> Expr {
        Expr::func(Func::Sqrt, self)
    }

    pub fn conj(self) -> Expr {
        Expr::func(Func::Conj, self)
    }

    /// The constant value if this node is a constant.
    pub fn as_const(&self) -> Option<Complex64> {
        match self.node() {
            Node::Const(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_const(&self, v: f64) -> bool {
        matches!(self.node(), Node::Const(c) if c.re == v && c.im == 0.0)
    }

    /// Names of all free symbols, sorted.
    pub fn free_symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self.node() {
            Node::Const(_) => {}
            Node::Symbol(s) => {
                out.insert(s.to_string());
            }
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b)
            | Node::Pow(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
            Node::Neg(a) | Node::Func(_, a) => a.collect_symbols(out),
        }
    }

    pub fn contains_symbol(&self, name: &str) -> bool {
        match self.node() {
            Node::Const(_) => false,
            Node::Symbol(s) => &**s == name,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b)
            | Node::Pow(a, b) => a.contains_symbol(name) || b.contains_symbol(name),
            Node::Neg(a) | Node::Func(_, a) => a.contains_symbol(name),
        }
    }

    /// Node count, handy for guarding against runaway growth in tests.
    pub fn size(&self) -> usize {
        match self.node() {
            Node::Const(_) | Node::Symbol(_) => 1,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b)
            | Node::Pow(a, b) => 1 + a.size() + b.size(),
            Node::Neg(a) | Node::Func(_, a) => 1 + a.size(),
        }
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::new(Node::Add(self, rhs))
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::new(Node::Sub(self, rhs))
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::new(Node::Mul(self, rhs))
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::new(Node::Div(self, rhs))
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::new(Node::Neg(self))
    }
}
