//! Symbolic differentiation and substitution.

use super::{Expr, Func, Node};
use crate::error::{Error, Result};

fn zero() -> Expr {
    Expr::real(0.0)
}

fn is_zero(e: &Expr) -> bool {
    e.is_const(0.0)
}

// Constructors that prune the zero terms differentiation produces in
// bulk; anything beyond that is left to `simplify`.
fn add(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) {
        b
    } else if is_zero(&b) {
        a
    } else {
        a + b
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    if is_zero(&b) {
        a
    } else if is_zero(&a) {
        -b
    } else {
        a - b
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) || is_zero(&b) {
        zero()
    } else if a.is_const(1.0) {
        b
    } else if b.is_const(1.0) {
        a
    } else {
        a * b
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) {
        zero()
    } else if b.is_const(1.0) {
        a
    } else {
        a / b
    }
}

/// Exact symbolic derivative of `e` with respect to the symbol `sym`.
///
/// Unknown symbols differentiate to zero. A `conj` node whose subtree
/// mentions `sym` is rejected: conjugation is not complex
/// differentiable. `logabs` uses the formal rule `(ln|u|)' = u'/u`,
/// valid where `u` is real-valued away from zero.
pub fn differentiate(e: &Expr, sym: &str) -> Result<Expr> {
    match e.node() {
        Node::Const(_) => Ok(zero()),
        Node::Symbol(s) => Ok(if &**s == sym {
            Expr::real(1.0)
        } else {
            zero()
        }),
        Node::Add(a, b) => Ok(add(differentiate(a, sym)?, differentiate(b, sym)?)),
        Node::Sub(a, b) => Ok(sub(differentiate(a, sym)?, differentiate(b, sym)?)),
        Node::Mul(a, b) => {
            let da = differentiate(a, sym)?;
            let db = differentiate(b, sym)?;
            Ok(add(mul(da, b.clone()), mul(a.clone(), db)))
        }
        Node::Div(a, b) => {
            let da = differentiate(a, sym)?;
            let db = differentiate(b, sym)?;
            let num = sub(mul(da, b.clone()), mul(a.clone(), db));
            Ok(div(num, b.clone() * b.clone()))
        }
        Node::Neg(a) => Ok(match differentiate(a, sym)? {
            d if is_zero(&d) => zero(),
            d => -d,
        }),
        Node::Pow(base, exponent) => {
            let db = differentiate(base, sym)?;
            let de = differentiate(exponent, sym)?;
            if is_zero(&de) {
                // power rule: (u^c)' = c u^(c-1) u'
                if is_zero(&db) {
                    return Ok(zero());
                }
                let cm1 = sub(exponent.clone(), Expr::real(1.0));
                Ok(mul(
                    mul(exponent.clone(), base.clone().pow(cm1)),
                    db,
                ))
            } else {
                // u^v = exp(v log u): derivative (v' log u + v u'/u) u^v
                let term1 = mul(de, base.clone().log());
                let term2 = div(mul(exponent.clone(), db), base.clone());
                Ok(mul(add(term1, term2), e.clone()))
            }
        }
        Node::Func(f, a) => {
            if *f == Func::Conj {
                return if a.contains_symbol(sym) {
                    Err(Error::NonDifferentiable(format!(
                        "conj blocks differentiation with respect to `{sym}`"
                    )))
                } else {
                    Ok(zero())
                };
            }
            let da = differentiate(a, sym)?;
            if is_zero(&da) {
                return Ok(zero());
            }
            let outer = match f {
                Func::Exp => mul(da, a.clone().exp()),
                Func::Log | Func::LogAbs => div(da, a.clone()),
                Func::Sin => mul(da, a.clone().cos()),
                Func::Cos => -mul(da, a.clone().sin()),
                Func::Tan => div(da, a.clone().cos() * a.clone().cos()),
                Func::Sinh => mul(da, a.clone().cosh()),
                Func::Cosh => mul(da, a.clone().sinh()),
                Func::Tanh => div(da, a.clone().cosh() * a.clone().cosh()),
                Func::Sqrt => div(da, Expr::real(2.0) * a.clone().sqrt()),
                Func::Conj => unreachable!(),
            };
            Ok(outer)
        }
    }
}

/// Replace every occurrence of the symbol `sym` by `replacement`.
///
/// The symbol namespace is flat, so capture cannot occur.
pub fn substitute(e: &Expr, sym: &str, replacement: &Expr) -> Expr {
    match e.node() {
        Node::Const(_) => e.clone(),
        Node::Symbol(s) => {
            if &**s == sym {
                replacement.clone()
            } else {
                e.clone()
            }
        }
        Node::Add(a, b) => substitute(a, sym, replacement) + substitute(b, sym, replacement),
        Node::Sub(a, b) => substitute(a, sym, replacement) - substitute(b, sym, replacement),
        Node::Mul(a, b) => substitute(a, sym, replacement) * substitute(b, sym, replacement),
        Node::Div(a, b) => substitute(a, sym, replacement) / substitute(b, sym, replacement),
        Node::Neg(a) => -substitute(a, sym, replacement),
        Node::Pow(a, b) => {
            substitute(a, sym, replacement).pow(substitute(b, sym, replacement))
        }
        Node::Func(f, a) => Expr::func(*f, substitute(a, sym, replacement)),
    }
}
