//! Numerical evaluation of expression trees.

use num_complex::Complex64;

use super::{Expr, Func, Node};
use crate::branch::{log_principal, pow_principal, sqrt_principal};
use crate::error::{Error, Result};

/// A read-only map from symbol names to complex values.
///
/// Backed by a small vector; lookups are linear, which wins for the
/// two-to-five entries a typical evaluation carries.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Binding {
    entries: Vec<(String, Complex64)>,
}

impl Binding {
    pub fn new() -> Binding {
        Binding::default()
    }

    /// Builder-style insert; later inserts overwrite earlier ones.
    pub fn with(mut self, name: &str, value: impl Into<Complex64>) -> Binding {
        self.set(name, value.into());
        self
    }

    pub fn set(&mut self, name: &str, value: impl Into<Complex64>) {
        let value = value.into();
        for (n, v) in self.entries.iter_mut() {
            if n == name {
                *v = value;
                return;
            }
        }
        self.entries.push((name.to_string(), value));
    }

    pub fn get(&self, name: &str) -> Option<Complex64> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Complex64)> {
        self.entries.iter().map(|(n, v)| (n.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Union of two bindings. A name bound to different values in both
    /// is a [`Error::ParamClash`].
    pub fn merged(&self, other: &Binding) -> Result<Binding> {
        let mut out = self.clone();
        for (n, v) in other.iter() {
            match out.get(n) {
                Some(prev) if prev != v => return Err(Error::ParamClash(n.to_string())),
                Some(_) => {}
                None => out.set(n, v),
            }
        }
        Ok(out)
    }
}

impl<const N: usize> From<[(&str, Complex64); N]> for Binding {
    fn from(pairs: [(&str, Complex64); N]) -> Binding {
        let mut b = Binding::new();
        for (n, v) in pairs {
            b.set(n, v);
        }
        b
    }
}

/// Evaluate `e` under `b`. Deterministic: the same tree and binding
/// always produce a bit-identical result.
pub fn evaluate(e: &Expr, b: &Binding) -> Result<Complex64> {
    match e.node() {
        Node::Const(v) => Ok(*v),
        Node::Symbol(s) => b
            .get(s)
            .ok_or_else(|| Error::UnboundSymbol(s.to_string())),
        Node::Add(l, r) => Ok(evaluate(l, b)? + evaluate(r, b)?),
        Node::Sub(l, r) => Ok(evaluate(l, b)? - evaluate(r, b)?),
        Node::Mul(l, r) => Ok(evaluate(l, b)? * evaluate(r, b)?),
        Node::Div(l, r) => {
            let num = evaluate(l, b)?;
            let den = evaluate(r, b)?;
            if den.re == 0.0 && den.im == 0.0 {
                return Err(Error::Domain("division by zero".into()));
            }
            Ok(num / den)
        }
        Node::Neg(a) => Ok(-evaluate(a, b)?),
        Node::Pow(base, exponent) => {
            pow_principal(evaluate(base, b)?, evaluate(exponent, b)?)
        }
        Node::Func(f, a) => {
            let v = evaluate(a, b)?;
            match f {
                Func::Exp => Ok(v.exp()),
                Func::Log => log_principal(v),
                Func::LogAbs => {
                    if v.re == 0.0 && v.im == 0.0 {
                        Err(Error::Domain("logabs of zero".into()))
                    } else {
                        Ok(Complex64::new(v.norm().ln(), 0.0))
                    }
                }
                Func::Sin => Ok(v.sin()),
                Func::Cos => Ok(v.cos()),
                Func::Tan => Ok(v.tan()),
                Func::Sinh => Ok(v.sinh()),
                Func::Cosh => Ok(v.cosh()),
                Func::Tanh => Ok(v.tanh()),
                Func::Sqrt => Ok(sqrt_principal(v)),
                Func::Conj => Ok(v.conj()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unbound_symbol_errors() {
        let e = Expr::symbol("y") + Expr::real(1.0);
        let err = evaluate(&e, &Binding::new()).unwrap_err();
        assert_eq!(err, Error::UnboundSymbol("y".into()));
    }

    #[test]
    fn division_by_zero_errors() {
        let e = Expr::real(1.0) / Expr::x();
        let b = Binding::new().with("x", c(0.0, 0.0));
        assert!(matches!(evaluate(&e, &b), Err(Error::Domain(_))));
    }

    #[test]
    fn log_of_zero_errors() {
        let b = Binding::new().with("x", c(0.0, 0.0));
        assert!(evaluate(&Expr::x().log(), &b).is_err());
        assert!(evaluate(&Expr::x().logabs(), &b).is_err());
    }

    #[test]
    fn pow_at_origin_is_one_at_x_zero() {
        // (eps - i x)^(-2) at x=0, eps=1 is 1.
        let base = Expr::eps() - Expr::i() * Expr::x();
        let e = base.powf(-2.0);
        let b = Binding::new().with("x", c(0.0, 0.0)).with("eps", c(1.0, 0.0));
        assert_eq!(evaluate(&e, &b).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn exchange_base_is_one_at_x_zero() {
        // ((eps + i x)/(eps - i x))^lam at x=0 is 1 for any lam.
        let base = (Expr::eps() + Expr::i() * Expr::x()) / (Expr::eps() - Expr::i() * Expr::x());
        let e = base.pow(Expr::symbol("lam"));
        let b = Binding::new()
            .with("x", c(0.0, 0.0))
            .with("eps", c(0.5, 0.0))
            .with("lam", c(0.3, 0.0));
        let v = evaluate(&e, &b).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn sigma_matches_arctangent_form() {
        // i log((eps - i x)/(eps + i x)) = 2 atan(x/eps) for real x, eps > 0.
        let ratio = (Expr::eps() - Expr::i() * Expr::x()) / (Expr::eps() + Expr::i() * Expr::x());
        let sigma = Expr::i() * ratio.log();
        let b = Binding::new()
            .with("x", c(1.0, 0.0))
            .with("eps", c(0.01, 0.0));
        let v = evaluate(&sigma, &b).unwrap();
        let oracle = 2.0 * (1.0f64 / 0.01).atan();
        assert!((v.re - oracle).abs() < 1e-13, "{} vs {}", v.re, oracle);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn conj_is_complex_conjugation() {
        let e = Expr::x().conj();
        let b = Binding::new().with("x", c(1.0, 2.0));
        assert_eq!(evaluate(&e, &b).unwrap(), c(1.0, -2.0));
    }

    #[test]
    fn merged_bindings_detect_clashes() {
        let a = Binding::new().with("lam", c(0.3, 0.0));
        let b = Binding::new().with("lam", c(-0.3, 0.0));
        assert_eq!(a.merged(&b).unwrap_err(), Error::ParamClash("lam".into()));
        let c2 = Binding::new().with("lam", c(0.3, 0.0)).with("mu", c(1.0, 0.0));
        let m = a.merged(&c2).unwrap();
        assert_eq!(m.get("mu"), Some(c(1.0, 0.0)));
    }
}
