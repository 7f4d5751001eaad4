//! Smooth test functions for pairings.
//!
//! A [`TestFunction`] is a smooth real-valued function with explicit
//! finite support and symbolic derivatives. The bump kinds store the
//! interior form of the expression; evaluation returns 0 at and
//! outside the support endpoints, where the function and all its
//! derivatives vanish. Gaussian kinds are truncated at ±12 widths,
//! far below double-precision resolution.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::{differentiate, evaluate, Binding, Expr};
use crate::quad;

#[derive(Debug, Clone, PartialEq)]
pub enum TestFunctionKind {
    Gaussian { center: f64, width: f64 },
    Bump { center: f64, radius: f64 },
    PolyTimesGaussian { coeffs: Vec<f64>, width: f64 },
}

#[derive(Debug, Clone)]
pub struct TestFunction {
    pub kind: TestFunctionKind,
    /// Interior form in the symbol `x`.
    pub expr: Expr,
    /// Closed support interval; the function is 0 at and beyond the ends.
    pub support: (f64, f64),
    pub max_deriv_order: usize,
    pub label: String,
}

fn x_shifted(center: f64) -> Expr {
    if center == 0.0 {
        Expr::x()
    } else {
        Expr::x() - Expr::real(center)
    }
}

impl TestFunction {
    /// `exp(-((x-center)/width)^2)`, truncated at ±12 widths.
    pub fn gaussian(center: f64, width: f64) -> TestFunction {
        assert!(width > 0.0);
        let u = x_shifted(center) / Expr::real(width);
        let expr = (-(u.clone() * u)).exp();
        TestFunction {
            kind: TestFunctionKind::Gaussian { center, width },
            expr,
            support: (center - 12.0 * width, center + 12.0 * width),
            max_deriv_order: 6,
            label: if center == 0.0 && width == 1.0 {
                "gaussian".into()
            } else {
                format!("gaussian({center},{width})")
            },
        }
    }

    /// `exp(-1/(1-((x-center)/radius)^2))` inside, 0 outside.
    pub fn bump(center: f64, radius: f64) -> TestFunction {
        assert!(radius > 0.0);
        let u = x_shifted(center) / Expr::real(radius);
        let expr = (-(Expr::real(1.0) / (Expr::real(1.0) - u.clone() * u))).exp();
        TestFunction {
            kind: TestFunctionKind::Bump { center, radius },
            expr,
            support: (center - radius, center + radius),
            max_deriv_order: 6,
            label: format!("bump({center},{radius})"),
        }
    }

    /// `(sum_m coeffs[m] x^m) · exp(-(x/width)^2)`.
    pub fn poly_times_gaussian(coeffs: &[f64], width: f64) -> TestFunction {
        assert!(width > 0.0);
        assert!(!coeffs.is_empty());
        let mut poly = Expr::real(coeffs[0]);
        for (m, &c) in coeffs.iter().enumerate().skip(1) {
            if c == 0.0 {
                continue;
            }
            let mono = if m == 1 {
                Expr::x()
            } else {
                Expr::x().powf(m as f64)
            };
            let term = if c == 1.0 { mono } else { Expr::real(c) * mono };
            poly = if poly.is_const(0.0) { term } else { poly + term };
        }
        let u = Expr::x() / Expr::real(width);
        let expr = poly * (-(u.clone() * u)).exp();
        TestFunction {
            kind: TestFunctionKind::PolyTimesGaussian { coeffs: coeffs.to_vec(), width },
            expr,
            support: (-12.0 * width, 12.0 * width),
            max_deriv_order: 6,
            label: format!("poly_gaussian({coeffs:?},{width})"),
        }
    }

    /// The odd probe `x·exp(-x^2)`.
    pub fn x_gaussian() -> TestFunction {
        let mut t = TestFunction::poly_times_gaussian(&[0.0, 1.0], 1.0);
        t.label = "x*gaussian".into();
        t
    }

    /// The five-function default probe set.
    pub fn default_set() -> Vec<TestFunction> {
        vec![
            TestFunction::gaussian(0.0, 1.0),
            TestFunction::bump(0.0, 1.0),
            TestFunction::bump(1.5, 1.0),
            TestFunction::x_gaussian(),
            TestFunction::bump(0.0, 0.5),
        ]
    }

    /// Unit-mass even bump on [-1, 1]; the smoothing kernel used by
    /// the distribution embedding.
    pub fn standard_mollifier() -> TestFunction {
        let raw = TestFunction::bump(0.0, 1.0);
        let mass = raw.integral();
        let mut t = raw;
        t.expr = Expr::real(1.0 / mass) * t.expr;
        t.label = "mollifier".into();
        t
    }

    /// Value at `x` (0 at and outside the support endpoints).
    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.support.0 || x >= self.support.1 {
            return 0.0;
        }
        let b = Binding::new().with("x", Complex64::new(x, 0.0));
        match evaluate(&self.expr, &b) {
            Ok(v) => v.re,
            // interior overflow of the bump exponent underflows to 0
            Err(_) => 0.0,
        }
    }

    /// Symbolic k-th derivative of the interior form.
    pub fn derivative_expr(&self, k: usize) -> Result<Expr> {
        if k > self.max_deriv_order {
            return Err(Error::InsufficientSmoothness { need: k, have: self.max_deriv_order });
        }
        let mut d = self.expr.clone();
        for _ in 0..k {
            d = differentiate(&d, "x")?;
        }
        Ok(d)
    }

    /// k-th derivative value at `x` (0 outside the support).
    pub fn eval_deriv(&self, k: usize, x: f64) -> Result<f64> {
        if x <= self.support.0 || x >= self.support.1 {
            return Ok(0.0);
        }
        let d = self.derivative_expr(k)?;
        let b = Binding::new().with("x", Complex64::new(x, 0.0));
        Ok(match evaluate(&d, &b) {
            Ok(v) => v.re,
            Err(_) => 0.0,
        })
    }

    /// `∫ φ`, by adaptive quadrature over the support.
    pub fn integral(&self) -> f64 {
        let (a, b) = self.support;
        let r = quad::integrate(
            |x| Ok(Complex64::new(self.eval(x), 0.0)),
            a,
            b,
            &[0.5 * (a + b)],
            1e-13,
            1e-15,
            400_000,
        )
        .expect("test-function integrand cannot fail");
        r.value.re
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_default_is_exp_minus_x_squared() {
        let g = TestFunction::gaussian(0.0, 1.0);
        assert!((g.eval(0.0) - 1.0).abs() < 1e-15);
        assert!((g.eval(1.0) - (-1.0f64).exp()).abs() < 1e-15);
        assert!((g.integral() - std::f64::consts::PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn bump_vanishes_at_support_ends() {
        let b = TestFunction::bump(0.0, 1.0);
        assert_eq!(b.eval(1.0), 0.0);
        assert_eq!(b.eval(-1.0), 0.0);
        assert_eq!(b.eval(2.0), 0.0);
        assert!((b.eval(0.0) - (-1.0f64).exp()).abs() < 1e-15);
        // near-edge evaluation underflows smoothly instead of erroring
        assert_eq!(b.eval(1.0 - 1e-14), 0.0);
    }

    #[test]
    fn derivatives_are_available_symbolically() {
        let g = TestFunction::x_gaussian();
        // phi'(0) = 1 for x e^{-x^2}
        assert!((g.eval_deriv(1, 0.0).unwrap() - 1.0).abs() < 1e-14);
        assert!(matches!(
            g.derivative_expr(9),
            Err(Error::InsufficientSmoothness { .. })
        ));
    }

    #[test]
    fn mollifier_has_unit_mass() {
        let m = TestFunction::standard_mollifier();
        assert!((m.integral() - 1.0).abs() < 1e-11);
        assert_eq!(m.support, (-1.0, 1.0));
    }

    #[test]
    fn offset_bump_probes_away_from_origin() {
        let b = TestFunction::bump(1.5, 1.0);
        assert_eq!(b.support, (0.5, 2.5));
        assert_eq!(b.eval(0.0), 0.0);
        assert!(b.eval(1.5) > 0.0);
    }
}
