//! Representative families of generalized functions.
//!
//! A [`GenFunc`] holds an expression in the symbols `x` and `eps`
//! (plus named parameters bound to complex values), a list of real
//! locations where the ε → 0 limit is singular, and a display label.
//! Operations act componentwise on representatives; nothing is ever
//! evaluated at ε = 0.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::{differentiate, evaluate, substitute, Binding, Expr};
use crate::fit::linspace;
use crate::parse::format_expr;

#[derive(Debug, Clone)]
pub struct GenFunc {
    rep: Expr,
    params: Binding,
    singular_points: Vec<f64>,
    label: String,
}

fn union_sorted(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    out.sort_by(|p, q| p.partial_cmp(q).unwrap());
    out.dedup();
    out
}

/// Probe grid used to validate representatives: x ∈ [-10, 10],
/// eps ∈ {1, 0.1, 0.01}.
fn probe_grid() -> (Vec<f64>, [f64; 3]) {
    (linspace(-10.0, 10.0, 81), [1.0, 0.1, 0.01])
}

impl GenFunc {
    /// Validate and wrap a representative family.
    ///
    /// Free symbols of `rep` must be covered by {x, eps} and `params`;
    /// the resulting family must evaluate cleanly on the probe grid.
    pub fn make(rep: Expr, params: Binding, singular_points: &[f64]) -> Result<GenFunc> {
        for s in rep.free_symbols() {
            if s != "x" && s != "eps" && params.get(&s).is_none() {
                return Err(Error::UnboundSymbol(s));
            }
        }
        let label = format_expr(&rep);
        let g = GenFunc {
            rep,
            params,
            singular_points: union_sorted(singular_points, &[]),
            label,
        };
        g.probe()?;
        Ok(g)
    }

    /// Parse-and-make convenience.
    pub fn from_text(text: &str, params: Binding, singular_points: &[f64]) -> Result<GenFunc> {
        GenFunc::make(crate::parse::parse(text)?, params, singular_points)
    }

    /// Constant family.
    pub fn constant(value: Complex64) -> GenFunc {
        GenFunc {
            rep: Expr::constant(value),
            params: Binding::new(),
            singular_points: Vec::new(),
            label: format_expr(&Expr::constant(value)),
        }
    }

    fn probe(&self) -> Result<()> {
        let (xs, epss) = probe_grid();
        for &eps in &epss {
            for &x in &xs {
                if let Err(e) = self.eval(x, eps) {
                    return Err(Error::DomainProbe { x, eps, reason: e.to_string() });
                }
            }
        }
        Ok(())
    }

    pub fn rep(&self) -> &Expr {
        &self.rep
    }

    pub fn params(&self) -> &Binding {
        &self.params
    }

    pub fn singular_points(&self) -> &[f64] {
        &self.singular_points
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> GenFunc {
        self.label = label.to_string();
        self
    }

    /// The representative with parameters substituted: free symbols
    /// exactly {x, eps}.
    pub fn resolved_rep(&self) -> Expr {
        let mut e = self.rep.clone();
        for (name, value) in self.params.iter() {
            e = substitute(&e, name, &Expr::constant(value));
        }
        e
    }

    /// Evaluate the representative at a real point and regulator.
    pub fn eval(&self, x: f64, eps: f64) -> Result<Complex64> {
        let b = self
            .params
            .clone()
            .with("x", Complex64::new(x, 0.0))
            .with("eps", Complex64::new(eps, 0.0));
        evaluate(&self.rep, &b)
    }

    /// Componentwise sum.
    pub fn add(&self, other: &GenFunc) -> Result<GenFunc> {
        Ok(GenFunc {
            rep: self.rep.clone() + other.rep.clone(),
            params: self.params.merged(&other.params)?,
            singular_points: union_sorted(&self.singular_points, &other.singular_points),
            label: format!("({}) + ({})", self.label, other.label),
        })
    }

    /// Componentwise difference.
    pub fn sub(&self, other: &GenFunc) -> Result<GenFunc> {
        Ok(GenFunc {
            rep: self.rep.clone() - other.rep.clone(),
            params: self.params.merged(&other.params)?,
            singular_points: union_sorted(&self.singular_points, &other.singular_points),
            label: format!("({}) - ({})", self.label, other.label),
        })
    }

    /// Componentwise product.
    pub fn mul(&self, other: &GenFunc) -> Result<GenFunc> {
        Ok(GenFunc {
            rep: self.rep.clone() * other.rep.clone(),
            params: self.params.merged(&other.params)?,
            singular_points: union_sorted(&self.singular_points, &other.singular_points),
            label: format!("({})*({})", self.label, other.label),
        })
    }

    /// Scalar multiple.
    pub fn scale(&self, c: Complex64) -> GenFunc {
        GenFunc {
            rep: Expr::constant(c) * self.rep.clone(),
            params: self.params.clone(),
            singular_points: self.singular_points.clone(),
            label: format!("{}*({})", Expr::constant(c), self.label),
        }
    }

    /// Complex conjugate family, with `conj` pushed to the leaves so
    /// the result stays differentiable.
    pub fn conjugate(&self) -> GenFunc {
        let mut params = Binding::new();
        for (name, value) in self.params.iter() {
            params.set(name, value.conj());
        }
        GenFunc {
            rep: conjugate_expr(&self.rep),
            params,
            singular_points: self.singular_points.clone(),
            label: format!("conj({})", self.label),
        }
    }

    /// d/dx of the representative; singular points are preserved.
    pub fn derivative(&self) -> Result<GenFunc> {
        Ok(GenFunc {
            rep: differentiate(&self.rep, "x")?,
            params: self.params.clone(),
            singular_points: self.singular_points.clone(),
            label: format!("d/dx ({})", self.label),
        })
    }

    /// Smooth superposition `f(u)`.
    pub fn compose_smooth(&self, f: SmoothFn) -> Result<GenFunc> {
        if let SmoothFn::PowConst(c) = f {
            if c.re < 0.0 {
                // unbounded composition: representative must stay away
                // from zero on the probe grid
                let (xs, epss) = probe_grid();
                for &eps in &epss {
                    for &x in &xs {
                        let v = self.eval(x, eps)?;
                        if v.norm() < 1e-9 {
                            return Err(Error::DomainProbe {
                                x,
                                eps,
                                reason: "representative too close to zero for a negative power"
                                    .into(),
                            });
                        }
                    }
                }
            }
        }
        let rep = match f {
            SmoothFn::Exp => self.rep.clone().exp(),
            SmoothFn::Sin => self.rep.clone().sin(),
            SmoothFn::Cos => self.rep.clone().cos(),
            SmoothFn::PowConst(c) => self.rep.clone().pow(Expr::constant(c)),
        };
        let g = GenFunc {
            rep,
            params: self.params.clone(),
            singular_points: self.singular_points.clone(),
            label: format!("{}({})", f.name(), self.label),
        };
        g.probe()?;
        Ok(g)
    }
}

/// Smooth outer functions accepted by [`GenFunc::compose_smooth`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmoothFn {
    Exp,
    Sin,
    Cos,
    /// Power with a constant exponent.
    PowConst(Complex64),
}

impl SmoothFn {
    fn name(&self) -> String {
        match self {
            SmoothFn::Exp => "exp".into(),
            SmoothFn::Sin => "sin".into(),
            SmoothFn::Cos => "cos".into(),
            SmoothFn::PowConst(c) => format!("pow[{c}]"),
        }
    }
}

/// Conjugate an expression tree nodewise: constants conjugate, symbols
/// stay (x and eps are real; parameter values are conjugated by the
/// caller), and each function maps to itself with a conjugated
/// argument. Valid off the branch cuts of `log`, `pow`, and `sqrt`.
fn conjugate_expr(e: &Expr) -> Expr {
    use crate::expr::Node;
    match e.node() {
        Node::Const(c) => Expr::constant(c.conj()),
        Node::Symbol(_) => e.clone(),
        Node::Add(a, b) => conjugate_expr(a) + conjugate_expr(b),
        Node::Sub(a, b) => conjugate_expr(a) - conjugate_expr(b),
        Node::Mul(a, b) => conjugate_expr(a) * conjugate_expr(b),
        Node::Div(a, b) => conjugate_expr(a) / conjugate_expr(b),
        Node::Neg(a) => -conjugate_expr(a),
        Node::Pow(a, b) => conjugate_expr(a).pow(conjugate_expr(b)),
        Node::Func(crate::expr::Func::Conj, a) => a.clone(),
        Node::Func(f, a) => Expr::func(*f, conjugate_expr(a)),
    }
}

/// Builtin representative families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinName {
    /// `(eps + i·x)^(-lam)` or `(eps - i·x)^(-lam)`.
    IEpsPower { plus: bool },
    /// Unimodular exchange factor `((eps + i·x)/(eps - i·x))^lam`.
    ExchangeU,
    /// `i·log((eps - i·x)/(eps + i·x))`, i.e. `2·atan(x/eps)`.
    Sigma,
    /// Lorentzian delta representative `(1/pi)·eps/(eps^2 + x^2)`.
    Delta,
    /// Step representative `(pi + sigma)/(2 pi)`.
    Theta,
    /// Principal-value representative `x/(x^2 + eps^2)`.
    PvInv,
    /// `1/(eps^2 + x^2)`: diverging, no associated distribution.
    PoissonKernel,
    /// Principal-chart compact exchange factor
    /// `(sinh((eps + i·x)/2)/sinh((eps - i·x)/2))^lam`; winding is
    /// handled by `physics::u_compact`.
    ExchangeUCompact,
}

impl BuiltinName {
    pub fn from_str(name: &str) -> Result<BuiltinName> {
        Ok(match name {
            "i_eps_power_plus" => BuiltinName::IEpsPower { plus: true },
            "i_eps_power_minus" => BuiltinName::IEpsPower { plus: false },
            "exchange_U" => BuiltinName::ExchangeU,
            "sigma" => BuiltinName::Sigma,
            "delta" => BuiltinName::Delta,
            "theta" => BuiltinName::Theta,
            "pv_inv" => BuiltinName::PvInv,
            "poisson_kernel" => BuiltinName::PoissonKernel,
            "exchange_U_compact" => BuiltinName::ExchangeUCompact,
            other => return Err(Error::UnknownBuiltin(other.into())),
        })
    }

    pub fn needs_lam(&self) -> bool {
        matches!(
            self,
            BuiltinName::IEpsPower { .. } | BuiltinName::ExchangeU | BuiltinName::ExchangeUCompact
        )
    }
}

fn eps_plus_ix() -> Expr {
    Expr::eps() + Expr::i() * Expr::x()
}

fn eps_minus_ix() -> Expr {
    Expr::eps() - Expr::i() * Expr::x()
}

fn sigma_expr() -> Expr {
    Expr::i() * (eps_minus_ix() / eps_plus_ix()).log()
}

/// Construct a named builtin family. Parameters are substituted as
/// numeric constants into the representative, so differently
/// parameterized builtins compose without name clashes.
pub fn builtin(name: BuiltinName, params: &Binding) -> Result<GenFunc> {
    let lam = || -> Result<Complex64> {
        params.get("lam").ok_or(Error::MissingParam("lam".into()))
    };
    let (rep, label) = match name {
        BuiltinName::IEpsPower { plus } => {
            let l = lam()?;
            let base = if plus { eps_plus_ix() } else { eps_minus_ix() };
            let sign = if plus { '+' } else { '-' };
            (
                base.pow(Expr::constant(-l)),
                format!("(eps {sign} i*x)^(-{l})"),
            )
        }
        BuiltinName::ExchangeU => {
            let l = lam()?;
            (
                (eps_plus_ix() / eps_minus_ix()).pow(Expr::constant(l)),
                format!("U(x,{l})"),
            )
        }
        BuiltinName::Sigma => (sigma_expr(), "sigma".to_string()),
        BuiltinName::Delta => (
            Expr::real(1.0) / Expr::pi() * (Expr::eps() / (Expr::eps().powf(2.0) + Expr::x().powf(2.0))),
            "delta".to_string(),
        ),
        BuiltinName::Theta => (
            (Expr::pi() + sigma_expr()) / (Expr::real(2.0) * Expr::pi()),
            "theta".to_string(),
        ),
        BuiltinName::PvInv => (
            Expr::x() / (Expr::x().powf(2.0) + Expr::eps().powf(2.0)),
            "pv(1/x)".to_string(),
        ),
        BuiltinName::PoissonKernel => (
            Expr::real(1.0) / (Expr::eps().powf(2.0) + Expr::x().powf(2.0)),
            "poisson".to_string(),
        ),
        BuiltinName::ExchangeUCompact => {
            let l = lam()?;
            let half = Expr::real(0.5);
            let wp = (half.clone() * (Expr::eps() + Expr::i() * Expr::x())).sinh();
            let wm = (half * (Expr::eps() - Expr::i() * Expr::x())).sinh();
            (
                (wp / wm).pow(Expr::constant(l)),
                format!("Uc(xi,{l})"),
            )
        }
    };
    let g = GenFunc {
        rep,
        params: Binding::new(),
        singular_points: vec![0.0],
        label,
    };
    g.probe()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn lam(v: f64) -> Binding {
        Binding::new().with("lam", c(v, 0.0))
    }

    #[test]
    fn make_validates_symbols() {
        let e = crate::parse::parse("(eps - i*y)^(-1)").unwrap();
        let err = GenFunc::make(e, Binding::new(), &[0.0]).unwrap_err();
        assert_eq!(err, Error::UnboundSymbol("y".into()));
    }

    #[test]
    fn make_accepts_parameterized_kernels() {
        let g = GenFunc::from_text("(eps - i*x)^(-lam)", lam(2.0), &[0.0]).unwrap();
        let v = g.eval(0.0, 1.0).unwrap();
        assert_eq!(v, c(1.0, 0.0));
        // smooth function of x alone
        let s = GenFunc::from_text("x", Binding::new(), &[]).unwrap();
        assert_eq!(s.eval(3.0, 0.5).unwrap(), c(3.0, 0.0));
    }

    #[test]
    fn probe_rejects_bad_reps() {
        // 1/x blows up at the probe point x = 0
        let e = crate::parse::parse("1/x").unwrap();
        assert!(matches!(
            GenFunc::make(e, Binding::new(), &[0.0]),
            Err(Error::DomainProbe { .. })
        ));
    }

    #[test]
    fn param_clash_is_detected() {
        let u = GenFunc::from_text("(eps - i*x)^(-lam)", lam(1.0), &[0.0]).unwrap();
        let v = GenFunc::from_text("(eps + i*x)^(-lam)", lam(2.0), &[0.0]).unwrap();
        assert!(matches!(u.mul(&v), Err(Error::ParamClash(_))));
    }

    #[test]
    fn product_of_conjugate_kernels_is_lorentzian() {
        let u = GenFunc::from_text("1/(eps + i*x)", Binding::new(), &[0.0]).unwrap();
        let v = GenFunc::from_text("1/(eps - i*x)", Binding::new(), &[0.0]).unwrap();
        let p = u.mul(&v).unwrap();
        for &x in &[-3.0, -0.5, 0.0, 0.7, 2.0] {
            let got = p.eval(x, 0.1).unwrap();
            let want = 1.0 / (0.01 + x * x);
            assert!((got - c(want, 0.0)).norm() < 1e-13 * want);
        }
    }

    #[test]
    fn reciprocal_exchange_phases_cancel() {
        let u = builtin(BuiltinName::ExchangeU, &lam(0.3)).unwrap();
        let v = builtin(BuiltinName::ExchangeU, &lam(-0.3)).unwrap();
        let p = u.mul(&v).unwrap();
        for &x in &[-5.0, -1.0, 0.0, 0.4, 8.0] {
            let got = p.eval(x, 0.01).unwrap();
            assert!((got - c(1.0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn conjugate_of_exchange_flips_lambda() {
        let u = builtin(BuiltinName::ExchangeU, &lam(0.3)).unwrap().conjugate();
        let v = builtin(BuiltinName::ExchangeU, &lam(-0.3)).unwrap();
        let mut sup: f64 = 0.0;
        for &x in &crate::fit::linspace(-10.0, 10.0, 201) {
            for &eps in &[1.0, 0.1, 0.01] {
                let d = (u.eval(x, eps).unwrap() - v.eval(x, eps).unwrap()).norm();
                sup = sup.max(d);
            }
        }
        assert!(sup < 1e-13, "sup difference {sup}");
    }

    #[test]
    fn derivative_of_sigma_is_lorentzian() {
        let s = builtin(BuiltinName::Sigma, &Binding::new()).unwrap();
        let d = s.derivative().unwrap();
        for &x in &[-4.0, -1.0, 0.0, 0.3, 2.0] {
            for &eps in &[0.5, 0.05] {
                let got = d.eval(x, eps).unwrap();
                let want = 2.0 * eps / (eps * eps + x * x);
                assert!((got - c(want, 0.0)).norm() <= 1e-12 * want);
            }
        }
    }

    #[test]
    fn exchange_derivative_satisfies_phase_equation() {
        // i d/dx U(x,-g2) = g2 sigma' U(x,-g2) at g2 = 0.3
        let g2 = 0.3;
        let u = builtin(BuiltinName::ExchangeU, &lam(-g2)).unwrap();
        let du = u.derivative().unwrap();
        let sp = builtin(BuiltinName::Sigma, &Binding::new()).unwrap().derivative().unwrap();
        for &x in &[-2.0, -0.1, 0.0, 0.5, 3.0] {
            for &eps in &[0.1, 0.001] {
                let lhs = c(0.0, 1.0) * du.eval(x, eps).unwrap();
                let rhs = c(g2, 0.0) * sp.eval(x, eps).unwrap() * u.eval(x, eps).unwrap();
                assert!(
                    (lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0),
                    "x={x} eps={eps}"
                );
            }
        }
    }

    #[test]
    fn derivative_of_square_is_linear() {
        let g = GenFunc::from_text("x^2", Binding::new(), &[]).unwrap();
        let d = g.derivative().unwrap();
        assert_eq!(d.eval(3.0, 1.0).unwrap(), c(6.0, 0.0));
    }

    #[test]
    fn compose_exp_of_scaled_sigma_matches_exchange() {
        let g2 = 0.3;
        let s = builtin(BuiltinName::Sigma, &Binding::new()).unwrap();
        let composed = s.scale(c(0.0, -g2)).compose_smooth(SmoothFn::Exp).unwrap();
        let u = builtin(BuiltinName::ExchangeU, &lam(-g2)).unwrap();
        for &x in &[-6.0, -0.2, 0.0, 1.0, 9.0] {
            for &eps in &[1.0, 0.01] {
                let a = composed.eval(x, eps).unwrap();
                let b = u.eval(x, eps).unwrap();
                assert!((a - b).norm() < 1e-13, "x={x} eps={eps}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn compose_smooth_trivia() {
        let x = GenFunc::from_text("x", Binding::new(), &[]).unwrap();
        let s = x.compose_smooth(SmoothFn::Sin).unwrap();
        assert!((s.eval(0.5, 1.0).unwrap() - c(0.5f64.sin(), 0.0)).norm() < 1e-15);
        let zero = GenFunc::constant(c(0.0, 0.0));
        let one = zero.compose_smooth(SmoothFn::Exp).unwrap();
        assert_eq!(one.eval(2.0, 0.3).unwrap(), c(1.0, 0.0));
        // negative power of something that vanishes on the grid fails the probe
        assert!(x.compose_smooth(SmoothFn::PowConst(c(-1.0, 0.0))).is_err());
    }

    #[test]
    fn unknown_builtin_and_missing_param() {
        assert!(matches!(
            BuiltinName::from_str("nope"),
            Err(Error::UnknownBuiltin(_))
        ));
        assert!(matches!(
            builtin(BuiltinName::ExchangeU, &Binding::new()),
            Err(Error::MissingParam(_))
        ));
    }

    #[test]
    fn sigma_is_odd() {
        let s = builtin(BuiltinName::Sigma, &Binding::new()).unwrap();
        for &x in &[0.1, 0.9, 4.0] {
            for &eps in &[1.0, 0.01] {
                let a = s.eval(x, eps).unwrap();
                let b = s.eval(-x, eps).unwrap();
                assert!((a + b).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn unimodular_exchange_factor() {
        let u = builtin(BuiltinName::ExchangeU, &lam(1.7)).unwrap();
        for &x in &crate::fit::linspace(-10.0, 10.0, 101) {
            let v = u.eval(x, 0.001).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-13);
        }
    }
}
