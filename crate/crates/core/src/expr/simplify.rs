//! Conservative, terminating rewriting.
//!
//! The rule set is fixed and deliberately small:
//!
//! - constant folding of subtrees all of whose leaves are constants
//!   (skipped when folding would hit a domain error),
//! - additive and multiplicative identities with 0 and 1,
//! - `u·u⁻¹ → 1` and `u/u → 1` for syntactically identical `u`,
//! - merging powers over a syntactically identical base,
//!   `u^a · u^b → u^(a+b)` (exact under the principal branch, since
//!   both sides use the same logarithm of `u`),
//! - `exp(log u) → u`,
//! - collapsing `neg` chains.
//!
//! No factoring or expansion. Rewrites never change the value where
//! the original expression is defined; they may enlarge the domain
//! (dropping a `0·log u` factor, say).

use super::{evaluate, Binding, Expr, Func, Node};

/// Apply the rewrite set bottom-up until a fixed point.
pub fn simplify(e: &Expr) -> Expr {
    let mut cur = e.clone();
    // every productive rewrite strictly shrinks the tree, so this
    // terminates; the cap is belt and braces
    for _ in 0..64 {
        let next = pass(&cur);
        if next == cur {
            return next;
        }
        cur = next;
    }
    cur
}

fn pass(e: &Expr) -> Expr {
    match e.node() {
        Node::Const(_) | Node::Symbol(_) => e.clone(),
        Node::Add(a, b) => rewrite(Expr::new(Node::Add(pass(a), pass(b)))),
        Node::Sub(a, b) => rewrite(Expr::new(Node::Sub(pass(a), pass(b)))),
        Node::Mul(a, b) => rewrite(Expr::new(Node::Mul(pass(a), pass(b)))),
        Node::Div(a, b) => rewrite(Expr::new(Node::Div(pass(a), pass(b)))),
        Node::Neg(a) => rewrite(Expr::new(Node::Neg(pass(a)))),
        Node::Pow(a, b) => rewrite(Expr::new(Node::Pow(pass(a), pass(b)))),
        Node::Func(f, a) => rewrite(Expr::new(Node::Func(*f, pass(a)))),
    }
}

fn all_const(e: &Expr) -> bool {
    match e.node() {
        Node::Const(_) => true,
        Node::Symbol(_) => false,
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b)
        | Node::Pow(a, b) => all_const(a) && all_const(b),
        Node::Neg(a) | Node::Func(_, a) => all_const(a),
    }
}

fn rewrite(e: Expr) -> Expr {
    // constant folding first: children are already simplified
    if !matches!(e.node(), Node::Const(_)) && all_const(&e) {
        if let Ok(v) = evaluate(&e, &Binding::new()) {
            if v.re.is_finite() && v.im.is_finite() {
                return Expr::constant(v);
            }
        }
        return e;
    }
    match e.node() {
        Node::Add(a, b) => {
            if a.is_const(0.0) {
                return b.clone();
            }
            if b.is_const(0.0) {
                return a.clone();
            }
            e
        }
        Node::Sub(a, b) => {
            if b.is_const(0.0) {
                return a.clone();
            }
            if a.is_const(0.0) {
                return rewrite(Expr::new(Node::Neg(b.clone())));
            }
            e
        }
        Node::Mul(a, b) => {
            if a.is_const(0.0) || b.is_const(0.0) {
                return Expr::real(0.0);
            }
            if a.is_const(1.0) {
                return b.clone();
            }
            if b.is_const(1.0) {
                return a.clone();
            }
            // u * (v/u) -> v and (v/u) * u -> v, syntactic match only
            if let Node::Div(num, den) = b.node() {
                if den == a {
                    return num.clone();
                }
            }
            if let Node::Div(num, den) = a.node() {
                if den == b {
                    return num.clone();
                }
            }
            // u^p * u^q -> u^(p+q) over an identical base
            if let (Node::Pow(b1, e1), Node::Pow(b2, e2)) = (a.node(), b.node()) {
                if b1 == b2 {
                    let exps = rewrite(Expr::new(Node::Add(e1.clone(), e2.clone())));
                    return rewrite(Expr::new(Node::Pow(b1.clone(), exps)));
                }
            }
            e
        }
        Node::Div(a, b) => {
            if a == b {
                return Expr::real(1.0);
            }
            if b.is_const(1.0) {
                return a.clone();
            }
            if a.is_const(0.0) {
                return Expr::real(0.0);
            }
            e
        }
        Node::Neg(a) => {
            if let Node::Neg(inner) = a.node() {
                return inner.clone();
            }
            if let Node::Const(c) = a.node() {
                return Expr::constant(-c);
            }
            e
        }
        Node::Pow(base, exponent) => {
            if exponent.is_const(1.0) {
                return base.clone();
            }
            if exponent.is_const(0.0) {
                return Expr::real(1.0);
            }
            e
        }
        Node::Func(Func::Exp, a) => {
            if let Node::Func(Func::Log, inner) = a.node() {
                return inner.clone();
            }
            e
        }
        _ => e,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_identity() {
        let e = Expr::x() + Expr::real(0.0);
        assert_eq!(simplify(&e), Expr::x());
    }

    #[test]
    fn exp_log_cancels() {
        let e = Expr::eps().log().exp();
        assert_eq!(simplify(&e), Expr::eps());
    }

    #[test]
    fn syntactic_reciprocal_cancels() {
        let p = Expr::x() + Expr::eps();
        let e = p.clone() * (Expr::real(1.0) / p.clone());
        assert!(simplify(&e).is_const(1.0));
        let d = p.clone() / p;
        assert!(simplify(&d).is_const(1.0));
    }

    #[test]
    fn powers_over_identical_base_merge() {
        let base = (Expr::eps() + Expr::i() * Expr::x()) / (Expr::eps() - Expr::i() * Expr::x());
        let e = base.clone().powf(0.3) * base.powf(-0.3);
        assert!(simplify(&e).is_const(1.0));
    }

    #[test]
    fn constants_fold() {
        let e = Expr::real(2.0) * Expr::real(3.0) + Expr::real(1.0);
        assert!(simplify(&e).is_const(7.0));
        // folding does not cross a free symbol
        let f = Expr::real(2.0) * Expr::x();
        assert_eq!(simplify(&f), f);
    }

    #[test]
    fn neg_chains_collapse() {
        let e = -(-(Expr::x()));
        assert_eq!(simplify(&e), Expr::x());
    }

    #[test]
    fn domain_errors_block_folding() {
        let e = Expr::real(1.0) / Expr::real(0.0);
        // left alone rather than folded into an invalid constant
        assert_eq!(simplify(&e), e);
    }
}
