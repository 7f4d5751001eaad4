//! Computation with ε-regularized families of smooth functions.
//!
//! A generalized function is represented here by a concrete family
//! `u_ε(x)` of smooth complex-valued functions of a real variable,
//! encoded as an expression tree over the symbols `x` and `eps`.
//! The crate provides
//!
//! - an immutable expression tree with evaluation, symbolic
//!   differentiation, substitution and light normalization ([`expr`]),
//! - a text syntax for expressions with round-trip printing ([`parse`]),
//! - the algebra of representative families: products, derivatives,
//!   smooth composition, the regularized kernels used in two-dimensional
//!   exchange relations, and mollifier embeddings of classical
//!   distributions ([`genfunc`], [`embed`]),
//! - numerical pairings `⟨u_ε, φ⟩` against smooth test functions with
//!   adaptive singularity-aware quadrature, ε-sweep limit classification,
//!   and empirical moderation/negligibility estimates ([`association`],
//!   [`equality`], [`quad`], [`testfn`]),
//! - correlation-level checks: n-point functions, the exchange identity
//!   at ε > 0, compact-picture transforms with explicit winding, and a
//!   registry of named end-to-end demos ([`physics`], [`demos`]).
//!
//! Everything is immutable after construction and safe to share across
//! threads; evaluation is pure and deterministic.

pub mod association;
pub mod branch;
pub mod demos;
pub mod embed;
pub mod equality;
pub mod error;
pub mod expr;
pub mod fit;
pub mod genfunc;
pub mod parse;
pub mod physics;
pub mod quad;
pub mod sched;
pub mod testfn;

pub use association::{
    check_association, check_negligible, classify_limit, estimate_growth, pairing_at,
    pairing_curve, target_pairing, AssociationReport, AssociationVerdict, ClassicalDist,
    ClassicalTerm, GrowthEstimate, PairingCurve, PairingPoint, PhiResult,
};
pub use demos::{demo_names, run_demo, DemoCheck, DemoReport};
pub use embed::{embed_mollified, EmbedTarget};
pub use equality::{equal_in_g, EqualityReport, EqualityVerdict, OrderDecay};
pub use error::{Error, Result};
pub use expr::{differentiate, evaluate, simplify, substitute, Binding, Expr};
pub use genfunc::{builtin, BuiltinName, GenFunc, SmoothFn};
pub use parse::{format_expr, parse, ParseError, SourceSpan};
pub use physics::{
    eps_map, npoint, u_compact, verify_compact_two_point, verify_exchange_identity, xi_map,
    ChargeConfig, CompactPoint,
};
pub use sched::EpsSchedule;
pub use testfn::TestFunction;

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;
