//! Text syntax for expressions.
//!
//! Grammar (ASCII, whitespace insensitive):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | base
//! base   := atom ('^' factor)?          -- '^' right-associative
//! atom   := number | symbol | func '(' expr ')' | '(' expr ')'
//! func   := exp log logabs sin cos tan sinh cosh tanh sqrt conj
//! ```
//!
//! `^` binds tighter than unary minus on its left operand, so `-x^2`
//! is `-(x^2)` while `x^-2` is `x^(-2)`. There is no implicit
//! multiplication: `2x` is a parse error.
//!
//! `i` and `pi` are reserved constants and cannot be shadowed; `x` and
//! `eps` are ordinary symbols with conventional meaning; any other
//! identifier is a free parameter. Numbers are decimal with optional
//! fraction and exponent.
//!
//! Subtrees built entirely from constants are folded at parse time
//! (when they evaluate cleanly), so printing any constant and
//! reparsing it lands on the same tree. Together with the
//! minimal-parenthesization printer this gives the round-trip law
//! `parse(format_expr(e)) == e`.

use std::fmt;

use num_complex::Complex64;

use crate::error::Result;
use crate::expr::{evaluate, Binding, Expr, Func, Node};

/// Byte range into the input string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.span.start, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    span: SourceSpan,
}

fn lex(input: &str) -> std::result::Result<Vec<Spanned>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => {
                out.push(Spanned { tok: Tok::Plus, span: SourceSpan { start, end: i + 1 } });
                i += 1;
            }
            b'-' => {
                out.push(Spanned { tok: Tok::Minus, span: SourceSpan { start, end: i + 1 } });
                i += 1;
            }
            b'*' => {
                out.push(Spanned { tok: Tok::Star, span: SourceSpan { start, end: i + 1 } });
                i += 1;
            }
            b'/' => {
                out.push(Spanned { tok: Tok::Slash, span: SourceSpan { start, end: i + 1 } });
                i += 1;
            }
            b'^' => {
                out.push(Spanned { tok: Tok::Caret, span: SourceSpan { start, end: i + 1 } });
                i += 1;
            }
            b'(' => {
                out.push(Spanned { tok: Tok::LParen, span: SourceSpan { start, end: i + 1 } });
                i += 1;
            }
            b')' => {
                out.push(Spanned { tok: Tok::RParen, span: SourceSpan { start, end: i + 1 } });
                i += 1;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &input[start..i];
                let value: f64 = text.parse().map_err(|_| ParseError {
                    span: SourceSpan { start, end: i },
                    message: format!("invalid number literal `{text}`"),
                })?;
                out.push(Spanned { tok: Tok::Num(value), span: SourceSpan { start, end: i } });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(input[start..i].to_string()),
                    span: SourceSpan { start, end: i },
                });
            }
            _ => {
                return Err(ParseError {
                    span: SourceSpan { start, end: start + 1 },
                    message: format!("unexpected character `{}`", &input[start..start + 1]),
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        span: SourceSpan { start: bytes.len(), end: bytes.len() },
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { span: self.peek().span, message: message.into() }
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = fold(Expr::new(Node::Add(acc, self.term()?)));
                }
                Tok::Minus => {
                    self.bump();
                    acc = fold(Expr::new(Node::Sub(acc, self.term()?)));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = fold(Expr::new(Node::Mul(acc, self.factor()?)));
                }
                Tok::Slash => {
                    self.bump();
                    acc = fold(Expr::new(Node::Div(acc, self.factor()?)));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> std::result::Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            let inner = self.factor()?;
            return Ok(fold(Expr::new(Node::Neg(inner))));
        }
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let exponent = self.factor()?;
            return Ok(fold(Expr::new(Node::Pow(base, exponent))));
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Expr, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Num(v) => Ok(Expr::real(v)),
            Tok::Ident(name) => {
                if let Some(f) = Func::from_name(&name) {
                    if self.peek().tok != Tok::LParen {
                        return Err(self.err(format!("expected `(` after function `{name}`")));
                    }
                    self.bump();
                    let arg = self.expr()?;
                    if self.peek().tok != Tok::RParen {
                        return Err(self.err("expected `)`"));
                    }
                    self.bump();
                    return Ok(fold(Expr::func(f, arg)));
                }
                match name.as_str() {
                    "i" => {
                        if self.peek().tok == Tok::LParen {
                            return Err(self.err("`i` is a reserved constant, not a function"));
                        }
                        Ok(Expr::i())
                    }
                    "pi" => {
                        if self.peek().tok == Tok::LParen {
                            return Err(self.err("`pi` is a reserved constant, not a function"));
                        }
                        Ok(Expr::pi())
                    }
                    _ => {
                        if self.peek().tok == Tok::LParen {
                            return Err(self.err(format!("unknown function `{name}`")));
                        }
                        Ok(Expr::symbol(&name))
                    }
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.err("expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Eof => Err(ParseError {
                span: t.span,
                message: "unexpected end of input; expected a number, symbol, or `(`".into(),
            }),
            other => Err(ParseError {
                span: t.span,
                message: format!("unexpected token `{other:?}`; expected a number, symbol, or `(`"),
            }),
        }
    }
}

/// Fold a subtree whose leaves are all constants, when it evaluates
/// cleanly; otherwise leave it for evaluation time.
fn fold(e: Expr) -> Expr {
    fn all_const(e: &Expr) -> bool {
        match e.node() {
            Node::Const(_) => true,
            Node::Symbol(_) => false,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b)
            | Node::Pow(a, b) => all_const(a) && all_const(b),
            Node::Neg(a) | Node::Func(_, a) => all_const(a),
        }
    }
    if !matches!(e.node(), Node::Const(_)) && all_const(&e) {
        if let Ok(v) = evaluate(&e, &Binding::new()) {
            if v.re.is_finite() && v.im.is_finite() {
                return Expr::constant(v);
            }
        }
    }
    e
}

/// Parse `text` into an expression tree.
pub fn parse(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.err("unexpected trailing input").into());
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// printing

fn fmt_real(v: f64, out: &mut String) {
    let a = v.abs();
    if v != 0.0 && (a < 1e-4 || a >= 1e16) {
        out.push_str(&format!("{v:e}"));
    } else {
        out.push_str(&format!("{v}"));
    }
}

/// Print a constant so that reparsing folds back to the same value.
fn fmt_const(c: Complex64, out: &mut String) {
    if c.im == 0.0 {
        if c.re == std::f64::consts::PI {
            out.push_str("pi");
        } else {
            fmt_real(c.re, out);
        }
        return;
    }
    if c.re == 0.0 {
        if c.im == 1.0 {
            out.push('i');
            return;
        }
        if c.im == -1.0 {
            out.push_str("-i");
            return;
        }
        fmt_real(c.im, out);
        out.push_str("*i");
        return;
    }
    out.push('(');
    fmt_real(c.re, out);
    if c.im < 0.0 {
        out.push_str(" - ");
        fmt_real(-c.im, out);
    } else {
        out.push_str(" + ");
        fmt_real(c.im, out);
    }
    out.push_str("*i)");
}

// printer precedence levels: additive 1, multiplicative 2, unary 3, power 4
fn prec(e: &Expr) -> u8 {
    match e.node() {
        Node::Add(..) | Node::Sub(..) => 1,
        Node::Mul(..) | Node::Div(..) => 2,
        Node::Neg(..) => 3,
        Node::Pow(..) => 4,
        Node::Const(c) => {
            // a constant that prints with a sign or an operator behaves
            // like a compound expression for parenthesization
            if c.im == 0.0 {
                if c.re < 0.0 {
                    3
                } else {
                    5
                }
            } else if c.re == 0.0 {
                if c.im == 1.0 {
                    5
                } else if c.im == -1.0 {
                    3
                } else {
                    2
                }
            } else {
                5 // printed with its own parentheses
            }
        }
        Node::Symbol(_) | Node::Func(..) => 5,
    }
}

fn write_expr(e: &Expr, out: &mut String, min_prec: u8) {
    let need_parens = prec(e) < min_prec;
    if need_parens {
        out.push('(');
    }
    match e.node() {
        Node::Const(c) => fmt_const(*c, out),
        Node::Symbol(s) => out.push_str(s),
        Node::Add(a, b) => {
            write_expr(a, out, 1);
            out.push_str(" + ");
            write_expr(b, out, 2);
        }
        Node::Sub(a, b) => {
            write_expr(a, out, 1);
            out.push_str(" - ");
            write_expr(b, out, 2);
        }
        Node::Mul(a, b) => {
            write_expr(a, out, 2);
            out.push('*');
            write_expr(b, out, 3);
        }
        Node::Div(a, b) => {
            write_expr(a, out, 2);
            out.push('/');
            write_expr(b, out, 3);
        }
        Node::Neg(a) => {
            out.push('-');
            // the operand of unary minus is a factor: anything weaker
            // than a power needs parentheses to survive reparsing
            write_expr(a, out, 4);
        }
        Node::Pow(base, exponent) => {
            // base is an atom position: even a power needs parentheses
            write_expr(base, out, 5);
            out.push('^');
            // exponent is a factor: unary minus and powers are fine
            write_expr(exponent, out, 3);
        }
        Node::Func(f, a) => {
            out.push_str(f.name());
            out.push('(');
            write_expr(a, out, 0);
            out.push(')');
        }
    }
    if need_parens {
        out.push(')');
    }
}

/// Render an expression; `parse(format_expr(e))` is structurally
/// identical to `e`.
pub fn format_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out, 0);
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_expr(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(s: &str) {
        let e = parse(s).unwrap();
        let printed = format_expr(&e);
        let back = parse(&printed).unwrap();
        assert_eq!(e, back, "input `{s}` printed `{printed}`");
    }

    #[test]
    fn precedence_cases() {
        assert_eq!(parse("a+b*c").unwrap(), parse("a+(b*c)").unwrap());
        assert_eq!(parse("a^b^c").unwrap(), parse("a^(b^c)").unwrap());
        assert_eq!(parse("-x^2").unwrap(), parse("-(x^2)").unwrap());
        assert_eq!(parse("x^-2").unwrap(), parse("x^(-2)").unwrap());
        assert_eq!(parse("a-b-c").unwrap(), parse("(a-b)-c").unwrap());
        assert_eq!(parse("a/b/c").unwrap(), parse("(a/b)/c").unwrap());
        assert_ne!(parse("-x*y").unwrap(), parse("-(x*y)").unwrap());
    }

    #[test]
    fn exchange_factor_parses() {
        let e = parse("((eps + i*x)/(eps - i*x))^lam").unwrap();
        let syms = e.free_symbols();
        assert!(syms.contains("lam") && syms.contains("x") && syms.contains("eps"));
        roundtrip("((eps + i*x)/(eps - i*x))^lam");
    }

    #[test]
    fn lorentzian_parses() {
        roundtrip("2*eps/(eps^2 + x^2)");
    }

    #[test]
    fn truncated_input_reports_offset() {
        let err = match parse("x + ") {
            Err(crate::error::Error::Parse(e)) => e,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(err.span.start, 4);
    }

    #[test]
    fn implicit_multiplication_is_rejected() {
        assert!(parse("2x").is_err());
    }

    #[test]
    fn reserved_constants() {
        let e = parse("i").unwrap();
        assert_eq!(e.as_const(), Some(Complex64::new(0.0, 1.0)));
        let p = parse("pi").unwrap();
        assert_eq!(p.as_const(), Some(Complex64::new(std::f64::consts::PI, 0.0)));
        assert!(parse("i(x)").is_err());
        assert!(parse("pi(x)").is_err());
        assert!(parse("notafunc(x)").is_err());
    }

    #[test]
    fn constant_subtrees_fold() {
        assert!(parse("2*3 + 1").unwrap().is_const(7.0));
        let z = parse("(1 + 2*i)").unwrap();
        assert_eq!(z.as_const(), Some(Complex64::new(1.0, 2.0)));
        // division by zero is left unfolded, errors at eval time
        let d = parse("1/0").unwrap();
        assert!(d.as_const().is_none());
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_expr(&parse("x^2 + 1").unwrap()), "x^2 + 1");
        roundtrip("-(x*eps)");
        roundtrip("x^2 + 1");
        roundtrip("exp(-(1/(1 - x^2)))");
        roundtrip("(x + 1)^(2*lam - 1)");
        roundtrip("conj(x)^2");
        roundtrip("-x^2");
        roundtrip("(-2)^x");
        roundtrip("sqrt(x^2 + eps^2)");
        roundtrip("logabs(x)*sin(x/eps)");
    }

    #[test]
    fn complex_constants_roundtrip() {
        for c in [
            Complex64::new(0.25, -1.5),
            Complex64::new(-2.0, 0.0),
            Complex64::new(0.0, -3.25),
            Complex64::new(1e-30, 2e18),
        ] {
            let e = Expr::constant(c) * Expr::x();
            let back = parse(&format_expr(&e)).unwrap();
            assert_eq!(e, back, "constant {c}");
        }
    }

    #[test]
    fn numbers_with_exponents() {
        let e = parse("1e-10 + x").unwrap();
        let printed = format_expr(&e);
        assert_eq!(parse(&printed).unwrap(), e);
        assert!(parse("1.5e+3").unwrap().is_const(1500.0));
    }
}
