//! Assignments of the bracket variables to Laurent polynomials in one
//! variable, loaded from TOML:
//!
//! ```toml
//! variable = "A"
//! window = 3
//! A = "A"
//! B = "A^-1"
//! delta0 = "-A^2 - A^-2"
//! delta1 = "-A^2 - A^-2"
//! ```
//!
//! Expressions use integers, the variable, the labels `a` and `b` (the
//! indices of `A_{a,b}`), `+ - *`, parentheses and `^` with an integer
//! exponent, which may itself depend on `a` and `b`. Optional `C` and `D`
//! assign the coefficients of the third relation family.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::poly::{BracketPolynomial, Laurent, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("expression {expr:?}: {message} at offset {offset}")]
    Syntax { expr: String, offset: usize, message: String },
    #[error("config: {0}")]
    Config(String),
    #[error("window must be nonnegative, got {0}")]
    Window(i64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("variable {0} lies outside the label window")]
    OutOfWindow(Var),
    #[error("{0} appears with a negative exponent but its value is not a unit")]
    NotInvertible(Var),
    #[error("expression {expr:?} at (a, b) = ({a}, {b}): {message}")]
    Expr { expr: String, a: i64, b: i64, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Int(i64),
    Var,
    LabelA,
    LabelB,
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
}

/// A parsed assignment expression, kept with its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    source: String,
    root: Node,
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError::Syntax { expr: self.src.to_string(), offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Node, SpecError> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == b'+' { Node::Add(lhs.into(), rhs.into()) } else { Node::Sub(lhs.into(), rhs.into()) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, SpecError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            lhs = Node::Mul(lhs.into(), self.unary()?.into());
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, SpecError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Node::Neg(self.unary()?.into()));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, SpecError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            return Ok(Node::Pow(base.into(), self.unary()?.into()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, SpecError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                match self.src[start..self.pos].parse() {
                    Ok(v) => Ok(Node::Int(v)),
                    Err(_) => {
                        self.pos = start;
                        self.err("integer out of range")
                    }
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    w if w == self.var => Ok(Node::Var),
                    "a" => Ok(Node::LabelA),
                    "b" => Ok(Node::LabelB),
                    w => {
                        let w = w.to_string();
                        self.pos = start;
                        self.err(format!("unknown name {:?}", w))
                    }
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of expression"),
        }
    }
}

impl Expr {
    /// Parses `src` with `var` as the polynomial variable; `var` may not be
    /// `a` or `b`.
    pub fn parse(src: &str, var: &str) -> Result<Expr, SpecError> {
        let mut p = Parser { src, bytes: src.as_bytes(), pos: 0, var };
        let root = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(Expr { source: src.to_string(), root })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval(&self, a: i64, b: i64) -> Result<Laurent, EvalError> {
        let fail = |message: &str| EvalError::Expr { expr: self.source.clone(), a, b, message: message.into() };
        fn go(n: &Node, a: i64, b: i64, fail: &dyn Fn(&str) -> EvalError) -> Result<Laurent, EvalError> {
            Ok(match n {
                Node::Int(v) => Laurent::constant(*v),
                Node::Var => Laurent::var(),
                Node::LabelA => Laurent::constant(a),
                Node::LabelB => Laurent::constant(b),
                Node::Neg(x) => -&go(x, a, b, fail)?,
                Node::Add(x, y) => go(x, a, b, fail)? + go(y, a, b, fail)?,
                Node::Sub(x, y) => go(x, a, b, fail)? - go(y, a, b, fail)?,
                Node::Mul(x, y) => go(x, a, b, fail)? * go(y, a, b, fail)?,
                Node::Pow(x, y) => {
                    let e = go(y, a, b, fail)?.as_constant().ok_or_else(|| fail("exponent is not an integer"))?;
                    if e.abs() > 1 << 16 {
                        return Err(fail("exponent too large"));
                    }
                    go(x, a, b, fail)?.pow(e).ok_or_else(|| fail("negative power of a non-unit"))?
                }
            })
        }
        go(&self.root, a, b, &fail)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    #[serde(default = "default_variable")]
    variable: String,
    window: i64,
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
    delta0: String,
    delta1: String,
    #[serde(rename = "C")]
    c: Option<String>,
    #[serde(rename = "D")]
    d: Option<String>,
}

fn default_variable() -> String {
    "A".into()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    pub variable: String,
    /// Labels range over `[-window, window]`.
    pub window: i64,
    pub a: Expr,
    pub b: Expr,
    pub delta0: Expr,
    pub delta1: Expr,
    pub c: Option<Expr>,
    pub d: Option<Expr>,
}

impl Specialization {
    pub fn new(variable: &str, window: i64, a: &str, b: &str, delta0: &str, delta1: &str) -> Result<Self, SpecError> {
        if window < 0 {
            return Err(SpecError::Window(window));
        }
        if !variable.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            || !variable.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
            || variable == "a"
            || variable == "b"
        {
            return Err(SpecError::Config(format!("invalid variable name {:?}", variable)));
        }
        let p = |s: &str| Expr::parse(s, variable);
        Ok(Specialization {
            variable: variable.to_string(),
            window,
            a: p(a)?,
            b: p(b)?,
            delta0: p(delta0)?,
            delta1: p(delta1)?,
            c: None,
            d: None,
        })
    }

    /// Adds assignments for the coefficients of the third family.
    pub fn with_cd(mut self, c: &str, d: &str) -> Result<Self, SpecError> {
        self.c = Some(Expr::parse(c, &self.variable)?);
        self.d = Some(Expr::parse(d, &self.variable)?);
        Ok(self)
    }

    /// `A_{a,b} -> A`, `B_{a,b} -> A^-1`, `δ_0 = δ_1 = -A^2 - A^-2`.
    pub fn kauffman(window: i64) -> Self {
        Specialization::new("A", window, "A", "A^-1", "-A^2 - A^-2", "-A^2 - A^-2").expect("valid preset")
    }

    pub fn from_toml(text: &str) -> Result<Self, SpecError> {
        let c: Config = toml::from_str(text).map_err(|e| SpecError::Config(e.message().to_string()))?;
        let s = Specialization::new(&c.variable, c.window, &c.a, &c.b, &c.delta0, &c.delta1)?;
        match (c.c, c.d) {
            (Some(cc), Some(dd)) => s.with_cd(&cc, &dd),
            (None, None) => Ok(s),
            _ => Err(SpecError::Config("C and D must be given together".into())),
        }
    }

    pub fn load(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|e| SpecError::Config(format!("{}: {}", path.display(), e)))?;
        Specialization::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        let c = Config {
            variable: self.variable.clone(),
            window: self.window,
            a: self.a.source.clone(),
            b: self.b.source.clone(),
            delta0: self.delta0.source.clone(),
            delta1: self.delta1.source.clone(),
            c: self.c.as_ref().map(|e| e.source.clone()),
            d: self.d.as_ref().map(|e| e.source.clone()),
        };
        toml::to_string(&c).expect("serializable")
    }

    pub fn in_window(&self, label: i64) -> bool {
        label.abs() <= self.window
    }

    pub fn labels(&self) -> impl Iterator<Item = i64> + Clone {
        -self.window..=self.window
    }

    /// The value of one variable.
    pub fn value(&self, v: Var) -> Result<Laurent, EvalError> {
        match v {
            Var::A(a, b) | Var::B(a, b) if !(self.in_window(a) && self.in_window(b)) => Err(EvalError::OutOfWindow(v)),
            Var::A(a, b) => self.a.eval(a, b),
            Var::B(a, b) => self.b.eval(a, b),
            Var::Delta(0) => self.delta0.eval(0, 0),
            Var::Delta(_) => self.delta1.eval(0, 0),
        }
    }

    pub fn fmt_laurent(&self, p: &Laurent) -> String {
        p.fmt_with(&self.variable)
    }
}

/// Substitutes every variable of `p`.
pub fn evaluate(p: &BracketPolynomial, s: &Specialization) -> Result<Laurent, EvalError> {
    let mut values = BTreeMap::new();
    for v in p.variables() {
        values.insert(v, s.value(v)?);
    }
    let mut out = Laurent::zero();
    for (m, &c) in &p.0 {
        let mut term = Laurent::constant(c);
        for (v, &e) in &m.0 {
            let x = values[v].pow(e).ok_or(EvalError::NotInvertible(*v))?;
            term = term * x;
        }
        out = out + term;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::poly::Monomial;

    #[test]
    fn parses_and_evaluates() {
        let e = Expr::parse("-A^2 - A^-2", "A").unwrap();
        assert_eq!(e.eval(0, 0).unwrap(), Laurent::monomial(-1, 2) + Laurent::monomial(-1, -2));
        let e = Expr::parse("t^(a - b) * (1 + t)", "t").unwrap();
        assert_eq!(e.eval(2, 1).unwrap(), Laurent::monomial(1, 1) + Laurent::monomial(1, 2));
        assert_eq!(Expr::parse("2*a*b", "t").unwrap().eval(3, -1).unwrap(), Laurent::constant(-6));
    }

    #[test]
    fn syntax_errors_have_offsets() {
        let SpecError::Syntax { offset, .. } = Expr::parse("A + x", "A").unwrap_err() else { panic!() };
        assert_eq!(offset, 4);
        assert!(Expr::parse("(A", "A").is_err());
        assert!(Expr::parse("A A", "A").is_err());
        assert!(Expr::parse("(1 + A)^-1", "A").unwrap().eval(0, 0).is_err());
        assert!(Expr::parse("A^A", "A").unwrap().eval(0, 0).is_err());
    }

    #[test]
    fn kauffman_delta() {
        let s = Specialization::kauffman(2);
        let p = BracketPolynomial::from_monomial(Monomial::var(Var::Delta(0)));
        assert_eq!(evaluate(&p, &s).unwrap().to_string(), "-A^2 - A^-2");
        let far = BracketPolynomial::from_monomial(Monomial::var(Var::A(3, 0)));
        assert_eq!(evaluate(&far, &s), Err(EvalError::OutOfWindow(Var::A(3, 0))));
    }

    #[test]
    fn toml_round_trip() {
        let s = Specialization::kauffman(3).with_cd("A", "A^-1").unwrap();
        let back = Specialization::from_toml(&s.to_toml()).unwrap();
        assert_eq!(back, s);
        assert!(Specialization::from_toml("window = 1\nA = \"1\"\nB = \"1\"\ndelta0 = \"-2\"\ndelta1 = \"-2\"\nC = \"1\"").is_err());
        assert!(Specialization::from_toml("window = -1\nA = \"1\"\nB = \"1\"\ndelta0 = \"-2\"\ndelta1 = \"-2\"").is_err());
    }
}
