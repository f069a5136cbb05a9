//! Sparse polynomial types: single-variable Laurent polynomials over the
//! integers and the multivariate polynomials produced by the state sum.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// `sum c_e * t^e` with nonzero coefficients only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Laurent(BTreeMap<i64, i64>);

impl Laurent {
    pub fn zero() -> Self {
        Laurent(BTreeMap::new())
    }

    pub fn constant(c: i64) -> Self {
        Laurent::monomial(c, 0)
    }

    pub fn one() -> Self {
        Laurent::constant(1)
    }

    /// `c * t^e`
    pub fn monomial(c: i64, e: i64) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, c);
        }
        Laurent(m)
    }

    pub fn var() -> Self {
        Laurent::monomial(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }

    fn add_term(&mut self, e: i64, c: i64) {
        let v = self.0.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&e);
        }
    }

    /// The constant value, if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<i64> {
        match self.0.len() {
            0 => Some(0),
            1 => self.0.get(&0).copied(),
            _ => None,
        }
    }

    /// `±t^e`, the units of `Z[t, t^-1]`.
    pub fn is_unit(&self) -> bool {
        self.0.len() == 1 && self.0.values().all(|c| c.abs() == 1)
    }

    pub fn inverse(&self) -> Option<Laurent> {
        if !self.is_unit() {
            return None;
        }
        let (&e, &c) = self.0.iter().next().unwrap();
        Some(Laurent::monomial(c, -e))
    }

    /// Integer powers; negative exponents need a unit.
    pub fn pow(&self, e: i64) -> Option<Laurent> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Laurent::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Some(out)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    /// `self / d` when the division is exact in `Z[t, t^-1]`.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        if d.is_zero() {
            return None;
        }
        let (dlo, dhi) = (d.min_exp()?, d.max_exp()?);
        let lead = d.0[&dhi];
        let mut rem = self.clone();
        let mut q = Laurent::zero();
        // Long division from the top; every step lowers the top exponent.
        while let Some(top) = rem.max_exp() {
            if top - dhi < rem.min_exp()? - dlo {
                return None;
            }
            let c = rem.0[&top];
            if c % lead != 0 {
                return None;
            }
            let t = Laurent::monomial(c / lead, top - dhi);
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    pub fn fmt_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (&e, &c)) in self.0.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {} ", sign));
            }
            let a = c.abs();
            let body = match e {
                0 => a.to_string(),
                1 if a == 1 => var.to_string(),
                1 => format!("{}*{}", a, var),
                _ if a == 1 => format!("{}^{}", var, e),
                _ => format!("{}*{}^{}", a, var, e),
            };
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("A"))
    }
}

impl Add for &Laurent {
    type Output = Laurent;

    fn add(self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&e, &c) in &o.0 {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;

    fn sub(self, o: &Laurent) -> Laurent {
        self + &(-o)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;

    fn neg(self) -> Laurent {
        Laurent(self.0.iter().map(|(&e, &c)| (e, -c)).collect())
    }
}

impl Mul for &Laurent {
    type Output = Laurent;

    fn mul(self, o: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &o.0 {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Laurent {
            type Output = Laurent;
            fn $f(self, o: Laurent) -> Laurent {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Indeterminates of the bracket ring. Crossing variables are indexed by
/// `(under label, over label)`; `Delta(p)` is the loop value for loops
/// crossing `p` marks mod 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    A(i64, i64),
    B(i64, i64),
    Delta(u8),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::A(a, b) => write!(f, "A[{},{}]", a, b),
            Var::B(a, b) => write!(f, "B[{},{}]", a, b),
            Var::Delta(p) => write!(f, "d{}", p),
        }
    }
}

/// Product of variables with nonzero exponents, keys in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub BTreeMap<Var, i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial::one().times(v, 1)
    }

    pub fn times(mut self, v: Var, e: i64) -> Self {
        let x = self.0.entry(v).or_insert(0);
        *x += e;
        if *x == 0 {
            self.0.remove(&v);
        }
        self
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        o.0.iter().fold(self.clone(), |m, (&v, &e)| m.times(v, e))
    }

    pub fn degree_in(&self, v: Var) -> i64 {
        self.0.get(&v).copied().unwrap_or(0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{}^{}", v, e) }).collect();
        f.write_str(&parts.join("*"))
    }
}

/// Integer combination of monomials; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketPolynomial(pub BTreeMap<Monomial, i64>);

impl BracketPolynomial {
    pub fn zero() -> Self {
        BracketPolynomial(BTreeMap::new())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, 1);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        let v = self.0.entry(m.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&m);
        }
    }

    pub fn add(&self, o: &BracketPolynomial) -> BracketPolynomial {
        let mut out = self.clone();
        for (m, &c) in &o.0 {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn mul(&self, o: &BracketPolynomial) -> BracketPolynomial {
        let mut out = Self::zero();
        for (m1, &c1) in &self.0 {
            for (m2, &c2) in &o.0 {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.0.keys().flat_map(|m| m.0.keys().copied()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Sorted `(monomial, coefficient)` records for structured output.
    pub fn records(&self) -> Vec<(String, i64)> {
        self.0.iter().map(|(m, &c)| (m.to_string(), c)).collect()
    }
}

impl fmt::Display for BracketPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(m, &c)| match c {
                1 => m.to_string(),
                -1 => format!("-{}", m),
                _ => format!("{}*{}", c, m),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
