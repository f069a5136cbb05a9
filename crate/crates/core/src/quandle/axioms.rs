//! The labeled quandle axioms as terms, shared by certification and search.
//!
//! Indices live in `Z_n`. Axiom (3) is read as: every displayed equation
//! holds for every pair with `i + j = ±1`. The inverse operations are the
//! operations themselves, since axiom (2) makes each `∘_i` an involution in
//! its first argument.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axiom {
    /// `x *_0 x = x ∘_0 x`
    A1,
    /// `x *_j y = x *_j (y *_j x)`
    A2Star,
    /// `(x ∘_j y) ∘_j y = x`
    A2Circ,
    /// `x *_i y = x *_i (y ∘_i x)`
    A3a,
    /// `x *_i y = x ∘_j S(y)`
    A3b,
    /// `S(y) *_j x = S(y ∘_i x)`
    A3c,
    /// `x ∘_j S(y ∘_i x) = x ∘_i (y ∘_i x)`
    A3d,
    /// `S(y ∘_i x) *_j (x ∘_j S(y ∘_i x)) = S(y)`
    A3e,
    /// `(z ∘_i y) ∘_k x = (z ∘_k (x ∘_j y)) ∘_i (y ∘_j x)`
    A4a,
    /// `(y ∘_j x) *_i (z ∘_k (x *_j y)) = (y *_j z) ∘_j (x *_k (z *_i y))`
    A4b,
    /// `(x *_j y) *_k z = (x *_k (z ∘_i y)) *_j (y *_i z)`
    A4c,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::A1 => "(1)",
            Axiom::A2Star => "(2*)",
            Axiom::A2Circ => "(2o)",
            Axiom::A3a => "(3.1a)",
            Axiom::A3b => "(3.1b)",
            Axiom::A3c => "(3.2)",
            Axiom::A3d => "(3.3)",
            Axiom::A3e => "(3.4)",
            Axiom::A4a => "(4.1)",
            Axiom::A4b => "(4.2)",
            Axiom::A4c => "(4.3)",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Ix {
    I,
    J,
    K,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Term {
    Var(usize),
    Star(Ix, Box<Term>, Box<Term>),
    Circ(Ix, Box<Term>, Box<Term>),
    S(Box<Term>),
}

const X: Term = Term::Var(0);
const Y: Term = Term::Var(1);
const Z: Term = Term::Var(2);

fn st(ix: Ix, a: Term, b: Term) -> Term {
    Term::Star(ix, Box::new(a), Box::new(b))
}

fn ci(ix: Ix, a: Term, b: Term) -> Term {
    Term::Circ(ix, Box::new(a), Box::new(b))
}

fn s(a: Term) -> Term {
    Term::S(Box::new(a))
}

/// Which index tuples an equation is quantified over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Family {
    /// `i = j = k = 0`.
    Zero,
    /// every `j`.
    Single,
    /// `i + j = ±1`.
    Pair,
    /// `k = i + j`.
    Triple,
}

pub(crate) struct Equation {
    pub axiom: Axiom,
    pub lhs: Term,
    pub rhs: Term,
    pub family: Family,
    pub vars: usize,
}

pub(crate) fn equations() -> Vec<Equation> {
    use Ix::*;
    let eq = |axiom, lhs, rhs, family, vars| Equation { axiom, lhs, rhs, family, vars };
    vec![
        eq(Axiom::A1, st(I, X, X), ci(I, X, X), Family::Zero, 1),
        eq(Axiom::A2Star, st(J, X, Y), st(J, X, st(J, Y, X)), Family::Single, 2),
        eq(Axiom::A2Circ, ci(J, ci(J, X, Y), Y), X, Family::Single, 2),
        eq(Axiom::A3a, st(I, X, Y), st(I, X, ci(I, Y, X)), Family::Pair, 2),
        eq(Axiom::A3b, st(I, X, Y), ci(J, X, s(Y)), Family::Pair, 2),
        eq(Axiom::A3c, st(J, s(Y), X), s(ci(I, Y, X)), Family::Pair, 2),
        eq(Axiom::A3d, ci(J, X, s(ci(I, Y, X))), ci(I, X, ci(I, Y, X)), Family::Pair, 2),
        eq(Axiom::A3e, st(J, s(ci(I, Y, X)), ci(J, X, s(ci(I, Y, X)))), s(Y), Family::Pair, 2),
        eq(Axiom::A4a, ci(K, ci(I, Z, Y), X), ci(I, ci(K, Z, ci(J, X, Y)), ci(J, Y, X)), Family::Triple, 3),
        eq(
            Axiom::A4b,
            st(I, ci(J, Y, X), ci(K, Z, st(J, X, Y))),
            ci(J, st(J, Y, Z), st(K, X, st(I, Z, Y))),
            Family::Triple,
            3,
        ),
        eq(Axiom::A4c, st(K, st(J, X, Y), Z), st(J, st(K, X, ci(I, Z, Y)), st(I, Y, Z)), Family::Triple, 3),
    ]
}

/// Index tuples `(i, j, k)` of a family in `Z_n`.
pub(crate) fn index_tuples(family: Family, n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    match family {
        Family::Zero => out.push([0, 0, 0]),
        Family::Single => out.extend((0..n).map(|j| [0, j, 0])),
        Family::Pair => {
            for i in 0..n {
                for j in 0..n {
                    let t = (i + j) % n;
                    if t == 1 % n || t == (n - 1) % n {
                        out.push([i, j, 0]);
                    }
                }
            }
        }
        Family::Triple => {
            for i in 0..n {
                for j in 0..n {
                    out.push([i, j, (i + j) % n]);
                }
            }
        }
    }
    out
}

/// Table cell addressed by an operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Cell {
    Star(usize, u8, u8),
    Circ(usize, u8, u8),
    S(u8),
}

pub(crate) enum Eval {
    Known(u8),
    /// Every argument is known but this cell is not.
    Missing(Cell),
    Unknown,
}

/// Read access to possibly partial tables.
pub(crate) trait Tables {
    fn get(&self, cell: Cell) -> Option<u8>;
}

pub(crate) fn eval(t: &Term, idx: &[usize; 3], vars: &[u8; 3], tables: &impl Tables) -> Eval {
    let ix = |i: Ix| match i {
        Ix::I => idx[0],
        Ix::J => idx[1],
        Ix::K => idx[2],
    };
    let binary = |a: &Term, b: &Term, mk: &dyn Fn(u8, u8) -> Cell| match (
        eval(a, idx, vars, tables),
        eval(b, idx, vars, tables),
    ) {
        (Eval::Known(x), Eval::Known(y)) => {
            let cell = mk(x, y);
            tables.get(cell).map_or(Eval::Missing(cell), Eval::Known)
        }
        _ => Eval::Unknown,
    };
    match t {
        Term::Var(v) => Eval::Known(vars[*v]),
        Term::Star(i, a, b) => binary(a, b, &|x, y| Cell::Star(ix(*i), x, y)),
        Term::Circ(i, a, b) => binary(a, b, &|x, y| Cell::Circ(ix(*i), x, y)),
        Term::S(a) => match eval(a, idx, vars, tables) {
            Eval::Known(x) => tables.get(Cell::S(x)).map_or(Eval::Missing(Cell::S(x)), Eval::Known),
            _ => Eval::Unknown,
        },
    }
}
