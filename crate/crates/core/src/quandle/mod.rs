//! Finite labeled quandles of degree `n`.
//!
//! A structure has operations `*_i`, `∘_i` for `i` in `Z_n` and a unary map
//! `S` on the carrier `0..q`. Crossing labels are reduced mod `n` before
//! they index the operations.

mod axioms;
pub mod coloring;
pub mod search;

use serde::{Deserialize, Serialize};

pub use axioms::Axiom;
use axioms::{equations, eval, index_tuples, Cell, Eval, Tables};
pub use coloring::{count_colorings, ColoringError};
pub use search::{search, search_cached, SearchOutcome};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabeledQuandle {
    pub q: usize,
    pub n: usize,
    /// `star[(i * q + x) * q + y] = x *_i y`
    pub star: Vec<u8>,
    /// `circ[(i * q + x) * q + y] = x ∘_i y`
    pub circ: Vec<u8>,
    pub s: Vec<u8>,
}

impl LabeledQuandle {
    /// `x *_i y = x`, `x ∘_i y = x`, `S = id`.
    pub fn trivial(q: usize, n: usize) -> Self {
        let table: Vec<u8> = (0..n).flat_map(|_| (0..q).flat_map(|x| std::iter::repeat_n(x as u8, q))).collect();
        LabeledQuandle { q, n, star: table.clone(), circ: table, s: (0..q as u8).collect() }
    }

    fn at(&self, i: usize, x: u8, y: u8) -> usize {
        (i * self.q + x as usize) * self.q + y as usize
    }

    /// Index `i` is reduced mod `n`.
    pub fn star(&self, i: i64, x: u8, y: u8) -> u8 {
        self.star[self.at(i.rem_euclid(self.n as i64) as usize, x, y)]
    }

    pub fn circ(&self, i: i64, x: u8, y: u8) -> u8 {
        self.circ[self.at(i.rem_euclid(self.n as i64) as usize, x, y)]
    }

    pub fn s(&self, x: u8) -> u8 {
        self.s[x as usize]
    }

    pub fn s_is_bijective(&self) -> bool {
        let mut seen = vec![false; self.q];
        self.s.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }

    pub fn s_inverse(&self) -> Option<Vec<u8>> {
        let mut inv = vec![u8::MAX; self.q];
        for (x, &v) in self.s.iter().enumerate() {
            if inv[v as usize] != u8::MAX {
                return None;
            }
            inv[v as usize] = x as u8;
        }
        Some(inv)
    }

    fn shape_ok(&self) -> bool {
        let cells = self.n * self.q * self.q;
        self.q >= 1
            && self.q <= u8::MAX as usize
            && self.n >= 1
            && self.star.len() == cells
            && self.circ.len() == cells
            && self.s.len() == self.q
            && self.star.iter().chain(&self.circ).chain(&self.s).all(|&v| (v as usize) < self.q)
    }

    /// The structure with the carrier relabeled by `perm`.
    pub fn permuted(&self, perm: &[u8]) -> LabeledQuandle {
        let mut out = self.clone();
        for i in 0..self.n {
            for x in 0..self.q as u8 {
                for y in 0..self.q as u8 {
                    let (px, py) = (perm[x as usize], perm[y as usize]);
                    out.star[self.at(i, px, py)] = perm[self.star[self.at(i, x, y)] as usize];
                    out.circ[self.at(i, px, py)] = perm[self.circ[self.at(i, x, y)] as usize];
                }
            }
        }
        for x in 0..self.q {
            out.s[perm[x] as usize] = perm[self.s[x] as usize];
        }
        out
    }
}

impl Tables for LabeledQuandle {
    fn get(&self, cell: Cell) -> Option<u8> {
        Some(match cell {
            Cell::Star(i, x, y) => self.star[self.at(i, x, y)],
            Cell::Circ(i, x, y) => self.circ[self.at(i, x, y)],
            Cell::S(x) => self.s[x as usize],
        })
    }
}

/// A failing axiom instance. Unused indices and variables are `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub axiom: Axiom,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub k: Option<usize>,
    pub x: u8,
    pub y: Option<u8>,
    pub z: Option<u8>,
    pub lhs: u8,
    pub rhs: u8,
}

/// Every failing axiom instance; empty means certified. Malformed tables
/// are reported as a failure of axiom (1) at `x = 0` with sentinel values.
pub fn certify(qd: &LabeledQuandle) -> Vec<Failure> {
    if !qd.shape_ok() {
        return vec![Failure { axiom: Axiom::A1, i: None, j: None, k: None, x: 0, y: None, z: None, lhs: u8::MAX, rhs: u8::MAX }];
    }
    let mut out = Vec::new();
    let q = qd.q as u8;
    for e in equations() {
        for idx in index_tuples(e.family, qd.n) {
            for x in 0..q {
                for y in 0..if e.vars >= 2 { q } else { 1 } {
                    for z in 0..if e.vars >= 3 { q } else { 1 } {
                        let vars = [x, y, z];
                        let (Eval::Known(l), Eval::Known(r)) = (eval(&e.lhs, &idx, &vars, qd), eval(&e.rhs, &idx, &vars, qd))
                        else {
                            unreachable!("total tables")
                        };
                        if l != r {
                            let (i, j, k) = match e.family {
                                axioms::Family::Zero => (Some(0), None, None),
                                axioms::Family::Single => (None, Some(idx[1]), None),
                                axioms::Family::Pair => (Some(idx[0]), Some(idx[1]), None),
                                axioms::Family::Triple => (Some(idx[0]), Some(idx[1]), Some(idx[2])),
                            };
                            out.push(Failure {
                                axiom: e.axiom,
                                i,
                                j,
                                k,
                                x,
                                y: (e.vars >= 2).then_some(y),
                                z: (e.vars >= 3).then_some(z),
                                lhs: l,
                                rhs: r,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// A structure known to satisfy every axiom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CertifiedQuandle(LabeledQuandle);

impl CertifiedQuandle {
    pub fn new(qd: LabeledQuandle) -> Result<Self, Vec<Failure>> {
        let f = certify(&qd);
        if f.is_empty() {
            Ok(CertifiedQuandle(qd))
        } else {
            Err(f)
        }
    }

    pub fn get(&self) -> &LabeledQuandle {
        &self.0
    }

    pub fn into_inner(self) -> LabeledQuandle {
        self.0
    }
}

impl std::ops::Deref for CertifiedQuandle {
    type Target = LabeledQuandle;

    fn deref(&self) -> &LabeledQuandle {
        &self.0
    }
}

impl<'de> Deserialize<'de> for CertifiedQuandle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let qd = LabeledQuandle::deserialize(d)?;
        CertifiedQuandle::new(qd).map_err(|f| serde::de::Error::custom(format!("{} axiom failures", f.len())))
    }
}

/// Instances of `S(a op_i b) = S(a) op_i S(b)` that fail, for both
/// operations; `'*'` or `'o'` names the operation.
pub fn s_homomorphism_failures(qd: &LabeledQuandle) -> Vec<(char, usize, u8, u8)> {
    let mut out = Vec::new();
    for i in 0..qd.n {
        let ii = i as i64;
        for a in 0..qd.q as u8 {
            for b in 0..qd.q as u8 {
                if qd.s(qd.star(ii, a, b)) != qd.star(ii, qd.s(a), qd.s(b)) {
                    out.push(('*', i, a, b));
                }
                if qd.s(qd.circ(ii, a, b)) != qd.circ(ii, qd.s(a), qd.s(b)) {
                    out.push(('o', i, a, b));
                }
            }
        }
    }
    out
}

/// Failures of the biquandle axioms for `(*_0, ∘_0)`, where `x *_0 y` is
/// the color of `x` after passing under `y` and `x ∘_0 y` the color of `x`
/// after passing over `y`.
pub fn biquandle_failures(qd: &LabeledQuandle) -> Vec<String> {
    let q = qd.q as u8;
    let st = |x, y| qd.star(0, x, y);
    let ci = |x, y| qd.circ(0, x, y);
    let mut out = Vec::new();
    for x in 0..q {
        if st(x, x) != ci(x, x) {
            out.push(format!("x*x != x∘x at x={}", x));
        }
    }
    let bijective = |f: &dyn Fn(u8) -> u8| {
        let mut seen = vec![false; qd.q];
        (0..q).all(|x| !std::mem::replace(&mut seen[f(x) as usize], true))
    };
    for y in 0..q {
        if !bijective(&|x| st(x, y)) {
            out.push(format!("x -> x*{} not invertible", y));
        }
        if !bijective(&|x| ci(x, y)) {
            out.push(format!("x -> x∘{} not invertible", y));
        }
    }
    let mut seen = vec![false; qd.q * qd.q];
    for x in 0..q {
        for y in 0..q {
            let (a, b) = (ci(y, x), st(x, y));
            if std::mem::replace(&mut seen[a as usize * qd.q + b as usize], true) {
                out.push(format!("(x,y) -> (y∘x, x*y) not injective at ({},{})", x, y));
            }
        }
    }
    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                if st(st(x, y), z) != st(st(x, ci(z, y)), st(y, z)) {
                    out.push(format!("under-under exchange fails at ({},{},{})", x, y, z));
                }
                if ci(st(x, y), z) != st(ci(x, st(z, y)), ci(y, z)) {
                    out.push(format!("under-over exchange fails at ({},{},{})", x, y, z));
                }
                if ci(ci(x, y), z) != ci(ci(x, st(z, y)), ci(y, z)) {
                    out.push(format!("over-over exchange fails at ({},{},{})", x, y, z));
                }
            }
        }
    }
    out
}
