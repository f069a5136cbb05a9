//! Expansion over smoothing states.
//!
//! Every semi-arc has a tail end (where it leaves a symbol) and a head end
//! (where it enters the next). A mark joins the head of its incoming arc to
//! the tail of its outgoing arc; a smoothed crossing joins its four ends in
//! two pairs. Loops are the cycles of the resulting 2-regular graph.

use rayon::prelude::*;

use crate::code::{Sign, Symbol};
use crate::labels::LabeledDiagram;
use crate::quandle::coloring::semi_arcs;

use super::poly::{BracketPolynomial, Monomial, Var};

/// Above this many crossings `state_sum` logs a cost warning.
pub const DEFAULT_WARN_CROSSINGS: usize = 16;

/// States are expanded in parallel from this many crossings on.
const PARALLEL_FROM: usize = 10;

/// Ends at a crossing: `[over in, over out, under in, under out]`.
type Ends = [usize; 4];

/// Arc-end pairs joined by the A and B smoothings.
type Smoothings = [[(usize, usize); 2]; 2];

/// The two smoothings of a crossing as pairs of ends, `[A, B]`. At a
/// positive crossing the A-smoothing joins each incoming end to the other
/// strand's outgoing end; a negative crossing swaps the roles.
fn smoothing(sign: Sign, [oi, oo, ui, uo]: Ends) -> Smoothings {
    let oriented = [(oo, ui), (oi, uo)];
    let unoriented = [(oo, uo), (oi, ui)];
    match sign {
        Sign::Pos => [oriented, unoriented],
        Sign::Neg => [unoriented, oriented],
    }
}

struct Skeleton {
    ends: usize,
    /// `(A var, B var, [A pairs, B pairs])` per crossing, in id order.
    crossings: Vec<(Var, Var, Smoothings)>,
    /// Fixed junctions: `(head, tail, is a mark)`.
    joins: Vec<(usize, usize, bool)>,
}

fn skeleton(d: &LabeledDiagram) -> Skeleton {
    let code = &d.code;
    let (offset, total) = semi_arcs(d);
    let tail = |c: usize, i: usize| 2 * (offset[c] + i);
    let head_in = |c: usize, i: usize| {
        let len = code.components[c].len();
        2 * (offset[c] + (i + len - 1) % len) + 1
    };
    let mut crossings = Vec::new();
    for (id, cp) in code.crossings() {
        let (a, b) = d.crossing_arc_labels(id).expect("crossing of this diagram");
        let (o, u) = (cp.over, cp.under);
        let ends = [head_in(o.component, o.index), tail(o.component, o.index), head_in(u.component, u.index), tail(u.component, u.index)];
        crossings.push((Var::A(a, b), Var::B(a, b), smoothing(cp.sign, ends)));
    }
    let mut joins = Vec::new();
    for (c, seq) in code.components.iter().enumerate() {
        if seq.is_empty() {
            // One arc closed on itself, with no symbol to pass through.
            joins.push((2 * offset[c] + 1, 2 * offset[c], false));
        }
        for (i, s) in seq.iter().enumerate() {
            if let Symbol::Mark(_) = s {
                joins.push((head_in(c, i), tail(c, i), true));
            }
        }
    }
    Skeleton { ends: 2 * total, crossings, joins }
}

/// One smoothing state and its contribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateTerm {
    /// Bit `t` set means crossing `t` (in id order) takes its B-smoothing.
    pub mask: u64,
    /// Marks mod 2 on each loop.
    pub loop_parities: Vec<u8>,
    pub monomial: Monomial,
}

impl Skeleton {
    fn loops(&self, mask: u64) -> Vec<u8> {
        const NONE: usize = usize::MAX;
        let mut partner = vec![NONE; self.ends];
        let mut marked = vec![false; self.ends];
        let mut join = |x: usize, y: usize| {
            partner[x] = y;
            partner[y] = x;
        };
        for &(h, t, _) in &self.joins {
            join(h, t);
        }
        for (t, (_, _, pairs)) in self.crossings.iter().enumerate() {
            for &(x, y) in &pairs[(mask >> t & 1) as usize] {
                join(x, y);
            }
        }
        for &(h, t, mark) in &self.joins {
            marked[h] = mark;
            marked[t] = mark;
        }
        let mut seen = vec![false; self.ends];
        let mut out = Vec::new();
        for start in 0..self.ends {
            if seen[start] {
                continue;
            }
            let mut parity = 0u8;
            let mut e = start;
            loop {
                // Along the arc, then across a junction.
                seen[e] = true;
                seen[e ^ 1] = true;
                let h = e ^ 1;
                let next = partner[h];
                if marked[h] {
                    parity ^= 1;
                }
                e = next;
                if e == start {
                    break;
                }
            }
            out.push(parity);
        }
        out
    }

    fn term(&self, mask: u64) -> StateTerm {
        let loop_parities = self.loops(mask);
        let mut m = Monomial::one();
        for (t, &(a, b, _)) in self.crossings.iter().enumerate() {
            m = m.times(if mask >> t & 1 == 0 { a } else { b }, 1);
        }
        for &p in &loop_parities {
            m = m.times(Var::Delta(p), 1);
        }
        StateTerm { mask, loop_parities, monomial: m }
    }
}

/// All `2^c` states, uncollected.
pub fn state_terms(d: &LabeledDiagram) -> Vec<StateTerm> {
    let sk = skeleton(d);
    let c = sk.crossings.len();
    assert!(c < 64, "too many crossings for state expansion");
    (0..1u64 << c).map(|mask| sk.term(mask)).collect()
}

pub fn state_sum(d: &LabeledDiagram) -> BracketPolynomial {
    state_sum_with(d, DEFAULT_WARN_CROSSINGS)
}

/// [`state_sum`] with a custom crossing count above which a cost warning is
/// logged.
pub fn state_sum_with(d: &LabeledDiagram, warn_above: usize) -> BracketPolynomial {
    let sk = skeleton(d);
    let c = sk.crossings.len();
    assert!(c < 64, "too many crossings for state expansion");
    if c > warn_above {
        log::warn!("expanding 2^{} smoothing states", c);
    }
    let collect = |range: std::ops::Range<u64>| {
        let mut p = BracketPolynomial::zero();
        for mask in range {
            p.add_term(sk.term(mask).monomial, 1);
        }
        p
    };
    if c < PARALLEL_FROM {
        return collect(0..1u64 << c);
    }
    let chunk = 1u64 << (PARALLEL_FROM - 2);
    (0..(1u64 << c) / chunk)
        .into_par_iter()
        .map(|k| collect(k * chunk..(k + 1) * chunk))
        .reduce(BracketPolynomial::zero, |a, b| a.add(&b))
}

