//! Colorings of labeled diagrams by labeled quandles.
//!
//! Semi-arcs are the segments between consecutive symbols of a component.
//! At a positive crossing with label `i`, under strand entering with `x` and
//! over strand entering with `y`, the strands leave with `x *_i y` (under)
//! and `y ∘_i x` (over). A negative crossing is the inverse: the same
//! relation read from the outgoing colors. Crossing a mark of direction +1
//! applies `S`; direction -1 applies `S^-1`.

use thiserror::Error;

use crate::code::{InvalidCode, Sign, Symbol};
use crate::labels::LabeledDiagram;

use super::{CertifiedQuandle, LabeledQuandle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("S is not bijective but the diagram has marks")]
    NonBijectiveS,
    #[error(transparent)]
    Invalid(#[from] InvalidCode),
}

#[derive(Clone, Copy, Debug)]
enum Rule {
    /// `outs = (x *_i y, y ∘_i x)` from `ins = (x, y)`.
    Crossing(i64),
    /// `outs = (S(x))`.
    S,
}

#[derive(Clone, Debug)]
struct Constraint {
    rule: Rule,
    ins: Vec<usize>,
    outs: Vec<usize>,
}

/// Semi-arc numbering: the arc leaving symbol `i` of component `c` is
/// `offset[c] + i`; an empty component is one arc.
pub(crate) fn semi_arcs(d: &LabeledDiagram) -> (Vec<usize>, usize) {
    let mut offset = Vec::with_capacity(d.code.num_components());
    let mut total = 0;
    for seq in &d.code.components {
        offset.push(total);
        total += seq.len().max(1);
    }
    (offset, total)
}

fn constraints(d: &LabeledDiagram) -> (Vec<Constraint>, usize) {
    let code = &d.code;
    let (offset, total) = semi_arcs(d);
    let out_arc = |c: usize, i: usize| offset[c] + i;
    let in_arc = |c: usize, i: usize| {
        let len = code.components[c].len();
        offset[c] + (i + len - 1) % len
    };
    let mut cons = Vec::new();
    for (id, cp) in code.crossings() {
        let label = d.crossing_labels[&id];
        let (u, o) = (cp.under, cp.over);
        let (ui, uo) = (in_arc(u.component, u.index), out_arc(u.component, u.index));
        let (oi, oo) = (in_arc(o.component, o.index), out_arc(o.component, o.index));
        let c = match cp.sign {
            Sign::Pos => Constraint { rule: Rule::Crossing(label), ins: vec![ui, oi], outs: vec![uo, oo] },
            Sign::Neg => Constraint { rule: Rule::Crossing(label), ins: vec![uo, oo], outs: vec![ui, oi] },
        };
        cons.push(c);
    }
    for (c, seq) in code.components.iter().enumerate() {
        for (i, s) in seq.iter().enumerate() {
            if let Symbol::Mark(dir) = s {
                let (a, b) = (in_arc(c, i), out_arc(c, i));
                let (from, to) = if *dir == Sign::Pos { (a, b) } else { (b, a) };
                cons.push(Constraint { rule: Rule::S, ins: vec![from], outs: vec![to] });
            }
        }
    }
    (cons, total)
}

fn outputs(qd: &LabeledQuandle, rule: Rule, ins: &[u8]) -> [u8; 2] {
    match rule {
        Rule::Crossing(i) => [qd.star(i, ins[0], ins[1]), qd.circ(i, ins[1], ins[0])],
        Rule::S => [qd.s(ins[0]), 0],
    }
}

struct Counter<'a> {
    qd: &'a LabeledQuandle,
    cons: Vec<Constraint>,
    /// Constraints reading each arc.
    readers: Vec<Vec<usize>>,
}

impl Counter<'_> {
    fn propagate(&self, colors: &mut [u8], start: usize) -> bool {
        let mut stack = vec![start];
        while let Some(arc) = stack.pop() {
            for &k in &self.readers[arc] {
                let c = &self.cons[k];
                let ins: Vec<u8> = c.ins.iter().map(|&a| colors[a]).collect();
                if ins.contains(&u8::MAX) {
                    continue;
                }
                let outs = outputs(self.qd, c.rule, &ins);
                for (&arc2, &v) in c.outs.iter().zip(&outs) {
                    if colors[arc2] == u8::MAX {
                        colors[arc2] = v;
                        stack.push(arc2);
                    } else if colors[arc2] != v {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn count(&self, colors: Vec<u8>) -> u64 {
        match colors.iter().position(|&v| v == u8::MAX) {
            None => 1,
            Some(arc) => (0..self.qd.q as u8)
                .map(|v| {
                    let mut next = colors.clone();
                    next[arc] = v;
                    if self.propagate(&mut next, arc) {
                        self.count(next)
                    } else {
                        0
                    }
                })
                .sum(),
        }
    }
}

/// Colorings by a structure that has not been certified; used to exercise
/// the rules on known biquandles.
pub(crate) fn count_colorings_unchecked(d: &LabeledDiagram, qd: &LabeledQuandle) -> Result<u64, ColoringError> {
    d.code.check()?;
    if d.code.num_marks() > 0 && !qd.s_is_bijective() {
        return Err(ColoringError::NonBijectiveS);
    }
    let (cons, total) = constraints(d);
    let mut readers = vec![Vec::new(); total];
    for (k, c) in cons.iter().enumerate() {
        for &a in &c.ins {
            readers[a].push(k);
        }
    }
    let counter = Counter { qd, cons, readers };
    Ok(counter.count(vec![u8::MAX; total]))
}

pub fn count_colorings(d: &LabeledDiagram, qd: &CertifiedQuandle) -> Result<u64, ColoringError> {
    count_colorings_unchecked(d, qd.get())
}
