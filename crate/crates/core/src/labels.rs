//! Arc labels, crossing labels, degree and parity.
//!
//! Walking a component from its base point the label starts at 0 and moves
//! by the direction of every mark crossed. A crossing is labeled by the label
//! at its over pass minus the label at its under pass.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CrossingId, InvalidCode, MarkedGaussCode, Position, Symbol};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("unknown crossing c{0}")]
    UnknownCrossing(CrossingId),
    #[error(transparent)]
    Invalid(#[from] InvalidCode),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeakParity {
    Zero,
    Nonzero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledDiagram {
    pub code: MarkedGaussCode,
    /// Label of the arc entering each symbol, indexed like `code.components`.
    pub position_labels: Vec<Vec<i64>>,
    /// Labels of the semi-arcs between consecutive marks, in traversal order
    /// from the base point. A component with `m > 0` marks has `m` arcs.
    pub arc_labels: Vec<Vec<i64>>,
    pub crossing_labels: BTreeMap<CrossingId, i64>,
    pub degrees: Vec<i64>,
}

pub fn compute_labels(code: &MarkedGaussCode) -> Result<LabeledDiagram, InvalidCode> {
    code.check()?;
    let mut position_labels = Vec::with_capacity(code.num_components());
    let mut arc_labels = Vec::with_capacity(code.num_components());
    let mut degrees = Vec::with_capacity(code.num_components());
    for c in 0..code.num_components() {
        let seq = &code.components[c];
        let mut labels = vec![0; seq.len()];
        let mut arcs = vec![0];
        let mut cur = 0;
        for i in code.traversal(c) {
            labels[i] = cur;
            if let Symbol::Mark(d) = seq[i] {
                cur += d.value();
                arcs.push(cur);
            }
        }
        // The arc after the last mark closes up with the first one.
        if arcs.len() > 1 {
            arcs.pop();
        }
        position_labels.push(labels);
        arc_labels.push(arcs);
        degrees.push(cur);
    }
    let crossing_labels = code
        .crossings()
        .into_iter()
        .map(|(id, cp)| {
            let over = position_labels[cp.over.component][cp.over.index];
            let under = position_labels[cp.under.component][cp.under.index];
            (id, over - under)
        })
        .collect();
    Ok(LabeledDiagram { code: code.clone(), position_labels, arc_labels, crossing_labels, degrees })
}

/// Per-component degree: the net number of turns around the circle factor.
pub fn degree(code: &MarkedGaussCode) -> Result<Vec<i64>, InvalidCode> {
    code.check()?;
    Ok(code.degrees())
}

impl LabeledDiagram {
    pub fn new(code: &MarkedGaussCode) -> Result<Self, InvalidCode> {
        compute_labels(code)
    }

    pub fn label_at(&self, p: Position) -> i64 {
        self.position_labels[p.component][p.index]
    }

    pub fn crossing_label(&self, c: CrossingId) -> Result<i64, LabelError> {
        self.crossing_labels.get(&c).copied().ok_or(LabelError::UnknownCrossing(c))
    }

    /// Label of the crossing reduced into `0..|k|`; raw label when `k == 0`.
    pub fn crossing_label_mod(&self, c: CrossingId, k: i64) -> Result<i64, LabelError> {
        let l = self.crossing_label(c)?;
        Ok(if k == 0 { l } else { l.rem_euclid(k.abs()) })
    }

    /// Gcd of the component degrees. Moving a base point along a component
    /// of degree `d` shifts labels by multiples of `d`, so crossing labels
    /// are base-point free only modulo this number (0 when every degree is 0).
    pub fn label_modulus(&self) -> i64 {
        fn gcd(a: i64, b: i64) -> i64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.degrees.iter().fold(0, |g, &d| gcd(g, d.abs()))
    }

    /// `(under label, over label)` of a crossing.
    pub fn crossing_arc_labels(&self, c: CrossingId) -> Result<(i64, i64), LabelError> {
        let cp = self.code.crossings().get(&c).copied().ok_or(LabelError::UnknownCrossing(c))?;
        Ok((self.label_at(cp.under), self.label_at(cp.over)))
    }

    pub fn parity(&self, c: CrossingId) -> Result<u8, LabelError> {
        Ok(self.crossing_label(c)?.rem_euclid(2) as u8)
    }

    pub fn weak_parity(&self, c: CrossingId) -> Result<WeakParity, LabelError> {
        Ok(if self.crossing_label(c)? == 0 { WeakParity::Zero } else { WeakParity::Nonzero })
    }

    pub fn total_degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    /// Label at each symbol followed by the mark direction, used by
    /// pretty-printers.
    pub fn annotated(&self) -> Vec<Vec<(Symbol, i64)>> {
        self.code
            .components
            .iter()
            .zip(&self.position_labels)
            .map(|(seq, ls)| seq.iter().copied().zip(ls.iter().copied()).collect())
            .collect()
    }
}

pub fn parity(d: &LabeledDiagram, c: CrossingId) -> Result<u8, LabelError> {
    d.parity(c)
}

pub fn weak_parity(d: &LabeledDiagram, c: CrossingId) -> Result<WeakParity, LabelError> {
    d.weak_parity(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_code;

    fn labels(s: &str) -> LabeledDiagram {
        compute_labels(&parse_code(s).unwrap()).unwrap()
    }

    #[test]
    fn unknot_single_arc() {
        let d = labels("*");
        assert_eq!(d.arc_labels, vec![vec![0]]);
        assert_eq!(d.degrees, vec![0]);
    }

    #[test]
    fn three_positive_marks() {
        let d = labels("*M+ M+ M+");
        assert_eq!(d.arc_labels, vec![vec![0, 1, 2]]);
        assert_eq!(d.degrees, vec![3]);
    }

    #[test]
    fn trefoil_with_one_mark() {
        // Hand traversal: O1 at 0, then everything after the mark at 1.
        let d = labels("*O1+ M+ U2+ O3+ U1+ O2+ U3+");
        let expected: BTreeMap<_, _> = [(1, -1), (2, 0), (3, 0)].into_iter().collect();
        assert_eq!(d.crossing_labels, expected);
        assert_eq!(d.position_labels[0], vec![0, 0, 1, 1, 1, 1, 1]);
        assert_eq!(d.degrees, vec![1]);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&parse_code("O1+ U1+").unwrap()).unwrap(), vec![0]);
        assert_eq!(degree(&parse_code("M+ M-").unwrap()).unwrap(), vec![0]);
        assert_eq!(degree(&parse_code("M+ M+ M- M+").unwrap()).unwrap(), vec![2]);
    }

    #[test]
    fn invalid_code_rejected() {
        let err = compute_labels(&parse_code("O1+").unwrap()).unwrap_err();
        assert_eq!(err.0, vec![crate::code::Violation::Unpaired(1)]);
    }

    #[test]
    fn parity_and_weak_parity() {
        // Labels 0, -3, 4 built from marks between the passes.
        let d = labels("*O1+ U1+ O2+ M- M- M- U2+ O3+ M+ M+ M+ M+ M+ M+ M+ U3+ M-");
        assert_eq!(d.crossing_label(1).unwrap(), 0);
        assert_eq!(d.crossing_label(2).unwrap(), 3);
        assert_eq!(d.crossing_label(3).unwrap(), -7);
        assert_eq!(d.parity(1).unwrap(), 0);
        assert_eq!(d.parity(2).unwrap(), 1);
        assert_eq!(d.parity(3).unwrap(), 1);
        assert_eq!(d.weak_parity(1).unwrap(), WeakParity::Zero);
        assert_eq!(d.weak_parity(2).unwrap(), WeakParity::Nonzero);
        assert_eq!(d.parity(9), Err(LabelError::UnknownCrossing(9)));
        assert_eq!(d.weak_parity(9), Err(LabelError::UnknownCrossing(9)));

        let e = labels("*U1+ M- M- M- O1+ U2+ M+ M+ M+ M+ O2+ U3+ M+ M+ O3+ M-");
        assert_eq!(e.crossing_label(1).unwrap(), -3);
        assert_eq!(e.parity(1).unwrap(), 1);
        assert_eq!(e.crossing_label(2).unwrap(), 4);
        assert_eq!(e.parity(2).unwrap(), 0);
        assert_eq!(e.crossing_label(3).unwrap(), 2);
        assert_eq!(e.weak_parity(3).unwrap(), WeakParity::Nonzero);
        assert_eq!(e.crossing_label_mod(1, 2).unwrap(), 1);
        assert_eq!(e.label_modulus(), e.degrees[0].abs());
    }

    #[test]
    fn base_point_shift_on_degree_zero() {
        let a = labels("*O1+ M+ U2+ O2+ M- U1+");
        let b = labels("O1+ M+ *U2+ O2+ M- U1+");
        assert_eq!(a.crossing_labels, b.crossing_labels);
        assert_eq!(a.arc_labels, vec![vec![0, 1]]);
        assert_eq!(b.arc_labels, vec![vec![0, -1]]);
    }
}
