//! Evaluating the bracket on both sides of a move.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CrossingId, MarkedGaussCode};
use crate::labels::{compute_labels, LabeledDiagram};
use crate::moves::{apply, MoveError, MoveKind, MoveSite};

use super::poly::{Laurent, Var};
use super::relations::check_relations;
use super::specialization::{evaluate, EvalError, Specialization};
use super::state_sum::state_sum;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvarianceError {
    #[error("specialization fails relation families 1-2 ({family1} and {family2} failing instances)")]
    Relations { family1: usize, family2: usize },
    #[error("{site}: {error}")]
    Move { site: MoveSite, error: MoveError },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceRow {
    pub site: MoveSite,
    pub kind: MoveKind,
    pub before: Laurent,
    pub after: Laurent,
    /// For R1, the factor the side with the kink carries.
    pub framing: Option<Laurent>,
    /// `before == after`, or for R1 equality once the framing factor is
    /// applied to the kink-free side.
    pub equal: bool,
}

/// The factor a kink of the given sign on a strand labeled `a` contributes:
/// `A δ_0 + B` when positive, `A + B δ_0` when negative.
pub fn framing_factor(s: &Specialization, positive: bool, a: i64) -> Result<Laurent, EvalError> {
    let (x, y, d0) = (s.value(Var::A(a, a))?, s.value(Var::B(a, a))?, s.value(Var::Delta(0))?);
    Ok(if positive { &(&x * &d0) + &y } else { &x + &(&y * &d0) })
}

fn kink_factor(s: &Specialization, code: &MarkedGaussCode, id: CrossingId) -> Result<Laurent, EvalError> {
    let d = compute_labels(code).expect("valid code");
    let cp = code.crossings()[&id];
    let (a, _) = d.crossing_arc_labels(id).expect("crossing of this diagram");
    framing_factor(s, cp.sign == crate::code::Sign::Pos, a)
}

/// Applies each move to `d` separately and compares the specialized
/// brackets. Unless `override_relations` is set, `s` must satisfy relation
/// families 1 and 2.
pub fn invariance_report(
    d: &LabeledDiagram,
    s: &Specialization,
    moves: &[MoveSite],
    override_relations: bool,
) -> Result<Vec<InvarianceRow>, InvarianceError> {
    if !override_relations {
        let r = check_relations(s)?;
        if !r.families_1_2_hold() {
            return Err(InvarianceError::Relations { family1: r.family1.len(), family2: r.family2.len() });
        }
    }
    let before = evaluate(&state_sum(d), s)?;
    let mut rows = Vec::new();
    for site in moves {
        let trace = apply(&d.code, site).map_err(|error| InvarianceError::Move { site: *site, error })?;
        let after = evaluate(&state_sum(&compute_labels(&trace.after).expect("valid after move")), s)?;
        let kink = trace.label_delta.keys().next().copied();
        let (framing, equal) = match (site.kind(), kink) {
            (MoveKind::R1Add, Some(id)) => {
                let f = kink_factor(s, &trace.after, id)?;
                let eq = after == &f * &before;
                (Some(f), eq)
            }
            (MoveKind::R1Remove, Some(id)) => {
                let f = kink_factor(s, &d.code, id)?;
                let eq = before == &f * &after;
                (Some(f), eq)
            }
            _ => (None, before == after),
        };
        rows.push(InvarianceRow { site: *site, kind: site.kind(), before: before.clone(), after, framing, equal });
    }
    Ok(rows)
}
