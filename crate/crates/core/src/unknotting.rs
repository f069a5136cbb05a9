//! Crossing changes and an upper bound on the unknotting number of planar
//! knot diagrams with marks.
//!
//! The bound runs two phases. First every mark is slid along the knot to a
//! chosen gap with Slide4 moves; a mark may only slide across a pass in one
//! configuration, so a blocked pass is changed first. Then, reading from
//! just after the mark block, every crossing first met on its under pass is
//! changed, leaving a descending diagram. The bound is the least total over
//! all base points and target gaps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CrossingId, InvalidCode, MarkedGaussCode, Position, Role, Symbol};
use crate::moves::{apply, rewrite::slide_allowed, MoveError, MoveSite};
use crate::planarity::diagram_genus;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnknotError {
    #[error("expected a single component, found {0}")]
    MultiComponent(usize),
    #[error("diagram is not planar (genus {0})")]
    NonPlanar(usize),
    #[error("no crossing {0}")]
    UnknownCrossing(CrossingId),
    #[error("target gap {gap} out of range for {len} symbols")]
    TargetOutOfRange { gap: usize, len: usize },
    #[error("marks must form one block ending at the base point")]
    MarksNotConsolidated,
    #[error(transparent)]
    Invalid(#[from] InvalidCode),
    #[error(transparent)]
    Move(#[from] MoveError),
}

/// Swaps the over and under passes of a crossing. The sign flips with them,
/// since the writhe of a crossing changes when its strands trade places.
pub fn crossing_change(code: &MarkedGaussCode, id: CrossingId) -> Result<MarkedGaussCode, UnknotError> {
    let mut out = code.clone();
    let mut found = false;
    for seq in &mut out.components {
        for s in seq.iter_mut() {
            if let Symbol::Pass { id: i, role, sign } = s {
                if *i == id {
                    *role = role.flip();
                    *sign = sign.flip();
                    found = true;
                }
            }
        }
    }
    if found {
        Ok(out)
    } else {
        Err(UnknotError::UnknownCrossing(id))
    }
}

fn knot_checks(code: &MarkedGaussCode) -> Result<(), UnknotError> {
    code.check()?;
    if code.num_components() != 1 {
        return Err(UnknotError::MultiComponent(code.num_components()));
    }
    match diagram_genus(code) {
        0 => Ok(()),
        g => Err(UnknotError::NonPlanar(g)),
    }
}

/// Moves the mark at `at` one step forward or backward with Slide4,
/// changing the crossing first when the slide is blocked. The code must
/// have its base point at index 0.
fn slide(code: &mut MarkedGaussCode, at: usize, forward: bool, changes: &mut Vec<CrossingId>) -> Result<(), UnknotError> {
    let seq = &code.components[0];
    let other = if forward { at + 1 } else { at - 1 };
    let Symbol::Mark(dir) = seq[at] else { unreachable!("caller passes a mark") };
    if let Symbol::Pass { id, role, .. } = seq[other] {
        if !slide_allowed(!forward, role, dir) {
            *code = crossing_change(code, id)?;
            changes.push(id);
        }
    }
    let first = at.min(other);
    *code = apply(code, &MoveSite::Slide4 { at: Position::new(0, first) })?.after;
    Ok(())
}

/// Slides every mark to the gap `target` (before the symbol at linear index
/// `target`, counted from the base point). Marks before the target move
/// forward and marks after it move backward; neither passes the base point.
/// Returns the new code, with base point at index 0, and the changes made.
pub fn collect_marks(code: &MarkedGaussCode, target: usize) -> Result<(MarkedGaussCode, Vec<CrossingId>), UnknotError> {
    knot_checks(code)?;
    let mut code = code.normalized();
    let len = code.components[0].len();
    if target > len {
        return Err(UnknotError::TargetOutOfRange { gap: target, len });
    }
    let mut changes = Vec::new();
    let is_mark = |c: &MarkedGaussCode, i: usize| c.components[0][i].is_mark();
    // Forward: nearest mark first, each stopping at the growing block.
    let mut stop = target;
    for i in (0..target).rev() {
        if is_mark(&code, i) {
            let mut at = i;
            while at + 1 < stop {
                slide(&mut code, at, true, &mut changes)?;
                at += 1;
            }
            stop = at;
        }
    }
    let mut stop = target;
    for i in target..len {
        if is_mark(&code, i) {
            let mut at = i;
            while at > stop {
                slide(&mut code, at, false, &mut changes)?;
                at -= 1;
            }
            stop = at + 1;
        }
    }
    Ok((code, changes))
}

/// Whether the marks form one contiguous block at the end of the traversal.
pub fn marks_consolidated(code: &MarkedGaussCode) -> bool {
    code.components.iter().enumerate().all(|(c, seq)| {
        let order: Vec<bool> = code.traversal(c).map(|i| seq[i].is_mark()).collect();
        let k = order.iter().filter(|&&m| m).count();
        order[order.len() - k..].iter().all(|&m| m)
    })
}

/// Every crossing is first met on its over pass when reading from the base
/// point.
pub fn is_descending(code: &MarkedGaussCode) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    for c in 0..code.num_components() {
        for i in code.traversal(c) {
            if let Symbol::Pass { id, role, .. } = code.components[c][i] {
                if seen.insert(id) && role == Role::Under {
                    return false;
                }
            }
        }
    }
    true
}

/// Changes every crossing first met on its under pass.
pub fn make_descending(code: &MarkedGaussCode) -> Result<(MarkedGaussCode, Vec<CrossingId>), UnknotError> {
    knot_checks(code)?;
    if !marks_consolidated(code) {
        return Err(UnknotError::MarksNotConsolidated);
    }
    let mut out = code.clone();
    let mut changes = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for i in code.traversal(0) {
        if let Symbol::Pass { id, role, .. } = code.components[0][i] {
            if seen.insert(id) && role == Role::Under {
                out = crossing_change(&out, id)?;
                changes.push(id);
            }
        }
    }
    Ok((out, changes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknottingReport {
    pub input: MarkedGaussCode,
    /// Index of the input symbol the traversal started from.
    pub base_point: usize,
    /// Gap, counted from that base point, the marks were collected at.
    pub target_gap: usize,
    pub phase1_changes: Vec<CrossingId>,
    pub phase2_changes: Vec<CrossingId>,
    pub total: usize,
    pub final_code: MarkedGaussCode,
}

/// Runs both phases for one base point and target gap.
pub fn pipeline(code: &MarkedGaussCode, base_point: usize, target_gap: usize) -> Result<UnknottingReport, UnknotError> {
    knot_checks(code)?;
    let len = code.components[0].len();
    let mut rotated = code.clone();
    rotated.base_points[0] = if len == 0 { 0 } else { base_point % len };
    let (collected, phase1_changes) = collect_marks(&rotated, target_gap)?;
    // Start reading right after the mark block.
    let marks = collected.num_marks();
    let block_end = if marks == 0 { 0 } else { (0..len).rev().find(|&i| collected.components[0][i].is_mark()).unwrap() + 1 };
    let mut start = collected;
    start.base_points[0] = if len == 0 { 0 } else { block_end % len };
    let (final_code, phase2_changes) = make_descending(&start)?;
    Ok(UnknottingReport {
        input: code.clone(),
        base_point,
        target_gap,
        total: phase1_changes.len() + phase2_changes.len(),
        phase1_changes,
        phase2_changes,
        final_code,
    })
}

/// The pipeline run with the fewest changes over every base point and
/// target gap; ties go to the smallest `(base_point, target_gap)`.
pub fn unknotting_report(code: &MarkedGaussCode) -> Result<UnknottingReport, UnknotError> {
    knot_checks(code)?;
    let len = code.components[0].len();
    let choices: Vec<(usize, usize)> = (0..len.max(1)).flat_map(|b| (0..=len).map(move |t| (b, t))).collect();
    let runs: Result<Vec<UnknottingReport>, UnknotError> =
        choices.par_iter().map(|&(b, t)| pipeline(code, b, t)).collect();
    Ok(runs?.into_iter().min_by_key(|r| (r.total, r.base_point, r.target_gap)).expect("at least one choice"))
}

/// An upper bound on the number of crossing changes needed to unknot.
pub fn unknotting_bound(code: &MarkedGaussCode) -> Result<usize, UnknotError> {
    Ok(unknotting_report(code)?.total)
}
