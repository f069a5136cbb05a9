//! The move calculus on marked Gauss codes.
//!
//! Classical moves R1, R2, R3 act on Gauss codes as in virtual knot theory
//! (virtual crossings are never stored). The two mark moves are:
//!
//! * `Slide4`: a mark trades places with an adjacent crossing pass. Seen in
//!   `S_g x R`, the strand near the mark sits at the top (or bottom) of its
//!   height interval, so the slide is only an isotopy when the pass is on the
//!   matching side, and afterwards the crossing has the opposite over/under
//!   role and sign. The crossing label goes from `i` to `-1 - i`.
//! * `Cancel5`: two adjacent marks of opposite direction cancel, or are
//!   created.
//!
//! Moves that reorder or remove a pair of symbols never straddle a base point
//! when applied through [`apply`], which keeps the labels of untouched
//! crossings fixed.

pub(crate) mod rewrite;
pub mod search;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CrossingId, InvalidCode, MarkedGaussCode, Position, Role, Sign, Symbol};
use crate::labels::compute_labels;

pub(crate) use rewrite::{rewrite, Scope};
pub use search::{canonical_form, equivalent_bounded, Certificate, CertificateStep, Equivalence, SearchError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    #[serde(rename = "R1+")]
    R1Add,
    #[serde(rename = "R1-")]
    R1Remove,
    #[serde(rename = "R2+")]
    R2Add,
    #[serde(rename = "R2-")]
    R2Remove,
    R3,
    Slide4,
    #[serde(rename = "Cancel5+")]
    Cancel5Add,
    #[serde(rename = "Cancel5-")]
    Cancel5Remove,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::R1Add,
        MoveKind::R1Remove,
        MoveKind::R2Add,
        MoveKind::R2Remove,
        MoveKind::R3,
        MoveKind::Slide4,
        MoveKind::Cancel5Add,
        MoveKind::Cancel5Remove,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R1Add => "R1+",
            MoveKind::R1Remove => "R1-",
            MoveKind::R2Add => "R2+",
            MoveKind::R2Remove => "R2-",
            MoveKind::R3 => "R3",
            MoveKind::Slide4 => "Slide4",
            MoveKind::Cancel5Add => "Cancel5+",
            MoveKind::Cancel5Remove => "Cancel5-",
        }
    }

    pub fn is_insertion(self) -> bool {
        matches!(self, MoveKind::R1Add | MoveKind::R2Add | MoveKind::Cancel5Add)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveKind {
    type Err = String;

    /// Accepts the display names; a bare `Cancel5` means removal.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Cancel5" {
            return Ok(MoveKind::Cancel5Remove);
        }
        MoveKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| format!("unknown move kind '{}'", s))
    }
}

/// Where and how to apply a move. Pair sites name the first symbol of an
/// adjacent pair `(at, next(at))`; insertion sites name a gap, the new
/// symbols landing right before the symbol at that index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum MoveSite {
    /// Insert a kink: two passes of a new crossing, `first` role first.
    #[serde(rename = "R1+")]
    R1Add { gap: Position, first: Role, sign: Sign },
    #[serde(rename = "R1-")]
    R1Remove { at: Position },
    /// Push the strand at `over_gap` over the strand at `under_gap`, creating
    /// crossings `a` (sign `sign`) then `b` along the over strand. With
    /// `parallel` the under strand meets them in the same order. When both
    /// gaps coincide, `under_first` puts the under pair ahead of the over pair.
    #[serde(rename = "R2+")]
    R2Add {
        over_gap: Position,
        under_gap: Position,
        sign: Sign,
        parallel: bool,
        #[serde(default)]
        under_first: bool,
    },
    #[serde(rename = "R2-")]
    R2Remove { over: Position, under: Position },
    /// `top` holds two over passes, `middle` one under and one over pass,
    /// `bottom` two under passes.
    R3 { top: Position, middle: Position, bottom: Position },
    Slide4 { at: Position },
    #[serde(rename = "Cancel5+")]
    Cancel5Add { gap: Position, first: Sign },
    #[serde(rename = "Cancel5-")]
    Cancel5Remove { at: Position },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Add { .. } => MoveKind::R1Add,
            MoveSite::R1Remove { .. } => MoveKind::R1Remove,
            MoveSite::R2Add { .. } => MoveKind::R2Add,
            MoveSite::R2Remove { .. } => MoveKind::R2Remove,
            MoveSite::R3 { .. } => MoveKind::R3,
            MoveSite::Slide4 { .. } => MoveKind::Slide4,
            MoveSite::Cancel5Add { .. } => MoveKind::Cancel5Add,
            MoveSite::Cancel5Remove { .. } => MoveKind::Cancel5Remove,
        }
    }

    /// Positions named by the site, gaps included.
    pub fn positions(&self) -> Vec<Position> {
        match *self {
            MoveSite::R1Add { gap, .. } | MoveSite::Cancel5Add { gap, .. } => vec![gap],
            MoveSite::R1Remove { at } | MoveSite::Slide4 { at } | MoveSite::Cancel5Remove { at } => vec![at],
            MoveSite::R2Add { over_gap, under_gap, .. } => vec![over_gap, under_gap],
            MoveSite::R2Remove { over, under } => vec![over, under],
            MoveSite::R3 { top, middle, bottom } => vec![top, middle, bottom],
        }
    }
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.positions().iter().map(|p| p.to_string()).collect();
        write!(f, "{} @ {}", self.kind(), ps.join(","))?;
        match *self {
            MoveSite::R1Add { first, sign, .. } => write!(f, " {:?}{}", first, sign.char()),
            MoveSite::R2Add { sign, parallel, under_first, .. } => {
                write!(f, " {}{}", sign.char(), if parallel { " parallel" } else { " antiparallel" })?;
                if under_first {
                    f.write_str(" under-first")?;
                }
                Ok(())
            }
            MoveSite::Cancel5Add { first, .. } => write!(f, " M{}", first.char()),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("site does not match at {position}: {reason}")]
    Mismatch { position: Position, reason: String },
    #[error("pair at {0} straddles the base point")]
    StraddlesBasePoint(Position),
    #[error(transparent)]
    Invalid(#[from] InvalidCode),
    #[error("label bookkeeping violated: {0}")]
    Bookkeeping(String),
}

/// The label relation a move is expected to satisfy, with the values seen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "relation")]
pub enum LabelRelation {
    /// R1: the kink crossing is labeled 0.
    Kink { label: i64 },
    /// R2: both bigon crossings carry `i`, and `j` is the label the same
    /// pair of arcs gets with the other arc on top; `i + j = 0`.
    Bigon { labels: (i64, i64), j: i64 },
    /// R3: labels of the top-middle, middle-bottom and top-bottom crossings;
    /// `i + j - k = 0`.
    Triangle { i: i64, j: i64, k: i64 },
    /// Slide4: label of the crossing before and after; `i + j = -1`.
    Slide { i: i64, j: i64 },
    /// Cancel5: nothing changes.
    Cancel,
}

impl LabelRelation {
    pub fn holds(&self) -> bool {
        match *self {
            LabelRelation::Kink { label } => label == 0,
            LabelRelation::Bigon { labels: (i, i2), j } => i == i2 && i + j == 0,
            LabelRelation::Triangle { i, j, k } => i + j - k == 0,
            LabelRelation::Slide { i, j } => i + j == -1,
            LabelRelation::Cancel => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub before: MarkedGaussCode,
    pub after: MarkedGaussCode,
    pub site: MoveSite,
    /// Crossings created, deleted or relabeled: `(old, new)`.
    pub label_delta: BTreeMap<CrossingId, (Option<i64>, Option<i64>)>,
    pub relation: LabelRelation,
    /// Site undoing the move, addressed in `after`.
    pub inverse: MoveSite,
}

/// Applies a move and checks its label bookkeeping.
pub fn apply(code: &MarkedGaussCode, site: &MoveSite) -> Result<MoveTrace, MoveError> {
    code.check()?;
    let (after, inverse) = rewrite(code, site, Scope::Strict)?;
    let lb = compute_labels(code)?;
    let la = compute_labels(&after)?;

    let mut label_delta = BTreeMap::new();
    for id in lb.crossing_labels.keys().chain(la.crossing_labels.keys()) {
        let old = lb.crossing_labels.get(id).copied();
        let new = la.crossing_labels.get(id).copied();
        if old != new {
            label_delta.insert(*id, (old, new));
        }
    }
    let created: Vec<_> = label_delta.iter().filter(|(_, (o, _))| o.is_none()).map(|(id, _)| *id).collect();
    let deleted: Vec<_> = label_delta.iter().filter(|(_, (_, n))| n.is_none()).map(|(id, _)| *id).collect();
    let relabeled: Vec<_> =
        label_delta.iter().filter(|(_, (o, n))| o.is_some() && n.is_some()).map(|(id, _)| *id).collect();
    let fail = |what: &str| MoveError::Bookkeeping(format!("{} at {}: delta {:?}", what, site, label_delta));

    let bigon = |d: &crate::labels::LabeledDiagram, ids: &[CrossingId]| -> Result<LabelRelation, MoveError> {
        let cs = d.code.crossings();
        let a = cs[&ids[0]];
        let (over, under) = (d.label_at(a.over), d.label_at(a.under));
        Ok(LabelRelation::Bigon { labels: (d.crossing_labels[&ids[0]], d.crossing_labels[&ids[1]]), j: under - over })
    };

    let relation = match site.kind() {
        MoveKind::R1Add => {
            if created.len() != 1 || label_delta.len() != 1 {
                return Err(fail("R1+ must create exactly one crossing"));
            }
            LabelRelation::Kink { label: la.crossing_labels[&created[0]] }
        }
        MoveKind::R1Remove => {
            if deleted.len() != 1 || label_delta.len() != 1 {
                return Err(fail("R1- must delete exactly one crossing"));
            }
            LabelRelation::Kink { label: lb.crossing_labels[&deleted[0]] }
        }
        MoveKind::R2Add => {
            if created.len() != 2 || label_delta.len() != 2 {
                return Err(fail("R2+ must create exactly two crossings"));
            }
            bigon(&la, &created)?
        }
        MoveKind::R2Remove => {
            if deleted.len() != 2 || label_delta.len() != 2 {
                return Err(fail("R2- must delete exactly two crossings"));
            }
            bigon(&lb, &deleted)?
        }
        MoveKind::R3 => {
            if !label_delta.is_empty() {
                return Err(fail("R3 must not relabel crossings"));
            }
            let MoveSite::R3 { top, middle, bottom } = *site else { unreachable!() };
            let tri = rewrite::triangle(code, top, middle, bottom)?;
            let l = |c: CrossingId| lb.crossing_labels[&c];
            LabelRelation::Triangle { i: l(tri.tm), j: l(tri.mb), k: l(tri.tb) }
        }
        MoveKind::Slide4 => {
            if relabeled.len() != 1 || label_delta.len() != 1 {
                return Err(fail("Slide4 must relabel exactly one crossing"));
            }
            let (i, j) = label_delta[&relabeled[0]];
            LabelRelation::Slide { i: i.unwrap_or_default(), j: j.unwrap_or_default() }
        }
        MoveKind::Cancel5Add | MoveKind::Cancel5Remove => {
            if !label_delta.is_empty() {
                return Err(fail("Cancel5 must not relabel crossings"));
            }
            LabelRelation::Cancel
        }
    };
    if !relation.holds() {
        return Err(MoveError::Bookkeeping(format!("{:?} fails at {}", relation, site)));
    }
    Ok(MoveTrace { before: code.clone(), after, site: *site, label_delta, relation, inverse })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SiteOptions {
    /// Enumerate every orientation/sign variant of insertion moves instead of
    /// one canonical variant per gap.
    pub all_variants: bool,
    /// Allow pair sites that straddle a base point.
    pub ignore_base_points: bool,
}

/// Applicable sites of the requested kinds, one canonical variant per gap for
/// insertions.
pub fn enumerate_sites(code: &MarkedGaussCode, kinds: &[MoveKind]) -> Vec<MoveSite> {
    enumerate_sites_with(code, kinds, SiteOptions::default())
}

fn gaps(code: &MarkedGaussCode) -> Vec<Position> {
    let mut out = Vec::new();
    for (c, seq) in code.components.iter().enumerate() {
        for i in 0..seq.len().max(1) {
            out.push(Position::new(c, i));
        }
    }
    out
}

fn pair_starts(code: &MarkedGaussCode, strict: bool) -> Vec<(Position, Position)> {
    let mut out = Vec::new();
    for (c, seq) in code.components.iter().enumerate() {
        if seq.len() < 2 {
            continue;
        }
        for i in 0..seq.len() {
            let p = Position::new(c, i);
            if strict && rewrite::straddles(code, p) {
                continue;
            }
            out.push((p, Position::new(c, (i + 1) % seq.len())));
        }
    }
    out
}

pub fn enumerate_sites_with(code: &MarkedGaussCode, kinds: &[MoveKind], opts: SiteOptions) -> Vec<MoveSite> {
    let strict = !opts.ignore_base_points;
    let sym = |p: Position| code.components[p.component][p.index];
    let pairs = pair_starts(code, strict);
    let crossings = code.crossings();
    let mut out = Vec::new();
    let signs: &[Sign] = if opts.all_variants { &[Sign::Pos, Sign::Neg] } else { &[Sign::Pos] };
    let roles: &[Role] = if opts.all_variants { &[Role::Over, Role::Under] } else { &[Role::Over] };
    let bools: &[bool] = if opts.all_variants { &[true, false] } else { &[true] };

    for &kind in kinds {
        match kind {
            MoveKind::R1Add => {
                for gap in gaps(code) {
                    for &first in roles {
                        for &sign in signs {
                            out.push(MoveSite::R1Add { gap, first, sign });
                        }
                    }
                }
            }
            MoveKind::R1Remove => {
                for &(p, q) in &pairs {
                    if let (Some(a), Some(b)) = (sym(p).crossing(), sym(q).crossing()) {
                        if a == b {
                            out.push(MoveSite::R1Remove { at: p });
                        }
                    }
                }
            }
            MoveKind::R2Add => {
                let gs = gaps(code);
                for &over_gap in &gs {
                    for &under_gap in &gs {
                        for &sign in signs {
                            for &parallel in bools {
                                let orders: &[bool] = if over_gap == under_gap { &[false, true] } else { &[false] };
                                for &under_first in orders {
                                    out.push(MoveSite::R2Add { over_gap, under_gap, sign, parallel, under_first });
                                }
                            }
                        }
                    }
                }
            }
            MoveKind::R2Remove => {
                for &(p, q) in &pairs {
                    let (Symbol::Pass { id: a, role: Role::Over, sign: sa }, Symbol::Pass { id: b, role: Role::Over, sign: sb }) =
                        (sym(p), sym(q))
                    else {
                        continue;
                    };
                    if a == b || sa == sb {
                        continue;
                    }
                    let (ua, ub) = (crossings[&a].under, crossings[&b].under);
                    if ua.component != ub.component {
                        continue;
                    }
                    for (x, y) in [(ua, ub), (ub, ua)] {
                        if code.next_index(x) == y.index && !(strict && rewrite::straddles(code, x)) {
                            out.push(MoveSite::R2Remove { over: p, under: x });
                        }
                    }
                }
            }
            MoveKind::R3 => {
                for &(p, q) in &pairs {
                    let (Symbol::Pass { id: a, role: Role::Over, .. }, Symbol::Pass { id: b, role: Role::Over, .. }) =
                        (sym(p), sym(q))
                    else {
                        continue;
                    };
                    if a == b {
                        continue;
                    }
                    for tm in [a, b] {
                        let u = crossings[&tm].under;
                        if code.components[u.component].len() < 2 {
                            continue;
                        }
                        let prev = Position::new(u.component, code.prev_index(u));
                        for middle in [u, prev] {
                            for bottom in pairs.iter().map(|&(b0, _)| b0) {
                                let site = MoveSite::R3 { top: p, middle, bottom };
                                if rewrite(code, &site, if strict { Scope::Strict } else { Scope::Free }).is_ok() {
                                    out.push(site);
                                }
                            }
                        }
                    }
                }
            }
            MoveKind::Slide4 => {
                for &(p, q) in &pairs {
                    let ok = match (sym(p), sym(q)) {
                        (Symbol::Pass { role, .. }, Symbol::Mark(d)) => rewrite::slide_allowed(true, role, d),
                        (Symbol::Mark(d), Symbol::Pass { role, .. }) => rewrite::slide_allowed(false, role, d),
                        _ => false,
                    };
                    if ok {
                        out.push(MoveSite::Slide4 { at: p });
                    }
                }
            }
            MoveKind::Cancel5Add => {
                for gap in gaps(code) {
                    for &first in signs {
                        out.push(MoveSite::Cancel5Add { gap, first });
                    }
                }
            }
            MoveKind::Cancel5Remove => {
                for &(p, q) in &pairs {
                    if let (Symbol::Mark(d), Symbol::Mark(e)) = (sym(p), sym(q)) {
                        if d != e {
                            out.push(MoveSite::Cancel5Remove { at: p });
                        }
                    }
                }
            }
        }
    }
    out
}
