//! Lifts of a diagram to covering spaces.
//!
//! Degree 0: the preimage in `S_g x R` is a copy `K_s` of the link for every
//! integer `s`, where `K_s` starts at height `s`. A point with arc label `a`
//! on `K_s` sits at height `s + a`, so a base crossing with label `i` makes
//! the over strand of `K_s` cross the under strand of `K_{s+i}`. Only a finite
//! window of sheets is materialized; crossings whose partner sheet falls
//! outside are dropped and reported.
//!
//! Degree `k`: under `(x, z) -> (x, z^k)` the sheets are indexed by `Z_|k|`.
//! A base mark lifts to a mark only where the height crosses a multiple of
//! `|k|`; the other marks become ordinary arcs between neighbouring sheets.
//!
//! Lifted crossings keep the over/under role and sign of their base crossing:
//! the two strands meet at the same height, so the projection picture near
//! the crossing is the base picture.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CrossingId, MarkedGaussCode, Role, Sign, Symbol};
use crate::labels::LabeledDiagram;
use crate::text::{format_component, parse_component_line, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("component {component} has degree {degree}; use the degree-k lift")]
    NonzeroDegree { component: usize, degree: i64 },
    #[error("empty sheet window [{min}, {max}]")]
    EmptyWindow { min: i64, max: i64 },
    #[error("k must be nonzero")]
    ZeroK,
    #[error("component {component} has degree {degree}, expected {k}")]
    DegreeMismatch { component: usize, degree: i64, k: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SheetWindow {
    /// Sheets `min..=max` of the infinite cyclic cover.
    Range { min: i64, max: i64 },
    /// Sheets `Z_|k|` of the k-fold cover.
    Cyclic { k: i64 },
}

impl SheetWindow {
    pub fn sheets(&self) -> Vec<i64> {
        match *self {
            SheetWindow::Range { min, max } => (min..=max).collect(),
            SheetWindow::Cyclic { k } => (0..k.abs()).collect(),
        }
    }

    fn contains(&self, s: i64) -> bool {
        match *self {
            SheetWindow::Range { min, max } => (min..=max).contains(&s),
            SheetWindow::Cyclic { k } => (0..k.abs()).contains(&s),
        }
    }

    fn reduce(&self, s: i64) -> i64 {
        match *self {
            SheetWindow::Range { .. } => s,
            SheetWindow::Cyclic { k } => s.rem_euclid(k.abs()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedCrossing {
    pub id: CrossingId,
    pub base: CrossingId,
    pub over_sheet: i64,
    pub under_sheet: i64,
}

/// A lifted crossing cut off by the window: one of its sheets is outside.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCrossing {
    pub base: CrossingId,
    pub over_sheet: i64,
    pub under_sheet: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedComponent {
    pub sheet: i64,
    pub base_component: usize,
    pub symbols: Vec<Symbol>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringLinkCode {
    pub window: SheetWindow,
    pub components: Vec<LiftedComponent>,
    pub crossings: Vec<LiftedCrossing>,
    pub boundary: Vec<BoundaryCrossing>,
    pub base: LabeledDiagram,
}

impl CoveringLinkCode {
    /// All lifted components as one code, in sheet order, base points at 0.
    pub fn link(&self) -> MarkedGaussCode {
        MarkedGaussCode::new(self.components.iter().map(|c| c.symbols.clone()).collect())
    }

    pub fn components_on(&self, sheet: i64) -> impl Iterator<Item = &LiftedComponent> {
        self.components.iter().filter(move |c| c.sheet == sheet)
    }

    /// Text form: a `sheet <s>:` header before the components of each sheet.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self.window {
            SheetWindow::Range { min, max } => writeln!(out, "# window {} {}", min, max).unwrap(),
            SheetWindow::Cyclic { k } => writeln!(out, "# cyclic {}", k).unwrap(),
        }
        for b in &self.boundary {
            writeln!(out, "# boundary c{} over {} under {}", b.base, b.over_sheet, b.under_sheet).unwrap();
        }
        for s in self.window.sheets() {
            writeln!(out, "sheet {}:", s).unwrap();
            for c in self.components_on(s) {
                out.push_str(&format_component(&c.symbols, 0));
                out.push('\n');
            }
        }
        out
    }
}

/// Parses the text form back into `(sheet, component code)` pairs.
pub fn parse_sheets(text: &str) -> Result<Vec<(i64, MarkedGaussCode)>, ParseError> {
    let mut out: Vec<(i64, MarkedGaussCode)> = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let t = line.split('#').next().unwrap_or("").trim();
        if let Some(rest) = t.strip_prefix("sheet") {
            let num = rest.trim().strip_suffix(':').ok_or_else(|| ParseError {
                line: k + 1,
                column: line.len(),
                message: "expected ':' after sheet number".into(),
            })?;
            let s = num.trim().parse().map_err(|_| ParseError {
                line: k + 1,
                column: line.find(num.trim()).unwrap_or(0),
                message: format!("bad sheet number '{}'", num.trim()),
            })?;
            out.push((s, MarkedGaussCode::new(Vec::new())));
            continue;
        }
        if let Some((seq, base)) = parse_component_line(line, k + 1)? {
            let Some((_, code)) = out.last_mut() else {
                return Err(ParseError { line: k + 1, column: 0, message: "component before any sheet header".into() });
            };
            code.components.push(seq);
            code.base_points.push(base);
        }
    }
    Ok(out)
}

struct Builder<'a> {
    d: &'a LabeledDiagram,
    window: SheetWindow,
    ids: BTreeMap<(CrossingId, i64), CrossingId>,
    crossings: Vec<LiftedCrossing>,
    boundary: Vec<BoundaryCrossing>,
}

impl<'a> Builder<'a> {
    fn new(d: &'a LabeledDiagram, window: SheetWindow) -> Self {
        let mut b = Builder { d, window, ids: BTreeMap::new(), crossings: Vec::new(), boundary: Vec::new() };
        for (&c, &i) in &d.crossing_labels {
            for s in window.sheets() {
                let t = window.reduce(s + i);
                if window.contains(t) {
                    let id = b.crossings.len() as CrossingId + 1;
                    b.ids.insert((c, s), id);
                    b.crossings.push(LiftedCrossing { id, base: c, over_sheet: s, under_sheet: t });
                } else {
                    b.boundary.push(BoundaryCrossing { base: c, over_sheet: s, under_sheet: t });
                }
                let u = window.reduce(s - i);
                if !window.contains(u) {
                    b.boundary.push(BoundaryCrossing { base: c, over_sheet: u, under_sheet: s });
                }
            }
        }
        b
    }

    /// Lifted pass for a base pass met on `sheet`, if its partner is kept.
    fn pass(&self, sheet: i64, id: CrossingId, role: Role, sign: Sign) -> Option<Symbol> {
        let i = self.d.crossing_labels[&id];
        let over_sheet = match role {
            Role::Over => sheet,
            Role::Under => self.window.reduce(sheet - i),
        };
        self.ids.get(&(id, over_sheet)).map(|&lid| Symbol::Pass { id: lid, role, sign })
    }

    fn component(&self, sheet: i64, c: usize, k: i64) -> Vec<Symbol> {
        let code = &self.d.code;
        let m = k.abs();
        let mut out = Vec::new();
        for i in code.traversal(c) {
            match code.components[c][i] {
                Symbol::Pass { id, role, sign } => out.extend(self.pass(sheet, id, role, sign)),
                Symbol::Mark(dir) if k != 0 => {
                    let level = (sheet + self.d.position_labels[c][i]).rem_euclid(m);
                    let wraps = match dir {
                        Sign::Pos => level == m - 1,
                        Sign::Neg => level == 0,
                    };
                    if wraps {
                        let lifted = if k > 0 { dir } else { dir.flip() };
                        out.push(Symbol::Mark(lifted));
                    }
                }
                Symbol::Mark(_) => {}
            }
        }
        out
    }

    fn finish(self, k: i64) -> CoveringLinkCode {
        let mut components = Vec::new();
        for s in self.window.sheets() {
            for c in 0..self.d.code.num_components() {
                components.push(LiftedComponent { sheet: s, base_component: c, symbols: self.component(s, c, k) });
            }
        }
        CoveringLinkCode {
            window: self.window,
            components,
            crossings: self.crossings,
            boundary: self.boundary,
            base: self.d.clone(),
        }
    }
}

/// Lift of a degree-0 diagram to `S_g x R`, sheets `s_min..=s_max`.
pub fn lift_degree0(d: &LabeledDiagram, s_min: i64, s_max: i64) -> Result<CoveringLinkCode, LiftError> {
    if let Some((component, &degree)) = d.degrees.iter().enumerate().find(|(_, &g)| g != 0) {
        return Err(LiftError::NonzeroDegree { component, degree });
    }
    if s_min > s_max {
        return Err(LiftError::EmptyWindow { min: s_min, max: s_max });
    }
    Ok(Builder::new(d, SheetWindow::Range { min: s_min, max: s_max }).finish(0))
}

/// Lift along the k-fold cover of a diagram whose components all have
/// degree `k`.
pub fn lift_degreek(d: &LabeledDiagram, k: i64) -> Result<CoveringLinkCode, LiftError> {
    if k == 0 {
        return Err(LiftError::ZeroK);
    }
    if let Some((component, &degree)) = d.degrees.iter().enumerate().find(|(_, &g)| g != k) {
        return Err(LiftError::DegreeMismatch { component, degree, k });
    }
    Ok(Builder::new(d, SheetWindow::Cyclic { k }).finish(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::compute_labels;
    use crate::text::parse_code;

    fn labeled(s: &str) -> LabeledDiagram {
        compute_labels(&parse_code(s).unwrap()).unwrap()
    }

    #[test]
    fn unknot_copies() {
        let l = lift_degree0(&labeled("*"), 0, 2).unwrap();
        assert_eq!(l.components.len(), 3);
        assert!(l.crossings.is_empty());
        assert_eq!(l.link().num_components(), 3);
    }

    #[test]
    fn label_zero_stays_on_sheet() {
        let l = lift_degree0(&labeled("*O1+ U1+"), 0, 1).unwrap();
        let pairs: Vec<_> = l.crossings.iter().map(|c| (c.over_sheet, c.under_sheet)).collect();
        assert_eq!(pairs, vec![(0, 0), (1, 1)]);
        assert!(l.boundary.is_empty());
    }

    #[test]
    fn label_two_pairs_sheets() {
        let d = labeled("*O1+ M+ M+ U1+ M- M-");
        assert_eq!(d.crossing_labels[&1], -2);
        let d = labeled("*U1+ M+ M+ O1+ M- M-");
        assert_eq!(d.crossing_labels[&1], 2);
        let l = lift_degree0(&d, 0, 3).unwrap();
        let pairs: Vec<_> = l.crossings.iter().map(|c| (c.over_sheet, c.under_sheet)).collect();
        assert_eq!(pairs, vec![(0, 2), (1, 3)]);
        assert_eq!(l.boundary.len(), 4);
        assert!(l.link().check().is_ok());
    }

    #[test]
    fn nonzero_degree_rejected() {
        assert_eq!(
            lift_degree0(&labeled("*M+"), 0, 1).unwrap_err(),
            LiftError::NonzeroDegree { component: 0, degree: 1 }
        );
        assert_eq!(lift_degreek(&labeled("*M+"), 0).unwrap_err(), LiftError::ZeroK);
        assert!(matches!(lift_degreek(&labeled("*M+ M+"), 3), Err(LiftError::DegreeMismatch { .. })));
    }

    #[test]
    fn one_fold_cover_is_identity() {
        let d = labeled("*M+");
        let l = lift_degreek(&d, 1).unwrap();
        assert_eq!(l.link(), d.code);
    }

    #[test]
    fn two_fold_cover_of_degree_two() {
        let l = lift_degreek(&labeled("*M+ M+"), 2).unwrap();
        assert_eq!(l.components.len(), 2);
        for c in &l.components {
            assert_eq!(c.symbols, vec![Symbol::Mark(Sign::Pos)]);
        }
    }

    #[test]
    fn text_round_trip() {
        let l = lift_degree0(&labeled("*U1+ M+ O1+ M-"), -1, 1).unwrap();
        let text = l.to_text();
        let parsed = parse_sheets(&text).unwrap();
        assert_eq!(parsed.iter().map(|(s, _)| *s).collect::<Vec<_>>(), vec![-1, 0, 1]);
        let rebuilt: Vec<Vec<Symbol>> = parsed.into_iter().flat_map(|(_, c)| c.components).collect();
        assert_eq!(rebuilt, l.link().components);
    }
}
