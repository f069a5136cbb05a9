//! Marked Gauss codes: cyclic per-component sequences of crossing passes and
//! double-line marks.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type CrossingId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

/// `+1` or `-1`. Used both for the local writhe of a crossing and for the
/// direction of a mark.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn char(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    /// One of the two passes through a classical crossing.
    Pass { id: CrossingId, role: Role, sign: Sign },
    /// A double line. `Pos` means the arc label goes up by one across it.
    Mark(Sign),
}

impl Symbol {
    pub fn over(id: CrossingId, sign: Sign) -> Symbol {
        Symbol::Pass { id, role: Role::Over, sign }
    }

    pub fn under(id: CrossingId, sign: Sign) -> Symbol {
        Symbol::Pass { id, role: Role::Under, sign }
    }

    pub fn is_mark(&self) -> bool {
        matches!(self, Symbol::Mark(_))
    }

    pub fn crossing(&self) -> Option<CrossingId> {
        match self {
            Symbol::Pass { id, .. } => Some(*id),
            Symbol::Mark(_) => None,
        }
    }

    pub fn mark_dir(&self) -> Option<Sign> {
        match self {
            Symbol::Mark(d) => Some(*d),
            Symbol::Pass { .. } => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Pass { id, role, sign } => {
                let r = if *role == Role::Over { 'O' } else { 'U' };
                write!(f, "{}{}{}", r, id, sign.char())
            }
            Symbol::Mark(d) => write!(f, "M{}", d.char()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub component: usize,
    pub index: usize,
}

impl Position {
    pub fn new(component: usize, index: usize) -> Self {
        Position { component, index }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.component, self.index)
    }
}

/// Where the two passes of a crossing sit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingPasses {
    pub over: Position,
    pub under: Position,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Violation {
    /// The crossing occurs only once.
    Unpaired(CrossingId),
    /// The crossing occurs more than twice.
    TooManyPasses(CrossingId, usize),
    /// Both passes carry the same role.
    SameRole(CrossingId, Role),
    SignMismatch(CrossingId),
    BasePointOutOfRange { component: usize, base: usize, len: usize },
    BasePointCount { components: usize, base_points: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unpaired(c) => write!(f, "crossing c{} unpaired", c),
            Violation::TooManyPasses(c, n) => write!(f, "crossing c{} occurs {} times", c, n),
            Violation::SameRole(c, r) => write!(f, "crossing c{} has two {:?} passes", c, r),
            Violation::SignMismatch(c) => write!(f, "crossing c{} has passes with different signs", c),
            Violation::BasePointOutOfRange { component, base, len } => write!(
                f,
                "base point {} out of range for component {} of length {}",
                base, component, len
            ),
            Violation::BasePointCount { components, base_points } => write!(
                f,
                "{} base points given for {} components",
                base_points, components
            ),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid code: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InvalidCode(pub Vec<Violation>);

/// A diagram of a link in `S_g x S^1`, one cyclic symbol sequence per
/// component. Each component has a base point: the traversal starts right
/// before the symbol at that index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedGaussCode {
    pub components: Vec<Vec<Symbol>>,
    pub base_points: Vec<usize>,
}

impl MarkedGaussCode {
    /// Base points default to position 0 of each component.
    pub fn new(components: Vec<Vec<Symbol>>) -> Self {
        let base_points = vec![0; components.len()];
        MarkedGaussCode { components, base_points }
    }

    pub fn with_base_points(components: Vec<Vec<Symbol>>, base_points: Vec<usize>) -> Self {
        MarkedGaussCode { components, base_points }
    }

    pub fn unknot() -> Self {
        Self::new(vec![vec![]])
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.components.iter().map(|c| c.len()).sum()
    }

    pub fn symbol(&self, p: Position) -> Option<&Symbol> {
        self.components.get(p.component)?.get(p.index)
    }

    pub fn crossing_ids(&self) -> Vec<CrossingId> {
        let mut ids: Vec<_> = self.symbols().filter_map(|(_, s)| s.crossing()).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    pub fn num_crossings(&self) -> usize {
        self.crossing_ids().len()
    }

    pub fn num_marks(&self) -> usize {
        self.symbols().filter(|(_, s)| s.is_mark()).count()
    }

    pub fn next_crossing_id(&self) -> CrossingId {
        self.crossing_ids().last().map_or(1, |c| c + 1)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (Position, &Symbol)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(c, seq)| seq.iter().enumerate().map(move |(i, s)| (Position::new(c, i), s)))
    }

    /// Indices of a component in traversal order, starting at its base point.
    pub fn traversal(&self, component: usize) -> impl Iterator<Item = usize> + '_ {
        let len = self.components[component].len();
        let base = if len == 0 { 0 } else { self.base_points[component] % len };
        (0..len).map(move |k| (base + k) % len)
    }

    pub fn next_index(&self, p: Position) -> usize {
        (p.index + 1) % self.components[p.component].len()
    }

    pub fn prev_index(&self, p: Position) -> usize {
        let len = self.components[p.component].len();
        (p.index + len - 1) % len
    }

    /// Positions of both passes of every crossing. Assumes a valid code.
    pub fn crossings(&self) -> BTreeMap<CrossingId, CrossingPasses> {
        let mut over = BTreeMap::new();
        let mut under = BTreeMap::new();
        for (p, s) in self.symbols() {
            if let Symbol::Pass { id, role, sign } = *s {
                match role {
                    Role::Over => over.insert(id, (p, sign)),
                    Role::Under => under.insert(id, (p, sign)),
                };
            }
        }
        over.into_iter()
            .filter_map(|(id, (o, sign))| under.get(&id).map(|&(u, _)| (id, CrossingPasses { over: o, under: u, sign })))
            .collect()
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate(self)
    }

    pub fn check(&self) -> Result<(), InvalidCode> {
        let v = validate(self);
        if v.is_empty() {
            Ok(())
        } else {
            Err(InvalidCode(v))
        }
    }

    /// Rotate every component so that its base point is at index 0.
    pub fn normalized(&self) -> MarkedGaussCode {
        let components = (0..self.components.len())
            .map(|c| self.traversal(c).map(|i| self.components[c][i]).collect())
            .collect();
        MarkedGaussCode::new(components)
    }

    /// Per-component sum of mark directions.
    pub fn degrees(&self) -> Vec<i64> {
        self.components
            .iter()
            .map(|seq| seq.iter().filter_map(|s| s.mark_dir()).map(Sign::value).sum())
            .collect()
    }
}

/// Checks the pairing and base-point invariants, reporting every violation.
pub fn validate(code: &MarkedGaussCode) -> Vec<Violation> {
    let mut out = Vec::new();
    if code.base_points.len() != code.components.len() {
        out.push(Violation::BasePointCount {
            components: code.components.len(),
            base_points: code.base_points.len(),
        });
    }
    for (c, (seq, &b)) in code.components.iter().zip(&code.base_points).enumerate() {
        let ok = if seq.is_empty() { b == 0 } else { b < seq.len() };
        if !ok {
            out.push(Violation::BasePointOutOfRange { component: c, base: b, len: seq.len() });
        }
    }

    let mut seen: BTreeMap<CrossingId, Vec<(Role, Sign)>> = BTreeMap::new();
    for (_, s) in code.symbols() {
        if let Symbol::Pass { id, role, sign } = *s {
            seen.entry(id).or_default().push((role, sign));
        }
    }
    for (id, passes) in seen {
        match passes.len() {
            1 => out.push(Violation::Unpaired(id)),
            2 => {
                if passes[0].0 == passes[1].0 {
                    out.push(Violation::SameRole(id, passes[0].0));
                }
                if passes[0].1 != passes[1].1 {
                    out.push(Violation::SignMismatch(id));
                }
            }
            n => out.push(Violation::TooManyPasses(id, n)),
        }
    }
    out
}
