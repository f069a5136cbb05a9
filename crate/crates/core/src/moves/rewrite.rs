//! Raw symbol rewriting. Every function here checks the local pattern of a
//! site and produces the rewritten code plus the site undoing it; label
//! bookkeeping happens one level up.

use crate::code::{MarkedGaussCode, Position, Role, Sign, Symbol};

use super::{MoveError, MoveSite};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Scope {
    /// Public moves: no reordering pair may straddle a base point, so that
    /// labels stay comparable before and after.
    Strict,
    /// Diagram equivalence only; base points are irrelevant.
    Free,
}

fn mismatch(position: Position, reason: impl Into<String>) -> MoveError {
    MoveError::Mismatch { position, reason: reason.into() }
}

fn symbol_at(code: &MarkedGaussCode, p: Position) -> Result<Symbol, MoveError> {
    code.symbol(p).copied().ok_or_else(|| mismatch(p, "position out of range"))
}

/// The position following `at` on its component; the pair must consist of
/// two distinct symbols.
pub(crate) fn partner(code: &MarkedGaussCode, at: Position) -> Result<Position, MoveError> {
    let len = code.components.get(at.component).map_or(0, Vec::len);
    if at.index >= len {
        return Err(mismatch(at, "position out of range"));
    }
    if len < 2 {
        return Err(mismatch(at, "component too short for a pair"));
    }
    Ok(Position::new(at.component, (at.index + 1) % len))
}

/// Whether the pair starting at `at` runs across the base point.
pub(crate) fn straddles(code: &MarkedGaussCode, at: Position) -> bool {
    let len = code.components[at.component].len();
    len > 0 && (at.index + 1) % len == code.base_points[at.component] % len
}

fn check_gap(code: &MarkedGaussCode, gap: Position) -> Result<(), MoveError> {
    match code.components.get(gap.component) {
        Some(seq) if gap.index <= seq.len() => Ok(()),
        _ => Err(mismatch(gap, "gap out of range")),
    }
}

fn strict_pair(code: &MarkedGaussCode, at: Position, scope: Scope) -> Result<Position, MoveError> {
    let q = partner(code, at)?;
    if scope == Scope::Strict && straddles(code, at) {
        return Err(MoveError::StraddlesBasePoint(at));
    }
    Ok(q)
}

/// Inserts runs of symbols. A run at gap `(c, g)` lands right before the
/// symbol at index `g`; runs sharing a gap keep their order. Returns the new
/// code and the start of each run.
pub(crate) fn insert(code: &MarkedGaussCode, runs: &[(Position, Vec<Symbol>)]) -> (MarkedGaussCode, Vec<Position>) {
    let mut out = code.clone();
    let mut starts = Vec::with_capacity(runs.len());
    for (k, (gap, _)) in runs.iter().enumerate() {
        let shift: usize = runs
            .iter()
            .enumerate()
            .filter(|(k2, (g2, _))| {
                g2.component == gap.component && (g2.index < gap.index || (g2.index == gap.index && *k2 < k))
            })
            .map(|(_, (_, r))| r.len())
            .sum();
        starts.push(Position::new(gap.component, gap.index + shift));
    }
    for c in 0..code.num_components() {
        let mine: Vec<_> = runs.iter().filter(|(g, _)| g.component == c).collect();
        if mine.is_empty() {
            continue;
        }
        let old = &code.components[c];
        let mut seq = Vec::with_capacity(old.len() + mine.iter().map(|(_, r)| r.len()).sum::<usize>());
        for i in 0..=old.len() {
            for (g, r) in &mine {
                if g.index == i {
                    seq.extend_from_slice(r);
                }
            }
            if i < old.len() {
                seq.push(old[i]);
            }
        }
        let b = code.base_points[c];
        let shift: usize = mine.iter().filter(|(g, _)| g.index < b).map(|(_, r)| r.len()).sum();
        out.base_points[c] = if old.is_empty() { 0 } else { b + shift };
        out.components[c] = seq;
    }
    (out, starts)
}

/// Removes symbols. Returns the new code and, per component, the number of
/// survivors before each old index (length `len + 1`).
pub(crate) fn remove(code: &MarkedGaussCode, removed: &[Position]) -> (MarkedGaussCode, Vec<Vec<usize>>) {
    let mut out = code.clone();
    let mut prefix = Vec::with_capacity(code.num_components());
    for (c, old) in code.components.iter().enumerate() {
        let gone: Vec<bool> = (0..old.len()).map(|i| removed.contains(&Position::new(c, i))).collect();
        let mut counts = Vec::with_capacity(old.len() + 1);
        let mut n = 0;
        for &g in &gone {
            counts.push(n);
            if !g {
                n += 1;
            }
        }
        counts.push(n);
        if gone.iter().any(|&g| g) {
            let b = code.base_points[c] % old.len().max(1);
            let new_base = (0..old.len()).map(|k| (b + k) % old.len()).find(|&i| !gone[i]).map_or(0, |i| counts[i]);
            out.components[c] = old.iter().zip(&gone).filter(|(_, g)| !**g).map(|(s, _)| *s).collect();
            out.base_points[c] = new_base;
        }
        prefix.push(counts);
    }
    (out, prefix)
}

/// Gap in the shrunken code where the removed pair `(at, next)` used to be.
fn gap_after_removal(code: &MarkedGaussCode, prefix: &[Vec<usize>], at: Position) -> Position {
    let len = code.components[at.component].len();
    let counts = &prefix[at.component];
    if at.index + 1 == len {
        // The pair wraps around the end of the array.
        Position::new(at.component, counts[len])
    } else {
        Position::new(at.component, counts[at.index])
    }
}

fn pass(s: Symbol, p: Position) -> Result<(u32, Role, Sign), MoveError> {
    match s {
        Symbol::Pass { id, role, sign } => Ok((id, role, sign)),
        Symbol::Mark(_) => Err(mismatch(p, "expected a crossing pass, found a mark")),
    }
}

fn mark(s: Symbol, p: Position) -> Result<Sign, MoveError> {
    match s {
        Symbol::Mark(d) => Ok(d),
        Symbol::Pass { .. } => Err(mismatch(p, "expected a mark, found a crossing pass")),
    }
}

fn flip_crossing(code: &mut MarkedGaussCode, id: u32) {
    for seq in &mut code.components {
        for s in seq.iter_mut() {
            if let Symbol::Pass { id: i, role, sign } = s {
                if *i == id {
                    *role = role.flip();
                    *sign = sign.flip();
                }
            }
        }
    }
}

fn swap(code: &mut MarkedGaussCode, p: Position, q: Position) {
    let seq = &mut code.components[p.component];
    seq.swap(p.index, q.index);
}

/// Whether a mark of direction `dir` may slide across a pass of role `role`
/// sitting before it (`pass_first`) or after it.
pub(crate) fn slide_allowed(pass_first: bool, role: Role, dir: Sign) -> bool {
    let over_side = if pass_first { dir == Sign::Pos } else { dir == Sign::Neg };
    (role == Role::Over) == over_side
}

/// Sign constraint making an R3 triangle realizable; `ot`, `om`, `ob` tell
/// whether the top strand meets the middle first, the middle meets the top
/// first, and the bottom meets the top first.
pub(crate) fn r3_signs_ok(s_tm: Sign, s_tb: Sign, s_mb: Sign, ot: bool, om: bool, ob: bool) -> bool {
    let f = |flip: bool| if flip { s_tm.flip() } else { s_tm };
    s_tb == f(om ^ ob) && s_mb == f(ot ^ ob)
}

/// Identifies the crossings of an R3 site: `(tm, tb, mb)` ids plus the three
/// traversal-order flags.
pub(crate) struct Triangle {
    pub tm: u32,
    pub tb: u32,
    pub mb: u32,
    pub signs: (Sign, Sign, Sign),
    pub order: (bool, bool, bool),
}

pub(crate) fn triangle(
    code: &MarkedGaussCode,
    top: Position,
    middle: Position,
    bottom: Position,
) -> Result<Triangle, MoveError> {
    let t2 = partner(code, top)?;
    let m2 = partner(code, middle)?;
    let b2 = partner(code, bottom)?;
    let (t_a, t_ra, t_sa) = pass(symbol_at(code, top)?, top)?;
    let (t_b, t_rb, t_sb) = pass(symbol_at(code, t2)?, t2)?;
    if t_ra != Role::Over {
        return Err(mismatch(top, "top strand must pass over"));
    }
    if t_rb != Role::Over {
        return Err(mismatch(t2, "top strand must pass over"));
    }
    let (m_a, m_ra, m_sa) = pass(symbol_at(code, middle)?, middle)?;
    let (m_b, m_rb, m_sb) = pass(symbol_at(code, m2)?, m2)?;
    let (tm, s_tm, mb, s_mb, om) = match (m_ra, m_rb) {
        (Role::Under, Role::Over) => (m_a, m_sa, m_b, m_sb, true),
        (Role::Over, Role::Under) => (m_b, m_sb, m_a, m_sa, false),
        _ => return Err(mismatch(middle, "middle strand must pass once under and once over")),
    };
    let (tb, s_tb, ot) = if tm == t_a {
        (t_b, t_sb, true)
    } else if tm == t_b {
        (t_a, t_sa, false)
    } else {
        return Err(mismatch(middle, "middle strand does not pass under the top strand"));
    };
    if mb == tm || mb == tb || tb == tm {
        return Err(mismatch(middle, "triangle needs three distinct crossings"));
    }
    let (b_a, b_ra, _) = pass(symbol_at(code, bottom)?, bottom)?;
    let (b_b, b_rb, _) = pass(symbol_at(code, b2)?, b2)?;
    if b_ra != Role::Under {
        return Err(mismatch(bottom, "bottom strand must pass under"));
    }
    if b_rb != Role::Under {
        return Err(mismatch(b2, "bottom strand must pass under"));
    }
    let ob = if (b_a, b_b) == (tb, mb) {
        true
    } else if (b_a, b_b) == (mb, tb) {
        false
    } else {
        return Err(mismatch(bottom, "bottom strand does not close the triangle"));
    };
    Ok(Triangle { tm, tb, mb, signs: (s_tm, s_tb, s_mb), order: (ot, om, ob) })
}

/// Applies a site. Returns the new code and the site undoing the move,
/// addressed in the new code.
pub(crate) fn rewrite(code: &MarkedGaussCode, site: &MoveSite, scope: Scope) -> Result<(MarkedGaussCode, MoveSite), MoveError> {
    let (after, inverse) = match *site {
        MoveSite::R1Add { gap, first, sign } => {
            check_gap(code, gap)?;
            let id = code.next_crossing_id();
            let run = vec![Symbol::Pass { id, role: first, sign }, Symbol::Pass { id, role: first.flip(), sign }];
            let (after, starts) = insert(code, &[(gap, run)]);
            (after, MoveSite::R1Remove { at: starts[0] })
        }
        MoveSite::R1Remove { at } => {
            let q = strict_pair(code, at, scope)?;
            let (a, ra, sa) = pass(symbol_at(code, at)?, at)?;
            let (b, _, _) = pass(symbol_at(code, q)?, q)?;
            if a != b {
                return Err(mismatch(q, format!("expected the other pass of c{}", a)));
            }
            let (after, prefix) = remove(code, &[at, q]);
            let gap = gap_after_removal(code, &prefix, at);
            (after, MoveSite::R1Add { gap, first: ra, sign: sa })
        }
        MoveSite::R2Add { over_gap, under_gap, sign, parallel, under_first } => {
            check_gap(code, over_gap)?;
            check_gap(code, under_gap)?;
            let a = code.next_crossing_id();
            let b = a + 1;
            let over = vec![Symbol::over(a, sign), Symbol::over(b, sign.flip())];
            let under = if parallel {
                vec![Symbol::under(a, sign), Symbol::under(b, sign.flip())]
            } else {
                vec![Symbol::under(b, sign.flip()), Symbol::under(a, sign)]
            };
            let (after, starts) = if under_first {
                let (after, s) = insert(code, &[(under_gap, under), (over_gap, over)]);
                (after, [s[1], s[0]])
            } else {
                let (after, s) = insert(code, &[(over_gap, over), (under_gap, under)]);
                (after, [s[0], s[1]])
            };
            (after, MoveSite::R2Remove { over: starts[0], under: starts[1] })
        }
        MoveSite::R2Remove { over, under } => {
            let o2 = strict_pair(code, over, scope)?;
            let u2 = strict_pair(code, under, scope)?;
            let (a, ra, sa) = pass(symbol_at(code, over)?, over)?;
            let (b, rb, sb) = pass(symbol_at(code, o2)?, o2)?;
            if ra != Role::Over {
                return Err(mismatch(over, "expected an over pass"));
            }
            if rb != Role::Over {
                return Err(mismatch(o2, "expected an over pass"));
            }
            if a == b {
                return Err(mismatch(o2, "bigon needs two distinct crossings"));
            }
            if sa == sb {
                return Err(mismatch(o2, "bigon crossings must have opposite signs"));
            }
            let (c, rc, _) = pass(symbol_at(code, under)?, under)?;
            let (d, rd, _) = pass(symbol_at(code, u2)?, u2)?;
            if rc != Role::Under || !(c == a || c == b) {
                return Err(mismatch(under, format!("expected the under pass of c{} or c{}", a, b)));
            }
            if rd != Role::Under || !(d == a || d == b) || d == c {
                return Err(mismatch(u2, format!("expected the under pass of c{} or c{}", a, b)));
            }
            let (after, prefix) = remove(code, &[over, o2, under, u2]);
            let over_gap = gap_after_removal(code, &prefix, over);
            let under_gap = gap_after_removal(code, &prefix, under);
            let under_first = over_gap == under_gap && under.index < over.index;
            (after, MoveSite::R2Add { over_gap, under_gap, sign: sa, parallel: c == a, under_first })
        }
        MoveSite::R3 { top, middle, bottom } => {
            let tri = triangle(code, top, middle, bottom)?;
            let (s_tm, s_tb, s_mb) = tri.signs;
            let (ot, om, ob) = tri.order;
            if !r3_signs_ok(s_tm, s_tb, s_mb, ot, om, ob) {
                return Err(mismatch(top, "signs do not form a realizable triangle"));
            }
            let mut after = code.clone();
            for p in [top, middle, bottom] {
                let q = strict_pair(code, p, scope)?;
                swap(&mut after, p, q);
            }
            (after, *site)
        }
        MoveSite::Slide4 { at } => {
            let q = strict_pair(code, at, scope)?;
            let s = symbol_at(code, at)?;
            let t = symbol_at(code, q)?;
            let (id, role, dir, pass_first) = match (s, t) {
                (Symbol::Pass { id, role, .. }, Symbol::Mark(d)) => (id, role, d, true),
                (Symbol::Mark(d), Symbol::Pass { id, role, .. }) => (id, role, d, false),
                _ => return Err(mismatch(at, "expected a mark next to a crossing pass")),
            };
            if !slide_allowed(pass_first, role, dir) {
                let p = if pass_first { at } else { q };
                return Err(mismatch(p, "mark cannot slide across this pass"));
            }
            let mut after = code.clone();
            swap(&mut after, at, q);
            flip_crossing(&mut after, id);
            (after, *site)
        }
        MoveSite::Cancel5Add { gap, first } => {
            check_gap(code, gap)?;
            let (after, starts) = insert(code, &[(gap, vec![Symbol::Mark(first), Symbol::Mark(first.flip())])]);
            (after, MoveSite::Cancel5Remove { at: starts[0] })
        }
        MoveSite::Cancel5Remove { at } => {
            let q = strict_pair(code, at, scope)?;
            let d = mark(symbol_at(code, at)?, at)?;
            let e = mark(symbol_at(code, q)?, q)?;
            if d == e {
                return Err(mismatch(q, "marks do not have opposite directions"));
            }
            let (after, prefix) = remove(code, &[at, q]);
            let gap = gap_after_removal(code, &prefix, at);
            (after, MoveSite::Cancel5Add { gap, first: d })
        }
    };
    after.check()?;
    Ok((after, inverse))
}
