//! Bounded bidirectional search for move sequences between two codes.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CrossingId, InvalidCode, MarkedGaussCode, Role, Sign, Symbol};

use super::{enumerate_sites_with, rewrite, MoveKind, MoveSite, Scope, SiteOptions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search budgets must be positive (max_symbols={max_symbols}, max_states={max_states})")]
    Budget { max_symbols: i64, max_states: i64 },
    #[error(transparent)]
    Invalid(#[from] InvalidCode),
}

/// One rewrite in a certificate. `after` is exactly `site` applied to
/// `before`; consecutive steps agree up to renaming and rotation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStep {
    pub before: MarkedGaussCode,
    pub site: MoveSite,
    pub after: MarkedGaussCode,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub steps: Vec<CertificateStep>,
}

impl Certificate {
    /// Replays every step and checks that the chain links `a` to `b`.
    pub fn verify(&self, a: &MarkedGaussCode, b: &MarkedGaussCode) -> bool {
        let mut cur = canonical_form(a).0;
        for step in &self.steps {
            if canonical_form(&step.before).0 != cur {
                return false;
            }
            match rewrite(&step.before, &step.site, Scope::Free) {
                Ok((after, _)) if after == step.after => cur = canonical_form(&after).0,
                _ => return false,
            }
        }
        cur == canonical_form(b).0
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Equivalence {
    Equivalent { certificate: Certificate, states: usize },
    /// The search gave up. With `degree_mismatch` the codes are provably
    /// inequivalent, since sorted per-component degrees are invariant.
    NotFound { states: usize, degree_mismatch: bool },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

fn encode(s: Symbol, names: &mut HashMap<CrossingId, u32>) -> u32 {
    match s {
        Symbol::Mark(Sign::Pos) => 1,
        Symbol::Mark(Sign::Neg) => 2,
        Symbol::Pass { id, role, sign } => {
            let next = names.len() as u32;
            let n = *names.entry(id).or_insert(next);
            3 + 4 * n + 2 * u32::from(role == Role::Under) + u32::from(sign == Sign::Neg)
        }
    }
}

fn encode_rotation(seq: &[Symbol], r: usize, names: &mut HashMap<CrossingId, u32>) -> Vec<u32> {
    let mut out: Vec<u32> = (0..seq.len()).map(|k| encode(seq[(r + k) % seq.len()], names)).collect();
    out.push(0);
    out
}

/// Key, `(component, rotation)` order and crossing renaming.
type Best = (Vec<u32>, Vec<(usize, usize)>, HashMap<CrossingId, u32>);

fn best(code: &MarkedGaussCode, remaining: &[usize], names: &HashMap<CrossingId, u32>) -> Best {
    if remaining.is_empty() {
        return (Vec::new(), Vec::new(), names.clone());
    }
    let mut cands = Vec::new();
    for &c in remaining {
        let seq = &code.components[c];
        for r in 0..seq.len().max(1) {
            let mut nm = names.clone();
            let enc = encode_rotation(seq, r, &mut nm);
            cands.push((enc, c, r, nm));
        }
    }
    let min = cands.iter().map(|c| &c.0).min().unwrap().clone();
    let mut result: Option<Best> = None;
    for (enc, c, r, nm) in cands.into_iter().filter(|c| c.0 == min) {
        let rest: Vec<usize> = remaining.iter().copied().filter(|&x| x != c).collect();
        let (tail, mut order, nm2) = best(code, &rest, &nm);
        let mut full = enc;
        full.extend_from_slice(&tail);
        order.insert(0, (c, r));
        if result.as_ref().is_none_or(|(b, _, _)| full < *b) {
            result = Some((full, order, nm2));
        }
    }
    result.unwrap()
}

/// A key identifying a code up to crossing renaming, rotation of each
/// component and reordering of components, plus the representative it was
/// read from (base points at 0, crossings renamed `1..`).
pub fn canonical_form(code: &MarkedGaussCode) -> (Vec<u32>, MarkedGaussCode) {
    let all: Vec<usize> = (0..code.num_components()).collect();
    let (key, order, names) = best(code, &all, &HashMap::new());
    let components = order
        .iter()
        .map(|&(c, r)| {
            let seq = &code.components[c];
            (0..seq.len())
                .map(|k| match seq[(r + k) % seq.len()] {
                    Symbol::Pass { id, role, sign } => Symbol::Pass { id: names[&id] + 1, role, sign },
                    m => m,
                })
                .collect()
        })
        .collect();
    (key, MarkedGaussCode::new(components))
}

struct Node {
    rep: MarkedGaussCode,
    /// Parent key, site applied to the parent's representative, and the
    /// exact result of that rewrite.
    parent: Option<(Vec<u32>, MoveSite, MarkedGaussCode)>,
}

fn sorted_degrees(code: &MarkedGaussCode) -> Vec<i64> {
    let mut d = code.degrees();
    d.sort_unstable();
    d
}

fn expand(rep: &MarkedGaussCode, max_symbols: usize) -> Vec<(MoveSite, MarkedGaussCode)> {
    let opts = SiteOptions { all_variants: true, ignore_base_points: true };
    let mut out = Vec::new();
    for site in enumerate_sites_with(rep, &MoveKind::ALL, opts) {
        let grows = match site.kind() {
            MoveKind::R1Add | MoveKind::Cancel5Add => 2,
            MoveKind::R2Add => 4,
            _ => 0,
        };
        if rep.num_symbols() + grows > max_symbols {
            continue;
        }
        if let Ok((after, _)) = rewrite(rep, &site, Scope::Free) {
            out.push((site, after));
        }
    }
    out
}

/// Searches for a move sequence from `a` to `b`, visiting codes of at most
/// `max_symbols` symbols and at most `max_states` distinct codes in total.
pub fn equivalent_bounded(
    a: &MarkedGaussCode,
    b: &MarkedGaussCode,
    max_symbols: i64,
    max_states: i64,
) -> Result<Equivalence, SearchError> {
    if max_symbols <= 0 || max_states <= 0 {
        return Err(SearchError::Budget { max_symbols, max_states });
    }
    a.check()?;
    b.check()?;
    let (ka, ra) = canonical_form(a);
    let (kb, rb) = canonical_form(b);
    if ka == kb {
        return Ok(Equivalence::Equivalent { certificate: Certificate::default(), states: 1 });
    }
    if a.num_components() != b.num_components() || sorted_degrees(a) != sorted_degrees(b) {
        return Ok(Equivalence::NotFound { states: 0, degree_mismatch: true });
    }
    let max_symbols = (max_symbols as usize).max(a.num_symbols()).max(b.num_symbols());
    let max_states = max_states as usize;

    let mut sides: [HashMap<Vec<u32>, Node>; 2] = [HashMap::new(), HashMap::new()];
    sides[0].insert(ka.clone(), Node { rep: ra, parent: None });
    sides[1].insert(kb.clone(), Node { rep: rb, parent: None });
    let mut frontiers = [vec![ka], vec![kb]];
    let mut states = 2;

    loop {
        if frontiers[0].is_empty() && frontiers[1].is_empty() {
            return Ok(Equivalence::NotFound { states, degree_mismatch: false });
        }
        let side = if frontiers[1].is_empty() || (!frontiers[0].is_empty() && frontiers[0].len() <= frontiers[1].len()) {
            0
        } else {
            1
        };
        let other = 1 - side;
        let level = std::mem::take(&mut frontiers[side]);
        let mut next = Vec::new();
        for key in level {
            let rep = sides[side][&key].rep.clone();
            for (site, after) in expand(&rep, max_symbols) {
                let (k2, r2) = canonical_form(&after);
                if sides[side].contains_key(&k2) {
                    continue;
                }
                let node = Node { rep: r2, parent: Some((key.clone(), site, after)) };
                if sides[other].contains_key(&k2) {
                    sides[side].insert(k2.clone(), node);
                    let certificate = stitch(&sides[0], &sides[1], &k2);
                    return Ok(Equivalence::Equivalent { certificate, states: states + 1 });
                }
                sides[side].insert(k2.clone(), node);
                next.push(k2);
                states += 1;
                if states >= max_states {
                    return Ok(Equivalence::NotFound { states, degree_mismatch: false });
                }
            }
        }
        frontiers[side] = next;
    }
}

/// Builds the certificate through the meeting code `meet`: forward steps
/// from `a`'s tree, then inverse steps back down `b`'s tree.
fn stitch(fwd: &HashMap<Vec<u32>, Node>, back: &HashMap<Vec<u32>, Node>, meet: &[u32]) -> Certificate {
    let mut steps = Vec::new();
    let mut key = meet.to_vec();
    while let Some((pk, site, after)) = &fwd[&key].parent {
        steps.push(CertificateStep { before: fwd[pk].rep.clone(), site: *site, after: after.clone() });
        key = pk.clone();
    }
    steps.reverse();
    let mut key = meet.to_vec();
    while let Some((pk, site, after)) = &back[&key].parent {
        let (_, inverse) = rewrite(&back[pk].rep, site, Scope::Free).expect("recorded site applies");
        let (undone, _) = rewrite(after, &inverse, Scope::Free).expect("inverse applies");
        steps.push(CertificateStep { before: after.clone(), site: inverse, after: undone });
        key = pk.clone();
    }
    Certificate { steps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_code;

    fn code(s: &str) -> MarkedGaussCode {
        parse_code(s).unwrap()
    }

    #[test]
    fn canonical_ignores_names_rotation_and_order() {
        let a = code("*O1+ U2+ O3+ U1+ O2+ U3+\nM+ M-");
        let b = code("M- *M+\nU7+ O5+ U9+ O7+ U5+ O9+");
        assert_eq!(canonical_form(&a).0, canonical_form(&b).0);
        let c = code("*O1- U2- O3- U1- O2- U3-\nM+ M-");
        assert_ne!(canonical_form(&a).0, canonical_form(&c).0);
    }

    #[test]
    fn reflexive() {
        let t = code("*O1+ U2+ O3+ U1+ O2+ U3+");
        let r = equivalent_bounded(&t, &t, 10, 10).unwrap();
        assert_eq!(r, Equivalence::Equivalent { certificate: Certificate::default(), states: 1 });
    }

    #[test]
    fn kink_to_unknot() {
        let u = MarkedGaussCode::unknot();
        let k = code("*O1+ U1+");
        let Equivalence::Equivalent { certificate, .. } = equivalent_bounded(&u, &k, 4, 1000).unwrap() else {
            panic!("not found")
        };
        assert_eq!(certificate.len(), 1);
        assert!(certificate.verify(&u, &k));
        assert!(certificate.verify(&u, &k));
        assert!(!certificate.verify(&k, &u));
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let r = equivalent_bounded(&MarkedGaussCode::unknot(), &code("M+"), 8, 1000).unwrap();
        assert_eq!(r, Equivalence::NotFound { states: 0, degree_mismatch: true });
    }

    #[test]
    fn budgets_must_be_positive() {
        let u = MarkedGaussCode::unknot();
        assert!(equivalent_bounded(&u, &u, 0, 5).is_err());
        assert!(equivalent_bounded(&u, &u, 5, -1).is_err());
    }

    #[test]
    fn mark_slides_around_kink() {
        let a = code("*O1+ M+ U1+");
        let b = code("*M+ O1+ U1+");
        let r = equivalent_bounded(&a, &b, 8, 20000).unwrap();
        let Equivalence::Equivalent { certificate, .. } = r else { panic!("{:?}", r) };
        assert!(certificate.verify(&a, &b));
    }
}
