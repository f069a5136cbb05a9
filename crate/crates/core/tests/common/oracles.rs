//! Reference implementations written without the library's internals.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashMap, VecDeque};

use sgknot::moves::{apply, canonical_form, enumerate_sites_with, MoveKind, SiteOptions};
use sgknot::planarity::is_planar;
use sgknot::quandle::LabeledQuandle;
use sgknot::unknotting::{crossing_change, is_descending, marks_consolidated};
use sgknot::{CrossingId, MarkedGaussCode, Role, Sign, Symbol};

/// Laurent polynomial in `A`: exponent to coefficient.
pub type Poly = BTreeMap<i64, i64>;

pub fn poly(terms: &[(i64, i64)]) -> Poly {
    let mut p = Poly::new();
    for &(c, e) in terms {
        *p.entry(e).or_insert(0) += c;
    }
    p.retain(|_, c| *c != 0);
    p
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut p = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *p.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    p.retain(|_, c| *c != 0);
    p
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while p[r] != r {
        r = p[r];
    }
    let mut y = x;
    while p[y] != r {
        let n = p[y];
        p[y] = r;
        y = n;
    }
    r
}

/// Passes of each component in order as `(crossing, role, sign)`.
fn passes(code: &MarkedGaussCode) -> Vec<Vec<(CrossingId, Role, Sign)>> {
    code.components
        .iter()
        .map(|seq| {
            seq.iter()
                .filter_map(|s| match *s {
                    Symbol::Pass { id, role, sign } => Some((id, role, sign)),
                    Symbol::Mark(_) => None,
                })
                .collect()
        })
        .collect()
}

/// Kauffman bracket `sum A^(#A - #B) d^loops`, `d = -A^2 - A^-2`, of a
/// diagram without marks. Every state is enumerated and its loops counted
/// by union-find on half-edges.
///
/// The A-smoothing joins the two regions swept when the over strand turns
/// counterclockwise. With half-edges `h0..h3` counterclockwise and `h0`,
/// `h2` on the over strand, it connects `h0` with `h3` and `h2` with `h1`.
pub fn kauffman_bracket(code: &MarkedGaussCode) -> Poly {
    assert_eq!(code.num_marks(), 0);
    let comps = passes(code);
    let ids: Vec<CrossingId> = code.crossing_ids();
    let index: HashMap<CrossingId, usize> = ids.iter().enumerate().map(|(k, &id)| (id, k)).collect();
    let mut sign = vec![Sign::Pos; ids.len()];
    // Half-edge node: 4k + {0 over in, 1 over out, 2 under in, 3 under out}.
    let node = |id: CrossingId, role: Role, out: bool| 4 * index[&id] + if role == Role::Over { 0 } else { 2 } + out as usize;
    let mut edges = Vec::new();
    let mut free_loops = 0;
    for ps in &comps {
        if ps.is_empty() {
            free_loops += 1;
            continue;
        }
        for k in 0..ps.len() {
            let (a, ra, sa) = ps[k];
            let (b, rb, _) = ps[(k + 1) % ps.len()];
            sign[index[&a]] = sa;
            edges.push((node(a, ra, true), node(b, rb, false)));
        }
    }
    let n = ids.len();
    let d = poly(&[(-1, 2), (-1, -2)]);
    let mut total = Poly::new();
    for state in 0u64..(1 << n) {
        let mut parent: Vec<usize> = (0..4 * n).collect();
        let union = |a: usize, b: usize, p: &mut Vec<usize>| {
            let (ra, rb) = (find(p, a), find(p, b));
            p[ra] = rb;
        };
        for &(a, b) in &edges {
            union(a, b, &mut parent);
        }
        let mut a_count = 0i64;
        for k in 0..n {
            let (oi, oo, ui, uo) = (4 * k, 4 * k + 1, 4 * k + 2, 4 * k + 3);
            let ccw = match sign[k] {
                Sign::Pos => [oo, uo, oi, ui],
                Sign::Neg => [oo, ui, oi, uo],
            };
            let a_smoothing = state >> k & 1 == 0;
            let pairs = if a_smoothing { [(ccw[0], ccw[3]), (ccw[2], ccw[1])] } else { [(ccw[0], ccw[1]), (ccw[2], ccw[3])] };
            a_count += if a_smoothing { 1 } else { -1 };
            for (x, y) in pairs {
                union(x, y, &mut parent);
            }
        }
        let loops = (0..4 * n).filter(|&x| find(&mut parent, x) == x).count() + free_loops;
        let mut term = poly(&[(1, a_count)]);
        for _ in 0..loops {
            term = poly_mul(&term, &d);
        }
        for (e, c) in term {
            *total.entry(e).or_insert(0) += c;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

/// Labels from scratch: the running sum of mark directions from the base
/// point, crossing label = over minus under.
pub fn crossing_labels(code: &MarkedGaussCode) -> BTreeMap<CrossingId, i64> {
    let mut over = BTreeMap::new();
    let mut under = BTreeMap::new();
    for (c, seq) in code.components.iter().enumerate() {
        let len = seq.len();
        let mut cur = 0;
        for k in 0..len {
            match seq[(code.base_points[c] + k) % len] {
                Symbol::Mark(Sign::Pos) => cur += 1,
                Symbol::Mark(Sign::Neg) => cur -= 1,
                Symbol::Pass { id, role: Role::Over, .. } => {
                    over.insert(id, cur);
                }
                Symbol::Pass { id, role: Role::Under, .. } => {
                    under.insert(id, cur);
                }
            }
        }
    }
    over.iter().map(|(id, o)| (*id, o - under[id])).collect()
}

/// Counts colorings by trying every assignment of colors to semi-arcs.
/// The semi-arc leaving symbol `i` enters symbol `i + 1`.
pub fn brute_colorings(code: &MarkedGaussCode, qd: &LabeledQuandle) -> u64 {
    let labels = crossing_labels(code);
    let mut offset = Vec::new();
    let mut total = 0;
    for seq in &code.components {
        offset.push(total);
        total += seq.len().max(1);
    }
    let leaving = |c: usize, i: usize| offset[c] + i;
    let entering = |c: usize, i: usize| {
        let len = code.components[c].len();
        offset[c] + (i + len - 1) % len
    };
    let mut at: BTreeMap<CrossingId, [(usize, usize); 2]> = BTreeMap::new();
    let mut sign = BTreeMap::new();
    let mut marks = Vec::new();
    for (c, seq) in code.components.iter().enumerate() {
        for (i, s) in seq.iter().enumerate() {
            match *s {
                Symbol::Pass { id, role, sign: sg } => {
                    at.entry(id).or_insert([(0, 0); 2])[(role == Role::Under) as usize] = (entering(c, i), leaving(c, i));
                    sign.insert(id, sg);
                }
                Symbol::Mark(dir) => marks.push((entering(c, i), leaving(c, i), dir)),
            }
        }
    }
    let s_inv: Vec<u8> = {
        let mut inv = vec![0u8; qd.q];
        for x in 0..qd.q as u8 {
            inv[qd.s(x) as usize] = x;
        }
        inv
    };
    let q = qd.q as u64;
    let mut count = 0;
    let mut colors = vec![0u8; total];
    for n in 0..q.pow(total as u32) {
        let mut m = n;
        for c in colors.iter_mut() {
            *c = (m % q) as u8;
            m /= q;
        }
        let crossings_ok = at.iter().all(|(id, [(oi, oo), (ui, uo)])| {
            let i = labels[id];
            // Positive: (under, over) in -> (x *_i y, y o_i x) out. Negative
            // reads the same rule from the outgoing side.
            let (x, y, x2, y2) = match sign[id] {
                Sign::Pos => (colors[*ui], colors[*oi], colors[*uo], colors[*oo]),
                Sign::Neg => (colors[*uo], colors[*oo], colors[*ui], colors[*oi]),
            };
            qd.star(i, x, y) == x2 && qd.circ(i, y, x) == y2
        });
        let marks_ok = marks.iter().all(|&(a, b, dir)| match dir {
            Sign::Pos => qd.s(colors[a]) == colors[b],
            Sign::Neg => s_inv[colors[a] as usize] == colors[b],
        });
        if crossings_ok && marks_ok {
            count += 1;
        }
    }
    count
}

/// Rosenstiehl's criterion for a Gauss word (each letter twice) to be the
/// word of a closed curve in the plane.
pub fn rosenstiehl(word: &[CrossingId]) -> bool {
    let mut pos: BTreeMap<CrossingId, Vec<usize>> = BTreeMap::new();
    for (k, &a) in word.iter().enumerate() {
        pos.entry(a).or_default().push(k);
    }
    let letters: Vec<CrossingId> = pos.keys().copied().collect();
    let n = letters.len();
    let inside = |a: CrossingId, k: usize| pos[&a][0] < k && k < pos[&a][1];
    let inter = |a: CrossingId, b: CrossingId| a != b && (inside(a, pos[&b][0]) != inside(a, pos[&b][1]));
    let adj: Vec<Vec<bool>> = letters.iter().map(|&a| letters.iter().map(|&b| inter(a, b)).collect()).collect();
    let common = |i: usize, j: usize| (0..n).filter(|&k| adj[i][k] && adj[j][k]).count();
    if (0..n).any(|i| adj[i].iter().filter(|&&x| x).count() % 2 == 1) {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            if !adj[i][j] && common(i, j) % 2 == 1 {
                return false;
            }
        }
    }
    // Interlaced pairs with an even number of common neighbours must form
    // a cut of the interlacement graph.
    let mut side = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !adj[i][j] {
                    continue;
                }
                let want = side[i].unwrap() ^ (common(i, j) % 2 == 0);
                match side[j] {
                    None => {
                        side[j] = Some(want);
                        stack.push(j);
                    }
                    Some(v) if v != want => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

fn rotated(code: &MarkedGaussCode, base: usize) -> MarkedGaussCode {
    let mut c = code.clone();
    c.base_points[0] = base;
    c
}

/// A knot diagram the pipeline would stop at: some base point reads it as
/// descending with the marks in one block at the end.
pub fn is_trivial_form(code: &MarkedGaussCode) -> bool {
    let len = code.components[0].len();
    (0..len.max(1)).any(|b| {
        let c = rotated(code, b);
        is_descending(&c) && marks_consolidated(&c)
    })
}

pub struct BfsResult {
    /// Fewest crossing changes reaching a trivial form, if one was reached.
    pub cost: Option<usize>,
    pub states: usize,
    /// Every reachable state under the symbol cap was visited.
    pub exhausted: bool,
}

/// 0-1 breadth-first search over planar knot diagrams of at most
/// `max_symbols` symbols: moves cost 0, crossing changes cost 1.
pub fn min_crossing_changes(code: &MarkedGaussCode, max_symbols: usize, max_states: usize) -> BfsResult {
    let opts = SiteOptions { all_variants: true, ignore_base_points: false };
    let mut dist: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let (k, rep) = canonical_form(code);
    dist.insert(k.clone(), 0);
    queue.push_back((k, rep, 0));
    let mut done = std::collections::HashSet::new();
    while let Some((key, rep, d)) = queue.pop_front() {
        if dist[&key] < d || !done.insert(key.clone()) {
            continue;
        }
        if is_trivial_form(&rep) {
            return BfsResult { cost: Some(d), states: dist.len(), exhausted: false };
        }
        if dist.len() > max_states {
            return BfsResult { cost: None, states: dist.len(), exhausted: false };
        }
        let len = rep.components[0].len();
        let room = max_symbols.saturating_sub(rep.num_symbols());
        let kinds: Vec<MoveKind> = MoveKind::ALL
            .into_iter()
            .filter(|k| match k {
                MoveKind::R1Add | MoveKind::Cancel5Add => room >= 2,
                MoveKind::R2Add => room >= 4,
                _ => true,
            })
            .collect();
        let mut next = Vec::new();
        for b in 0..len.min(2) {
            let r = rotated(&rep, b);
            for site in enumerate_sites_with(&r, &kinds, opts) {
                if let Ok(t) = apply(&r, &site) {
                    next.push((t.after, 0));
                }
            }
        }
        for id in rep.crossing_ids() {
            next.push((crossing_change(&rep, id).expect("planar knot"), 1));
        }
        for (after, w) in next {
            if after.num_symbols() > max_symbols || !is_planar(&after) {
                continue;
            }
            let (k2, r2) = canonical_form(&after);
            let nd = d + w;
            if dist.get(&k2).is_none_or(|&old| nd < old) {
                dist.insert(k2.clone(), nd);
                if w == 0 {
                    queue.push_front((k2, r2, nd));
                } else {
                    queue.push_back((k2, r2, nd));
                }
            }
        }
    }
    BfsResult { cost: None, states: dist.len(), exhausted: true }
}
