//! Shared generators for integration tests.
#![allow(dead_code)]

pub mod oracles;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use sgknot::moves::{apply, enumerate_sites_with, MoveKind, MoveTrace, SiteOptions};
use sgknot::{MarkedGaussCode, Role, Sign, Symbol};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub struct Shape {
    pub components: usize,
    pub crossings: usize,
    /// Pairs of opposite marks per component (degree 0 contribution).
    pub mark_pairs: usize,
    /// Extra marks making per-component degree this value.
    pub degree: i64,
}

fn sign(rng: &mut StdRng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// A random (generally virtual) code with the given shape. Every component
/// gets at least one symbol when it has marks.
pub fn random_code(rng: &mut StdRng, shape: &Shape) -> MarkedGaussCode {
    let mut comps: Vec<Vec<Symbol>> = vec![Vec::new(); shape.components];
    for id in 1..=shape.crossings as u32 {
        let s = sign(rng);
        let over_first = rng.gen_bool(0.5);
        for role in if over_first { [Role::Over, Role::Under] } else { [Role::Under, Role::Over] } {
            let c = rng.gen_range(0..shape.components);
            let at = rng.gen_range(0..=comps[c].len());
            comps[c].insert(at, Symbol::Pass { id, role, sign: s });
        }
    }
    for c in comps.iter_mut() {
        let mut marks = Vec::new();
        for _ in 0..shape.mark_pairs {
            marks.push(Sign::Pos);
            marks.push(Sign::Neg);
        }
        for _ in 0..shape.degree.abs() {
            marks.push(if shape.degree > 0 { Sign::Pos } else { Sign::Neg });
        }
        for m in marks {
            let at = rng.gen_range(0..=c.len());
            c.insert(at, Symbol::Mark(m));
        }
    }
    let bases = comps.iter().map(|c| if c.is_empty() { 0 } else { rng.gen_range(0..c.len()) }).collect();
    MarkedGaussCode::with_base_points(comps, bases)
}

pub fn random_shape(rng: &mut StdRng, max_crossings: usize, degree_zero: bool) -> Shape {
    Shape {
        components: rng.gen_range(1..=2),
        crossings: rng.gen_range(0..=max_crossings),
        mark_pairs: rng.gen_range(0..=2),
        degree: if degree_zero { 0 } else { rng.gen_range(-2..=2) },
    }
}

/// Applies a uniformly chosen applicable move of a uniformly chosen kind.
pub fn random_move(rng: &mut StdRng, code: &MarkedGaussCode, kinds: &[MoveKind]) -> Option<MoveTrace> {
    let opts = SiteOptions { all_variants: true, ignore_base_points: false };
    let mut kinds = kinds.to_vec();
    kinds.shuffle(rng);
    for k in kinds {
        let sites = enumerate_sites_with(code, &[k], opts);
        if let Some(site) = sites.choose(rng) {
            return Some(apply(code, site).expect("enumerated site applies"));
        }
    }
    None
}

/// A code built so that the requested move kind is likely to apply: first a
/// random code, then a few random insertions.
pub fn seeded_code(rng: &mut StdRng, max_crossings: usize, degree_zero: bool) -> MarkedGaussCode {
    let shape = random_shape(rng, max_crossings, degree_zero);
    let mut code = random_code(rng, &shape);
    for _ in 0..rng.gen_range(0..3) {
        let kinds = [MoveKind::R1Add, MoveKind::R2Add, MoveKind::Cancel5Add];
        if let Some(t) = random_move(rng, &code, &kinds) {
            code = t.after;
        }
    }
    code
}

pub const TREFOIL: &str = "*O1+ U2+ O3+ U1+ O2+ U3+";
pub const FIGURE_EIGHT: &str = "*U1- O2+ U3+ O1- U4- O3+ U2+ O4-";

/// `n` applications of one move kind on closed braids, which have plenty of
/// triangles, with a few marks added.
pub fn braid_traces(rng: &mut StdRng, kind: MoveKind, n: usize) -> Vec<MoveTrace> {
    let mut out = Vec::new();
    while out.len() < n {
        let marks = rng.gen_range(0..=2);
        let code = sgknot::sample::random_planar_knot(rng, 4, 6, marks);
        if let Some(t) = random_move(rng, &code, &[kind]) {
            out.push(t);
        }
    }
    out
}
