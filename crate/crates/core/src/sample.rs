//! Random planar knot diagrams as closures of braids.
//!
//! Strands run downward. In the letter `i` (1-based, `σ_i`) the strand at
//! position `i` crosses over the one at `i + 1`; in `-i` the strand at `i + 1`
//! is on top. With downward orientation `σ_i` is a negative crossing and
//! `σ_i^-1` a positive one.

use rand::Rng;

use crate::code::{MarkedGaussCode, Role, Sign, Symbol};

/// The braid permutation: strand starting at position `p` ends at `perm[p]`.
pub fn permutation(strands: usize, word: &[i32]) -> Vec<usize> {
    let mut at: Vec<usize> = (0..strands).collect();
    for &l in word {
        let i = l.unsigned_abs() as usize - 1;
        for p in at.iter_mut() {
            if *p == i {
                *p = i + 1;
            } else if *p == i + 1 {
                *p = i;
            }
        }
    }
    at
}

fn cycles(perm: &[usize]) -> Vec<usize> {
    // Cycle index of every position.
    let mut id = vec![usize::MAX; perm.len()];
    let mut n = 0;
    for s in 0..perm.len() {
        if id[s] == usize::MAX {
            let mut p = s;
            while id[p] == usize::MAX {
                id[p] = n;
                p = perm[p];
            }
            n += 1;
        }
    }
    id
}

/// Gauss code of the closure of `word` on `strands` strands, one component
/// per cycle of the permutation. Crossing `k + 1` is letter `k`.
pub fn braid_closure(strands: usize, word: &[i32]) -> MarkedGaussCode {
    assert!(word.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) < strands), "letters must lie in 1..strands");
    let mut visited = vec![false; strands];
    let mut components = Vec::new();
    for start in 0..strands {
        if visited[start] {
            continue;
        }
        let mut seq = Vec::new();
        let mut p = start;
        loop {
            visited[p] = true;
            for (k, &l) in word.iter().enumerate() {
                let i = l.unsigned_abs() as usize - 1;
                if p != i && p != i + 1 {
                    continue;
                }
                let left_over = l > 0;
                let over = (p == i) == left_over;
                let sign = if left_over { Sign::Neg } else { Sign::Pos };
                let role = if over { Role::Over } else { Role::Under };
                seq.push(Symbol::Pass { id: k as u32 + 1, role, sign });
                p = if p == i { i + 1 } else { i };
            }
            if p == start {
                break;
            }
        }
        components.push(seq);
    }
    MarkedGaussCode::new(components)
}

/// A random braid word on `strands` strands of about `length` letters whose
/// closure is a knot: letters are appended until the permutation is one
/// cycle.
pub fn random_knot_word(rng: &mut impl Rng, strands: usize, length: usize) -> Vec<i32> {
    assert!(strands >= 1);
    if strands == 1 {
        return Vec::new();
    }
    let mut word: Vec<i32> = (0..length)
        .map(|_| {
            let i = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    loop {
        let id = cycles(&permutation(strands, &word));
        let Some(i) = (0..strands - 1).find(|&i| id[i] != id[i + 1]) else { break };
        word.push(if rng.gen_bool(0.5) { i as i32 + 1 } else { -(i as i32 + 1) });
    }
    word
}

/// A random planar knot diagram with up to `max_crossings` crossings on up
/// to `max_strands` strands, with `marks` marks of random direction
/// inserted at random places.
pub fn random_planar_knot(rng: &mut impl Rng, max_strands: usize, max_crossings: usize, marks: usize) -> MarkedGaussCode {
    // A knot on `m` strands needs at least `m - 1` letters.
    let strands = rng.gen_range(1..=max_strands.min(max_crossings + 1).max(1));
    let word = loop {
        let length = rng.gen_range(0..=max_crossings);
        let w = random_knot_word(rng, strands, length);
        if w.len() <= max_crossings {
            break w;
        }
    };
    let mut code = braid_closure(strands, &word);
    let seq = &mut code.components[0];
    for _ in 0..marks {
        let at = rng.gen_range(0..=seq.len());
        seq.insert(at, Symbol::Mark(if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg }));
    }
    code.base_points[0] = if seq.is_empty() { 0 } else { rng.gen_range(0..seq.len()) };
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarity::is_planar;
    use crate::text::parse_code;
    use rand::SeedableRng;

    #[test]
    fn trefoil_closure() {
        let c = braid_closure(2, &[-1, -1, -1]);
        assert_eq!(c, parse_code("*U1+ O2+ U3+ O1+ U2+ O3+").unwrap());
        assert_eq!(braid_closure(2, &[1, -1]).num_components(), 2);
    }

    #[test]
    fn samples_are_planar_knots() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let c = random_planar_knot(&mut rng, 4, 10, 2);
            assert_eq!(c.num_components(), 1);
            assert!(c.num_crossings() <= 10);
            assert!(c.check().is_ok());
            assert!(is_planar(&c), "{:?}", c);
        }
    }
}
