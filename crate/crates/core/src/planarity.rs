//! Whether a signed code is drawn on the sphere.
//!
//! The code determines a ribbon graph: crossings are 4-valent vertices whose
//! cyclic order of half-edges follows from the crossing sign, and the arcs
//! between consecutive passes are edges (marks sit on edges and are
//! ignored). Tracing faces gives the genus of the surface the diagram
//! naturally lives on; genus 0 means a planar diagram with these signs.

use crate::code::{MarkedGaussCode, Role, Sign, Symbol};

/// Half-edges around a crossing in counterclockwise order. With `o`, `u`
/// the over and under directions, a crossing is positive when `u` is
/// counterclockwise from `o`.
fn rotation(sign: Sign) -> [usize; 4] {
    // Slots: 0 over in, 1 over out, 2 under in, 3 under out.
    match sign {
        Sign::Pos => [1, 3, 0, 2],
        Sign::Neg => [1, 2, 0, 3],
    }
}

/// Sum over connected pieces of the genus of the surface each piece is
/// cellularly embedded in. Crossingless components contribute nothing.
pub fn diagram_genus(code: &MarkedGaussCode) -> usize {
    let crossings = code.crossings();
    let index: std::collections::BTreeMap<_, _> = crossings.keys().enumerate().map(|(k, &id)| (id, k)).collect();
    let v = crossings.len();
    if v == 0 {
        return 0;
    }
    let half = |id, role: Role, out: bool| 4 * index[&id] + if role == Role::Over { 0 } else { 2 } + out as usize;

    // Arc ends: out half-edge of each pass to the in half-edge of the next.
    let mut partner = vec![usize::MAX; 4 * v];
    let mut edges = 0;
    for seq in &code.components {
        let passes: Vec<_> = seq.iter().filter_map(|s| if let Symbol::Pass { id, role, .. } = *s { Some((id, role)) } else { None }).collect();
        for (k, &(id, role)) in passes.iter().enumerate() {
            let (id2, role2) = passes[(k + 1) % passes.len()];
            let (a, b) = (half(id, role, true), half(id2, role2, false));
            partner[a] = b;
            partner[b] = a;
            edges += 1;
        }
    }
    let mut next_ccw = vec![0; 4 * v];
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for (id, cp) in &crossings {
        let base = 4 * index[id];
        let rot = rotation(cp.sign);
        for k in 0..4 {
            next_ccw[base + rot[k]] = base + rot[(k + 1) % 4];
        }
    }
    for (h, &p) in partner.iter().enumerate() {
        let (a, b) = (find(&mut parent, h / 4), find(&mut parent, p / 4));
        parent[a] = b;
    }
    let pieces = (0..v).filter(|&x| find(&mut parent, x) == x).count();

    let mut seen = vec![false; 4 * v];
    let mut faces = 0;
    for start in 0..4 * v {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = next_ccw[partner[h]];
        }
    }
    // V - E + F = sum over pieces of (2 - 2g).
    let chi = v as i64 - edges as i64 + faces as i64;
    ((2 * pieces as i64 - chi) / 2) as usize
}

pub fn is_planar(code: &MarkedGaussCode) -> bool {
    diagram_genus(code) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_code;

    fn genus(s: &str) -> usize {
        diagram_genus(&parse_code(s).unwrap())
    }

    #[test]
    fn classical_diagrams_are_planar() {
        assert_eq!(genus("*"), 0);
        assert_eq!(genus("*O1+ U1+"), 0);
        assert_eq!(genus("*O1- M+ U1-"), 0);
        assert_eq!(genus("*O1+ U2+ O3+ U1+ O2+ U3+"), 0);
        assert_eq!(genus("*U1- O2+ U3+ O1- U4- O3+ U2+ O4-"), 0);
        assert_eq!(genus("*O1+ O2-\nU1+ U2-"), 0);
    }

    #[test]
    fn virtual_or_inconsistent_codes_are_not() {
        // Virtual trefoil.
        assert_eq!(genus("*O1+ U2+ U1+ O2+"), 1);
        // Trefoil word with one crossing of the wrong handedness.
        assert_eq!(genus("*O1+ U2+ O3- U1+ O2+ U3-"), 1);
    }
}
