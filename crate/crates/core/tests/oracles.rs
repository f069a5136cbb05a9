mod common;

use common::oracles::{self, kauffman_bracket, poly, Poly};
use common::*;
use rand::Rng;
use sgknot::bracket::{evaluate, state_sum, Specialization};
use sgknot::planarity::diagram_genus;
use sgknot::quandle::{count_colorings, search, CertifiedQuandle, LabeledQuandle};
use sgknot::sample::random_planar_knot;
use sgknot::unknotting::unknotting_bound;
use sgknot::{compute_labels, parse_code, MarkedGaussCode, Role, Sign, Symbol};

fn library_kauffman(code: &MarkedGaussCode) -> Poly {
    let d = compute_labels(code).unwrap();
    evaluate(&state_sum(&d), &Specialization::kauffman(0)).unwrap().terms().collect()
}

#[test]
fn kauffman_oracle_knows_the_trefoil() {
    // Right-handed trefoil, unknot normalized to d.
    let expected = poly(&[(1, 7), (1, 3), (1, -1), (-1, -9)]);
    assert_eq!(kauffman_bracket(&parse_code(TREFOIL).unwrap()), expected);
    assert_eq!(kauffman_bracket(&parse_code("*").unwrap()), poly(&[(-1, 2), (-1, -2)]));
    // Figure-eight is amphichiral: its bracket is symmetric under A -> 1/A.
    let f8 = kauffman_bracket(&parse_code(FIGURE_EIGHT).unwrap());
    let mirrored: Poly = f8.iter().map(|(e, c)| (-e, *c)).collect();
    assert_eq!(f8, mirrored);
}

#[test]
fn state_sum_matches_brute_force_kauffman() {
    let mut rng = rng(11);
    for _ in 0..300 {
        let shape = Shape { components: rng.gen_range(1..=2), crossings: rng.gen_range(0..=6), mark_pairs: 0, degree: 0 };
        let code = random_code(&mut rng, &shape);
        assert_eq!(library_kauffman(&code), kauffman_bracket(&code), "{:?}", code);
    }
}

#[test]
fn state_sum_is_multiplicative_on_disjoint_unions() {
    let mut rng = rng(12);
    for _ in 0..100 {
        let a = seeded_code(&mut rng, 3, false);
        let b = seeded_code(&mut rng, 3, false);
        let shift = a.next_crossing_id();
        let mut comps = a.components.clone();
        comps.extend(b.components.iter().map(|seq| {
            seq.iter()
                .map(|s| match *s {
                    Symbol::Pass { id, role, sign } => Symbol::Pass { id: id + shift, role, sign },
                    m => m,
                })
                .collect()
        }));
        let mut bases = a.base_points.clone();
        bases.extend(&b.base_points);
        let u = MarkedGaussCode::with_base_points(comps, bases);
        let sa = state_sum(&compute_labels(&a).unwrap());
        let sb = state_sum(&compute_labels(&b).unwrap());
        assert_eq!(state_sum(&compute_labels(&u).unwrap()), sa.mul(&sb));
    }
}

fn structures() -> Vec<CertifiedQuandle> {
    let mut out: Vec<CertifiedQuandle> = (1..=4).map(|q| CertifiedQuandle::new(LabeledQuandle::trivial(q, 2)).unwrap()).collect();
    for (q, n) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let r = search(q, n, 10_000_000);
        assert!(r.complete);
        out.extend(r.structures);
    }
    out
}

#[test]
fn colorings_match_brute_force() {
    let structures = structures();
    let mut rng = rng(13);
    let mut checked = 0;
    while checked < 150 {
        let code = seeded_code(&mut rng, 3, false);
        let arcs: usize = code.components.iter().map(|c| c.len().max(1)).sum();
        if arcs > 8 {
            continue;
        }
        checked += 1;
        let d = compute_labels(&code).unwrap();
        for s in &structures {
            if s.get().q.pow(arcs as u32) > 70_000 || (code.num_marks() > 0 && !s.get().s_is_bijective()) {
                continue;
            }
            assert_eq!(count_colorings(&d, s).unwrap(), oracles::brute_colorings(&code, s.get()), "{:?} {:?}", code, s.get());
        }
    }
}

#[test]
fn labels_match_independent_walk() {
    let mut rng = rng(14);
    for _ in 0..500 {
        let code = seeded_code(&mut rng, 5, false);
        assert_eq!(compute_labels(&code).unwrap().crossing_labels, oracles::crossing_labels(&code));
    }
}

/// A random one-component Gauss word with random roles.
fn random_word(rng: &mut rand::rngs::StdRng, n: u32) -> Vec<(u32, Role)> {
    use rand::seq::SliceRandom;
    let mut w: Vec<(u32, Role)> = (1..=n).flat_map(|id| [(id, Role::Over), (id, Role::Under)]).collect();
    w.shuffle(rng);
    w
}

#[test]
fn face_tracing_agrees_with_rosenstiehl() {
    let mut rng = rng(15);
    let (mut planar, mut total) = (0, 0);
    for _ in 0..400 {
        let n = rng.gen_range(1..=6);
        let word = random_word(&mut rng, n);
        let letters: Vec<u32> = word.iter().map(|w| w.0).collect();
        let some_sign_planar = (0u32..1 << n).any(|signs| {
            let seq = word
                .iter()
                .map(|&(id, role)| Symbol::Pass { id, role, sign: if signs >> (id - 1) & 1 == 1 { Sign::Neg } else { Sign::Pos } })
                .collect();
            diagram_genus(&MarkedGaussCode::new(vec![seq])) == 0
        });
        assert_eq!(some_sign_planar, oracles::rosenstiehl(&letters), "{:?}", word);
        planar += some_sign_planar as usize;
        total += 1;
    }
    // Both outcomes must actually occur.
    assert!(planar > 20 && planar < total - 20, "{} of {}", planar, total);
}

#[test]
fn unknotting_bound_dominates_bfs_minimum() {
    let mut rng = rng(16);
    let mut corpus: Vec<MarkedGaussCode> = vec![parse_code(TREFOIL).unwrap(), parse_code("*O1+ M+ U1+").unwrap()];
    while corpus.len() < 12 {
        let marks = rng.gen_range(0..=2);
        let c = random_planar_knot(&mut rng, 3, 4, marks);
        if c.num_crossings() <= 5 {
            corpus.push(c);
        }
    }
    for code in corpus {
        let bound = unknotting_bound(&code).unwrap();
        let r = oracles::min_crossing_changes(&code, code.num_symbols(), 50_000);
        let cost = r.cost.unwrap_or_else(|| panic!("no trivial form reached from {:?} ({} states)", code, r.states));
        assert!(cost <= bound, "{:?}: bfs {} bound {}", code, cost, bound);
    }
    let r = oracles::min_crossing_changes(&parse_code(TREFOIL).unwrap(), 8, 50_000);
    assert_eq!(r.cost, Some(1));
}
