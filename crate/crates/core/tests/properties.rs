mod common;

use common::*;
use proptest::prelude::*;
use sgknot::lifting::lift_degree0;
use sgknot::moves::{apply, canonical_form, MoveKind};
use sgknot::planarity::is_planar;
use sgknot::quandle::{count_colorings, search};
use sgknot::sample::random_planar_knot;
use sgknot::{compute_labels, format_code, parse_code};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn format_then_parse_is_identity(seed in any::<u64>(), max in 0usize..8, zero in any::<bool>()) {
        let mut r = rng(seed);
        let code = seeded_code(&mut r, max, zero);
        prop_assert_eq!(parse_code(&format_code(&code)).unwrap(), code);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn moves_keep_degree_and_their_label_relation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let code = seeded_code(&mut r, 4, false);
        if let Some(t) = random_move(&mut r, &code, &MoveKind::ALL) {
            prop_assert!(t.relation.holds(), "{:?} at {}", t.relation, t.site);
            prop_assert_eq!(t.before.degrees(), t.after.degrees());
            let back = apply(&t.after, &t.inverse).unwrap();
            prop_assert_eq!(canonical_form(&back.after).0, canonical_form(&t.before).0);
        }
    }

    #[test]
    fn local_moves_keep_planar_diagrams_planar(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut code = random_planar_knot(&mut r, 3, 6, 2);
        // R2+ may join strands on different faces and R3 on a triangle that
        // is not a face, so neither is local in general.
        let kinds = [MoveKind::R1Add, MoveKind::R1Remove, MoveKind::R2Remove, MoveKind::Slide4, MoveKind::Cancel5Add, MoveKind::Cancel5Remove];
        for _ in 0..4 {
            let Some(t) = random_move(&mut r, &code, &kinds) else { break };
            prop_assert!(is_planar(&t.after), "{} on {:?}", t.site, code);
            code = t.after;
        }
    }

    #[test]
    fn lifted_crossings_join_sheets_by_their_label(seed in any::<u64>(), lo in -2i64..=0, hi in 0i64..=2) {
        let mut r = rng(seed);
        let code = seeded_code(&mut r, 4, true);
        let d = compute_labels(&code).unwrap();
        let l = lift_degree0(&d, lo, hi).unwrap();
        for c in &l.crossings {
            prop_assert_eq!(c.under_sheet - c.over_sheet, d.crossing_labels[&c.base]);
        }
        for (&id, &i) in &d.crossing_labels {
            let inside = (lo..=hi).filter(|s| (lo..=hi).contains(&(s + i))).count();
            prop_assert_eq!(l.crossings.iter().filter(|c| c.base == id).count(), inside);
        }
        let sheets = (hi - lo + 1) as usize;
        prop_assert_eq!(l.components.len(), sheets * code.num_components());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn colorings_survive_moves(seed in any::<u64>()) {
        let structures: Vec<_> = [(2, 1), (2, 2)].into_iter().flat_map(|(q, n)| search(q, n, 1_000_000).structures).collect();
        let mut r = rng(seed);
        let code = seeded_code(&mut r, 3, false);
        if let Some(t) = random_move(&mut r, &code, &MoveKind::ALL) {
            let (a, b) = (compute_labels(&t.before).unwrap(), compute_labels(&t.after).unwrap());
            // Structures whose S is not a bijection only color mark-free diagrams.
            for s in structures.iter().filter(|s| s.get().s_is_bijective()) {
                prop_assert_eq!(count_colorings(&a, s).unwrap(), count_colorings(&b, s).unwrap(), "{}", t.site);
            }
        }
    }
}
