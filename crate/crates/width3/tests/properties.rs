//! Cross-cutting invariants checked end to end, complementing the
//! per-module unit tests and the acceptance gate.

use width3::{
    all_codes, build_section, build_segment_table, enumerate_posets, extend_level0_permutation,
    find_retraction_onto, incomparable_pairs, is_automorphic_width3, level_structure,
    oracle_4crown_stack_retract, search_retractive_split, validate_split, Budget, Poset,
    SplitSearchOptions,
};

fn section(code: &str) -> Poset {
    build_section(&code.parse().unwrap()).0
}

#[test]
fn two_antichain_retract_iff_disconnected() {
    let mut budget = Budget::default();
    for group in enumerate_posets(5, &mut budget).unwrap() {
        for p in group {
            let mut has = false;
            for pair in incomparable_pairs(&p, p.all_mask()) {
                if find_retraction_onto(&p, p.all_mask(), pair, &mut Budget::default())
                    .unwrap()
                    .is_some()
                {
                    has = true;
                    break;
                }
            }
            assert_eq!(has, !p.is_connected_on(p.all_mask()));
        }
    }
}

#[test]
fn rotation_and_transpositions_extend_on_the_crown_pair() {
    let p = section("11");
    let bottom: Vec<usize> = width3::bits(level_structure(&p).level(0)).collect();
    // The 3-cycle extends to the rotation; transpositions extend too.
    for perm in [[1, 2, 0], [1, 0, 2]] {
        let q = [bottom[perm[0]], bottom[perm[1]], bottom[perm[2]]];
        let a = extend_level0_permutation(&p, &q).unwrap();
        assert!((0..p.len()).any(|x| a[x] != x));
    }
}

#[test]
fn ordinal_sums_of_sections_stay_automorphic() {
    let sum = Poset::ordinal_sum(&[section("1"), Poset::antichain(2), section("10")]).unwrap();
    assert_eq!(is_automorphic_width3(&sum), Ok(true));
}

#[test]
fn split_method_agrees_with_oracle_up_to_height_4() {
    let table = build_segment_table(4, SplitSearchOptions::default()).unwrap();
    for h in 2..=4 {
        for code in all_codes(h) {
            if !code.is_n2() {
                continue;
            }
            let p = build_section(&code).0;
            let cert = search_retractive_split(
                &p,
                &code,
                &table,
                SplitSearchOptions::default(),
                &mut Budget::default(),
            )
            .unwrap();
            if let Some(c) = &cert {
                assert!(validate_split(&p, c), "{code}");
            }
            let oracle = oracle_4crown_stack_retract(&p, &mut Budget::default()).unwrap();
            assert_eq!(cert.is_some(), oracle.is_some(), "{code}");
        }
    }
}

#[test]
fn built_sections_round_trip_through_json() {
    for code in all_codes(3) {
        let p = build_section(&code).0;
        let q = Poset::from_json(&p.to_json()).unwrap();
        assert_eq!(p.len(), q.len());
        for x in 0..p.len() {
            for y in 0..p.len() {
                assert_eq!(p.lt(x, y), q.lt(x, y));
            }
        }
    }
}
