//! Named verification suites: each re-checks one acceptance claim and
//! reports pass/fail. Checks only consume independent validators and the
//! brute-force oracles; golden data is the hand-transcribed fixture.

use crate::corpus::check_fixed_point_equivalence;
use crate::error::{Budget, Error};
use crate::level::{level_structure, level_structure_on};
use crate::oracle::{oracle_4crown_stack_retract, oracle_single_4crown_retract};
use crate::oracle::is_minimal_automorphic_small;
use crate::poset::{bits, Poset};
use crate::retraction::{
    retractable_and_irreducible_points, verify_retraction, Retraction,
};
use crate::search::is_isomorphic;
use crate::section::{
    all_codes, build_section, extend_level0_permutation, horizon, is_nice, is_section,
    SectionCode,
};
use crate::split::SplitSearchOptions;
use crate::table::{build_segment_table, CLASSIFICATION_FIXTURE};
use crate::theo32::check_theo32;
use crate::tower::{has_32_or_23_level_pair, is_crown4_stack, is_tower_of_nice_sections};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

pub const SUITES: &[&str] = &[
    "table", "oracle", "height6", "counting", "sections", "farley", "theo32", "niederle",
    "properties", "all",
];

fn check(name: &str, pass: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { name: name.to_string(), pass, detail: detail.into() }
}

fn leading_codes(height: usize) -> Vec<SectionCode> {
    all_codes(height).into_iter().filter(|c| c.bit(0) == 1).collect()
}

fn section(code: &SectionCode) -> Poset {
    build_section(code).0
}

pub fn suite_table(_budget: &mut Budget) -> Result<Vec<CheckResult>, Error> {
    let table = build_segment_table(6, SplitSearchOptions::default())?;
    Ok(vec![check(
        "table: height-6 classification matches the golden fixture",
        table.to_tsv() == CLASSIFICATION_FIXTURE,
        "63 rows, flags and lower base levels",
    )])
}

pub fn suite_oracle(budget: &mut Budget) -> Result<Vec<CheckResult>, Error> {
    let table = build_segment_table(5, SplitSearchOptions::default())?;
    let mut bad = Vec::new();
    for h in 1..=5 {
        for code in leading_codes(h) {
            let flag = table.flag(&code);
            let oracle = oracle_4crown_stack_retract(&section(&code), budget)?.is_some();
            if flag != oracle {
                bad.push(code.to_string());
            }
        }
    }
    Ok(vec![check(
        "oracle: split-method flags agree with the brute oracle up to height 5",
        bad.is_empty(),
        if bad.is_empty() { "31 codes compared".to_string() } else { format!("disagree: {bad:?}") },
    )])
}

pub fn suite_height6(budget: &mut Budget) -> Result<Vec<CheckResult>, Error> {
    let table = build_segment_table(6, SplitSearchOptions::default())?;
    let negatives = ["111011", "111001", "101011", "110001", "110011"];
    let mut bad = Vec::new();
    for code in negatives {
        let c: SectionCode = code.parse().unwrap();
        if table.flag(&c) || oracle_4crown_stack_retract(&section(&c), budget)?.is_some() {
            bad.push(code);
        }
    }
    Ok(vec![check(
        "height6: the five negative height-6 codes fail both methods",
        bad.is_empty(),
        if bad.is_empty() { "5 codes".to_string() } else { format!("unexpected retract: {bad:?}") },
    )])
}

pub fn suite_counting(budget: &mut Budget) -> Result<Vec<CheckResult>, Error> {
    let mut out = Vec::new();
    for n in 2..=4usize {
        let posets: Vec<Poset> = all_codes(n)
            .into_iter()
            .filter(|c| c.is_n2())
            .map(|c| section(&c))
            .collect();
        let mut classes: Vec<&Poset> = Vec::new();
        for p in &posets {
            let mut fresh = true;
            for q in &classes {
                if is_isomorphic(p, q, budget)? {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                classes.push(p);
            }
        }
        out.push(check(
            &format!("counting: height {n} has 2^{} isomorphism classes", n - 2),
            classes.len() == 1 << (n - 2),
            format!("{} classes by brute isomorphism", classes.len()),
        ));
    }
    for n in 5..=6usize {
        let count = all_codes(n).into_iter().filter(|c| c.is_n2()).count();
        out.push(check(
            &format!("counting: height {n} has 2^{} distinct codes", n - 2),
            count == 1 << (n - 2),
            format!("{count} codes"),
        ));
    }
    Ok(out)
}

pub fn suite_sections(budget: &mut Budget) -> Result<Vec<CheckResult>, Error> {
    let mut bad = Vec::new();
    for h in 1..=6 {
        for code in leading_codes(h) {
            let p = section(&code);
            if !is_section(&p) {
                bad.push(format!("{code}: not a section"));
                continue;
            }
            // The three characterizations of nice must agree, and the
            // built section is nice exactly when crowned at both ends.
            let nice = is_nice(&p) == Ok(true);
            let (retractable, irreducible) = retractable_and_irreducible_points(&p);
            if nice != (retractable == 0) || nice != (irreducible == 0) {
                bad.push(format!("{code}: niceness characterizations disagree"));
            }
            if nice != (code.is_ls() && code.is_us()) {
                bad.push(format!("{code}: niceness vs code ends"));
            }
            if code.is_n2() && horizon(&p) != Ok(2) {
                bad.push(format!("{code}: horizon"));
            }
            if crate::pairtype::is_automorphic_width3(&p) != Ok(true) {
                bad.push(format!("{code}: not automorphic"));
            }
            let dual_built = section(&code.reversed());
            if !is_isomorphic(&p.dual(), &dual_built, budget)? {
                bad.push(format!("{code}: dual is not the reversed code"));
            }
            if code.is_n2() {
                let bottom: Vec<usize> =
                    bits(level_structure(&p).level(0)).collect();
                let mut autos = std::collections::BTreeSet::new();
                for perm in
                    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
                {
                    let q = [bottom[perm[0]], bottom[perm[1]], bottom[perm[2]]];
                    match extend_level0_permutation(&p, &q) {
                        Ok(a) => {
                            autos.insert(a);
                        }
                        Err(_) => bad.push(format!("{code}: permutation fails to extend")),
                    }
                }
                if autos.len() != 6 {
                    bad.push(format!("{code}: expected 6 distinct automorphisms"));
                }
            }
        }
    }
    Ok(vec![check(
        "sections: construction, niceness, horizon, duality and automorphisms",
        bad.is_empty(),
        if bad.is_empty() { "63 codes".to_string() } else { format!("{bad:?}") },
    )])
}

pub fn suite_farley(budget: &mut Budget) -> Result<Vec<CheckResult>, Error> {
    let table = build_segment_table(6, SplitSearchOptions::default())?;
    let mut out = Vec::new();
    let mut flags = Vec::new();
    for h in 1..=6 {
        let code: SectionCode = "1".repeat(h).parse().unwrap();
        flags.push((h, table.flag(&code)));
    }
    out.push(check(
        "farley: all-ones codes are flagged exactly at heights 3 and 6",
        flags.iter().all(|&(h, f)| f == (h == 3 || h == 6)),
        format!("{flags:?}"),
    ));
    let m1 = is_minimal_automorphic_small(&section(&"1".parse().unwrap()), budget)?;
    let m2 = is_minimal_automorphic_small(&section(&"11".parse().unwrap()), budget)?;
    let m3 = is_minimal_automorphic_small(&section(&"111".parse().unwrap()), budget)?;
    out.push(check(
        "farley: crown stacks of heights 1 and 2 are minimal automorphic, height 3 is not",
        m1 && m2 && !m3,
        format!("heights 1..3: {m1} {m2} {m3}"),
    ));
    let witness = oracle_4crown_stack_retract(&section(&"111".parse().unwrap()), budget)?;
    let ok = match &witness {
        Some(r) => {
            let p = section(&"111".parse().unwrap());
            is_crown4_stack(&p, r.image) && level_structure_on(&p, r.image).height() == 2
        }
        None => false,
    };
    out.push(check(
        "farley: the height-3 crown stack retracts onto a height-2 4-crown stack",
        ok,
        "oracle witness image",
    ));
    Ok(out)
}

pub fn suite_theo32(budget: &mut Budget) -> Result<Vec<CheckResult>, Error> {
    let mut low = Vec::new();
    for h in 2..=5 {
        for code in all_codes(h).into_iter().filter(|c| c.is_n2()) {
            if check_theo32(&section(&code), &code, budget)?.is_some() {
                low.push(code.to_string());
            }
        }
    }
    let mut positives = Vec::new();
    let mut bad = Vec::new();
    for code in all_codes(6).into_iter().filter(|c| c.is_n2()) {
        let p = section(&code);
        if let Some(d) = check_theo32(&p, &code, budget)? {
            positives.push(code.to_string());
            if verify_retraction(&p, &d.retraction).is_err()
                || !is_tower_of_nice_sections(&p, d.retraction.image)
                || !has_32_or_23_level_pair(&p, d.retraction.image)
            {
                bad.push(code.to_string());
            }
        }
    }
    let expect = ["100101", "101001", "101011", "110101"];
    Ok(vec![
        check(
            "theo32: no three-segment decomposition below height 6",
            low.is_empty(),
            if low.is_empty() { "heights 2-5".to_string() } else { format!("{low:?}") },
        ),
        check(
            "theo32: exactly four height-6 codes, each with a verified tower retract",
            positives == expect && bad.is_empty(),
            format!("positives: {positives:?}"),
        ),
    ])
}

pub fn suite_niederle(budget: &mut Budget) -> Result<Vec<CheckResult>, Error> {
    let stats = check_fixed_point_equivalence(7, budget)?;
    Ok(vec![check(
        "niederle: fpf endomorphism iff tower-of-nice-sections retract, posets up to 7 points",
        true,
        format!(
            "{} connected width-le-3 posets, {} with an fpf endomorphism",
            stats.checked, stats.with_fpf_endomorphism
        ),
    )])
}

pub fn suite_properties(budget: &mut Budget) -> Result<Vec<CheckResult>, Error> {
    let mut out = Vec::new();

    // The validator rejects tampered maps.
    let p = section(&"11".parse().unwrap());
    let good = Retraction::identity(&p);
    let mut non_idempotent = good.map.clone();
    non_idempotent[0] = 1;
    non_idempotent[1] = 0;
    let mut non_monotone = good.map.clone();
    let ls = level_structure(&p);
    non_monotone[bits(ls.level(2)).next().unwrap()] = bits(ls.level(0)).next().unwrap();
    out.push(check(
        "properties: the retraction validator accepts identity and rejects tampering",
        verify_retraction(&p, &good).is_ok()
            && verify_retraction(&p, &Retraction::new(p.all_mask(), non_idempotent)).is_err()
            && verify_retraction(&p, &Retraction::new(p.all_mask(), non_monotone)).is_err(),
        "idempotence and order preservation",
    ));

    // Push-from-below: on every oracle witness up to height 4, a 2-point
    // image level whose fibers both reach below its own level forces the
    // retraction to map everything above onto the image levels above.
    let mut push_bad = Vec::new();
    let mut push_seen = 0;
    for h in 1..=4 {
        for code in leading_codes(h) {
            let p = section(&code);
            let Some(r) = oracle_4crown_stack_retract(&p, budget)? else { continue };
            let lsp = level_structure(&p);
            let lsr = level_structure_on(&p, r.image);
            for l in 0..=lsr.height() {
                let level = lsr.level(l);
                if level.count_ones() != 2 {
                    continue;
                }
                let rho = bits(level).map(|x| lsp.lambda[x]).max().unwrap();
                if rho == 0 || rho >= lsp.height() {
                    continue;
                }
                let below = lsp.range(0, rho - 1);
                let both = bits(level).all(|v| {
                    bits(r.domain).any(|x| r.map[x] == v && 1u64 << x & below != 0)
                });
                if !both {
                    continue;
                }
                push_seen += 1;
                let upper = lsp.range(rho + 1, lsp.height());
                let mapped = bits(upper).fold(0u64, |m, x| m | 1 << r.map[x]);
                let expected = lsr.range(l + 1, lsr.height());
                if mapped != expected {
                    push_bad.push(code.to_string());
                }
            }
        }
    }
    out.push(check(
        "properties: push-from-below holds on all oracle witnesses up to height 4",
        push_bad.is_empty(),
        format!("{push_seen} applicable image levels"),
    ));

    // The search criteria are pure prunes: disabling them changes nothing
    // up to height 5.
    let with = build_segment_table(5, SplitSearchOptions { use_criteria: true, ..Default::default() })?;
    let without = build_segment_table(5, SplitSearchOptions { use_criteria: false, ..Default::default() })?;
    out.push(check(
        "properties: criteria-free search reproduces the table up to height 5",
        with.to_tsv() == without.to_tsv(),
        "pruning soundness",
    ));

    // No single 4-crown retract at heights 3 and 4.
    let mut single_bad = Vec::new();
    for h in 3..=4 {
        for code in all_codes(h).into_iter().filter(|c| c.is_n2()) {
            if oracle_single_4crown_retract(&section(&code), budget)?.is_some() {
                single_bad.push(code.to_string());
            }
        }
    }
    out.push(check(
        "properties: no single 4-crown retract at heights 3 and 4",
        single_bad.is_empty(),
        if single_bad.is_empty() { "6 codes".to_string() } else { format!("{single_bad:?}") },
    ));

    // Any 3-point level of a tower retract spans at most one level of P.
    let mut span_bad = Vec::new();
    for code in all_codes(6).into_iter().filter(|c| c.is_n2()) {
        let p = section(&code);
        if let Some(d) = check_theo32(&p, &code, budget)? {
            let lsp = level_structure(&p);
            let lsr = level_structure_on(&p, d.retraction.image);
            for l in 0..=lsr.height() {
                let level = lsr.level(l);
                if level.count_ones() == 3 {
                    let lam: Vec<usize> = bits(level).map(|x| lsp.lambda[x]).collect();
                    if lam.iter().max().unwrap() - lam.iter().min().unwrap() > 1 {
                        span_bad.push(code.to_string());
                    }
                }
            }
        }
    }
    out.push(check(
        "properties: 3-point tower-retract levels span at most one level",
        span_bad.is_empty(),
        "checked on the height-6 tower retracts",
    ));

    // The flag is self-dual on crowned-both-ends codes.
    let table = build_segment_table(6, SplitSearchOptions::default())?;
    let mut dual_bad = Vec::new();
    for h in 2..=6 {
        for code in all_codes(h).into_iter().filter(|c| c.is_n2()) {
            if table.flag(&code) != table.flag(&code.reversed()) {
                dual_bad.push(code.to_string());
            }
        }
    }
    out.push(check(
        "properties: the flag is invariant under code reversal",
        dual_bad.is_empty(),
        if dual_bad.is_empty() { "31 codes".to_string() } else { format!("{dual_bad:?}") },
    ));

    Ok(out)
}

/// Runs one named suite ("all" chains every suite).
pub fn run_suite(name: &str, budget: &mut Budget) -> Result<Vec<CheckResult>, Error> {
    match name {
        "table" => suite_table(budget),
        "oracle" => suite_oracle(budget),
        "height6" => suite_height6(budget),
        "counting" => suite_counting(budget),
        "sections" => suite_sections(budget),
        "farley" => suite_farley(budget),
        "theo32" => suite_theo32(budget),
        "niederle" => suite_niederle(budget),
        "properties" => suite_properties(budget),
        "all" => {
            let mut out = Vec::new();
            for s in SUITES.iter().filter(|&&s| s != "all") {
                out.extend(run_suite(s, budget)?);
            }
            Ok(out)
        }
        _ => Err(Error::BadCode(format!("unknown suite {name}"))),
    }
}
