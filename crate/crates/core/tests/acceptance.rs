//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use wreath::analysis::{
    commutator_witness, conormality_enum, conormality_gcd, frattini_check, minimality_drop_test,
    AnalysisError, DropVerdict,
};
use wreath::builders::{
    cyclic_factors, cyclic_wreath_presentation, flattened_wreath_fold, multi_wreath_presentation,
    sylow_presentation, wreath_presentation, WreathMeta,
};
use wreath::enumeration::{todd_coxeter, verify_table, Enumeration, GroupOrder};
use wreath::fileio;
use wreath::grouptable::{perm_closure, sylow_group_order, sylow_perm_generators, FiniteGroup};
use wreath::oracle::hom_certificate;
use wreath::presentation::Presentation;
use wreath::words::Word;

const CAP: usize = 100_000;
const ORACLE_LIMIT: usize = 1 << 20;

fn conclude(n: u32, desc: &str, ok: bool) {
    println!(
        "criterion {n} ({desc}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed");
}

/// Enumerates with the trivial subgroup, independently re-verifies every
/// closed table, and returns the order.
fn verified_order(p: &Presentation, cap: usize) -> GroupOrder {
    match todd_coxeter(p, &[], cap).expect("well-formed presentation") {
        Enumeration::Closed(ct) => {
            verify_table(p, &[], &ct).expect("closed table failed verification");
            GroupOrder::Finite(ct.rows())
        }
        Enumeration::Capped(stats) => GroupOrder::Unknown(stats),
    }
}

fn finite_order(p: &Presentation, cap: usize) -> usize {
    match verified_order(p, cap) {
        GroupOrder::Finite(n) => n,
        GroupOrder::Unknown(stats) => panic!("enumeration capped: {stats:?}"),
    }
}

fn cyclic_wreath_pair(n: usize, m: usize) -> (Presentation, WreathMeta) {
    let ph = Presentation::parse(&["y"], &[format!("y^{n}")]).unwrap();
    let pg = Presentation::parse(&["x"], &[format!("x^{m}")]).unwrap();
    wreath_presentation(&ph, &pg, &FiniteGroup::cyclic(m).unwrap(), &[1]).unwrap()
}

// (n, m, n^m * m): the expected order of C_n wr C_m.
const ORDER_LAW_CASES: [(usize, usize, usize); 5] =
    [(2, 2, 8), (2, 3, 24), (3, 2, 18), (2, 4, 64), (3, 4, 324)];

#[test]
fn criterion_1_wreath_order_law() {
    let mut ok = true;
    for (n, m, expect) in ORDER_LAW_CASES {
        let (p, _) = cyclic_wreath_pair(n, m);
        let start = Instant::now();
        let order = finite_order(&p, CAP);
        let elapsed = start.elapsed();
        let hit = order == expect && elapsed < Duration::from_secs(5);
        if !hit {
            eprintln!("C{n} wr C{m}: order {order} (expected {expect}) in {elapsed:?}");
        }
        ok &= hit;
    }
    conclude(1, "wreath order law |H|^|G| * |G| on five cyclic pairs", ok);
}

#[test]
fn criterion_2_homomorphism_certificate() {
    let mut ok = true;
    for (n, m, expect) in ORDER_LAW_CASES {
        let (p, meta) = cyclic_wreath_pair(n, m);
        let report = hom_certificate(&p, &meta, CAP, ORACLE_LIMIT).unwrap();
        let hit = report.pass() && report.oracle_order == expect;
        if !hit {
            eprintln!("C{n} wr C{m}: {report:?}");
        }
        ok &= hit;
    }
    conclude(
        2,
        "relators hold, images generate, orders match the concrete wreath",
        ok,
    );
}

#[test]
fn criterion_3_flattening_matches_fold() {
    let mut ok = true;
    for orders in [vec![2, 2, 2], vec![2, 3], vec![3, 3]] {
        let parts = cyclic_factors(&orders).unwrap();
        let direct = multi_wreath_presentation(&parts).unwrap();
        let folded = flattened_wreath_fold(&parts).unwrap();
        let relator_match = direct.0.relators() == folded.0.relators();
        let direct_json = fileio::encode(&direct.0, Some(&direct.1));
        let folded_json = fileio::encode(&folded.0, Some(&folded.1));
        let hit = relator_match && direct_json == folded_json;
        if !hit {
            eprintln!("{orders:?}: direct and folded construction disagree");
        }
        ok &= hit;
    }
    conclude(
        3,
        "multi-wreath emission equals the two-factor fold, byte-identical JSON",
        ok,
    );
}

#[test]
fn criterion_4_sylow_corollary() {
    let start = Instant::now();
    let mut ok = true;
    for (p, n, expect) in [(2u64, 2u32, 8usize), (2, 3, 128), (3, 2, 81)] {
        let (pres, _) = sylow_presentation(p, n).unwrap();
        let enumerated = finite_order(&pres, CAP);
        let gens = sylow_perm_generators(p, n).unwrap();
        let closure = perm_closure(&gens, expect + 1).unwrap();
        let formula = sylow_group_order(p, n).unwrap() as usize;
        let hit = enumerated == expect && closure == expect && formula == expect;
        if !hit {
            eprintln!(
                "p={p} n={n}: enumerated {enumerated}, closure {closure}, formula {formula}"
            );
        }
        ok &= hit;
    }
    ok &= start.elapsed() < Duration::from_secs(30);
    conclude(
        4,
        "Sylow subgroup order agrees between presentation, closure and formula",
        ok,
    );
}

#[test]
fn criterion_5_example_shape() {
    let mut ok = true;
    for (n, m) in [(2, 2), (2, 3), (3, 4)] {
        let direct = cyclic_wreath_presentation(n, m).unwrap();
        let routed = cyclic_wreath_pair(n, m);
        let hit = direct.0.relators().len() == 2 + m / 2 && direct == routed;
        if !hit {
            eprintln!("({n},{m}): closed-form and builder outputs differ");
        }
        ok &= hit;
    }
    conclude(
        5,
        "closed-form cyclic wreath has 2 + floor(m/2) relators and matches the builder",
        ok,
    );
}

#[test]
fn criterion_6_minimality_drop_tests() {
    let mut ok = true;
    for (n, m) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let (p, _) = cyclic_wreath_presentation(n, m).unwrap();
        let expect = n.pow(m as u32) * m;
        let reports = minimality_drop_test(&p, expect, 10_000).unwrap();
        for r in &reports {
            let needed = matches!(r.verdict, DropVerdict::Needed | DropVerdict::NeededCap);
            if !needed {
                eprintln!("C{n} wr C{m}: relator `{}` reported {:?}", r.relator, r.verdict);
            }
            ok &= needed;
        }
    }
    let control = Presentation::parse(&["x"], &["x^2", "x^4"]).unwrap();
    let reports = minimality_drop_test(&control, 2, 10_000).unwrap();
    ok &= reports[1].relator == "x^4" && reports[1].verdict == DropVerdict::Redundant;
    conclude(
        6,
        "every wreath relator needed; control case flags x^4 redundant",
        ok,
    );
}

/// Twelve presentations with all cyclic-quotient orders finite.
fn corpus() -> Vec<Presentation> {
    let parse = |names: &[&str], rels: &[&str]| Presentation::parse(names, rels).unwrap();
    vec![
        parse(&["y"], &["y^3"]),
        parse(&["a", "b"], &["a^3", "b^3", "(a*b)^3"]),
        parse(&["a", "b"], &["a*b^-1"]),
        cyclic_wreath_presentation(2, 2).unwrap().0,
        cyclic_wreath_presentation(2, 3).unwrap().0,
        cyclic_wreath_presentation(3, 2).unwrap().0,
        cyclic_wreath_presentation(2, 4).unwrap().0,
        sylow_presentation(2, 2).unwrap().0,
        sylow_presentation(2, 3).unwrap().0,
        sylow_presentation(3, 2).unwrap().0,
        parse(&["x", "y"], &["x^2", "y^2", "[x,y]"]),
        parse(&["a", "b"], &["a^2", "b^2", "(a*b)^3"]),
    ]
}

#[test]
fn criterion_7_conormality_coherence() {
    let mut ok = true;
    let corpus = corpus();
    assert_eq!(corpus.len(), 12);
    for p in &corpus {
        let by_gcd = conormality_gcd(p);
        for g in 0..p.gen_count() {
            let agrees = match conormality_enum(p, g, CAP).unwrap() {
                GroupOrder::Finite(n) => n as u64 == by_gcd.quotient_order(g),
                GroupOrder::Unknown(_) => by_gcd.quotient_order(g) == 0,
            };
            if !agrees {
                eprintln!("gcd/enum disagree on generator {g} of {:?}", p.label());
            }
            ok &= agrees;
        }
    }
    // conormality propagates through the wreath construction
    for (n, m, _) in ORDER_LAW_CASES {
        let (p, _) = cyclic_wreath_pair(n, m);
        ok &= conormality_gcd(&p).all_conormal();
    }
    let nonabelian = Presentation::parse(&["a", "b"], &["a^3", "b^3", "(a*b)^3"]).unwrap();
    let c2 = Presentation::parse(&["x"], &["x^2"]).unwrap();
    let (w, _) =
        wreath_presentation(&nonabelian, &c2, &FiniteGroup::cyclic(2).unwrap(), &[1]).unwrap();
    ok &= conormality_gcd(&w).all_conormal();
    // Sylow presentations pass the Frattini check at q = p
    for (p, n) in [(2u64, 2u32), (2, 3), (3, 2)] {
        let (pres, _) = sylow_presentation(p, n).unwrap();
        ok &= frattini_check(&pres, p).unwrap();
    }
    conclude(
        7,
        "gcd and enumeration agree; conormality propagates; Frattini holds at q = p",
        ok,
    );
}

#[test]
fn criterion_8_commutator_witness() {
    let mut ok = true;
    for p in corpus() {
        let report = conormality_gcd(&p);
        for u in 0..p.gen_count() {
            for v in 0..p.gen_count() {
                let hypothesis =
                    report.quotient_order(u) != 1 && report.quotient_order(v) != 1;
                match commutator_witness(&p, u, v) {
                    Ok(w) if hypothesis => {
                        let hit = w.nontrivial() && w.normal_form.len() == 4;
                        if !hit {
                            eprintln!("degenerate witness for ({u},{v}): {w:?}");
                        }
                        ok &= hit;
                    }
                    Err(AnalysisError::HypothesisFailure { .. }) if !hypothesis => {}
                    other => {
                        eprintln!("unexpected witness outcome for ({u},{v}): {other:?}");
                        ok = false;
                    }
                }
            }
        }
    }
    conclude(
        8,
        "4-syllable witness for every conormal pair, hypothesis failures rejected",
        ok,
    );
}

#[test]
fn criterion_9_enumerator_soundness() {
    // Reproduce every enumeration behind criteria 1-8 and re-verify each
    // closed table with the independent relator-scan check.
    let mut presentations: Vec<Presentation> = Vec::new();
    for (n, m, _) in ORDER_LAW_CASES {
        presentations.push(cyclic_wreath_pair(n, m).0);
    }
    for orders in [vec![2, 2, 2], vec![2, 3], vec![3, 3]] {
        let parts = cyclic_factors(&orders).unwrap();
        presentations.push(multi_wreath_presentation(&parts).unwrap().0);
    }
    for (p, n) in [(2u64, 2u32), (2, 3), (3, 2)] {
        presentations.push(sylow_presentation(p, n).unwrap().0);
        for f in sylow_presentation(p, n).unwrap().1.factors {
            presentations.push(f);
        }
    }
    for p in corpus() {
        // the conormality cross-check quotients
        for g in 0..p.gen_count() {
            let mut relators = p.relators().to_vec();
            for z in 0..p.gen_count() {
                if z != g {
                    relators.push(Word::generator(z));
                }
            }
            presentations.push(Presentation::new(p.generators().to_vec(), relators, None));
        }
        presentations.push(p);
    }
    for (n, m) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let (p, _) = cyclic_wreath_presentation(n, m).unwrap();
        for i in 0..p.relators().len() {
            let mut relators = p.relators().to_vec();
            relators.remove(i);
            presentations.push(Presentation::new(p.generators().to_vec(), relators, None));
        }
        presentations.push(p);
    }
    presentations.push(Presentation::parse(&["x"], &["x^2", "x^4"]).unwrap());
    presentations.push(Presentation::parse(&["x"], &["x^4"]).unwrap());
    presentations.push(Presentation::parse(&["x"], &["x^2"]).unwrap());

    let mut closed = 0usize;
    let mut capped = 0usize;
    for p in &presentations {
        match todd_coxeter(&p, &[], 10_000).expect("well-formed presentation") {
            Enumeration::Closed(ct) => {
                verify_table(p, &[], &ct).expect("closed table failed verification");
                closed += 1;
            }
            Enumeration::Capped(_) => capped += 1,
        }
    }
    println!("  verified {closed} closed tables ({capped} enumerations capped)");
    conclude(
        9,
        "post-hoc relator-scan verification on every closed table",
        closed > 40,
    );
}
