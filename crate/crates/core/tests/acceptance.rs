//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line
//! straight to stdout, so the lines show up without `--nocapture`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::{Duration, Instant};

use common::{is_convex, random_ideal, random_ladder, random_subset, small_family, triangle};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use symladder_core::biliaison::{descend_chain, descend_step, BiliaisonStep};
use symladder_core::height::h_plus;
use symladder_core::ideal::{mk_ideal, MixedLadderIdeal};
use symladder_core::ladder::{from_corners, validate_ladder, Cell, LadderError};
use symladder_core::poly::groebner::{no_interrupt, ResourceBounds};
use symladder_core::poly::verify::{bad_prime_events, oracle_height, same_ideal, verify_step};
use symladder_core::poly::{CheckStatus, FieldSpec, VerificationReport};

const FP: FieldSpec = FieldSpec::Fp(32003);
const MAX_VARS: usize = 12;

fn report(n: usize, ok: bool, summary: String) {
    let line = format!(
        "criterion {n}: {} {summary}\n",
        if ok { "PASS" } else { "FAIL" }
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    assert!(ok, "criterion {n} failed: {summary}");
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// Every step of every chain over the family whose source ring is small.
fn small_steps() -> Vec<BiliaisonStep> {
    let mut steps = Vec::new();
    for i in small_family() {
        let cert = descend_chain(&i).expect("family ideals descend");
        steps.extend(
            cert.steps
                .into_iter()
                .filter(|s| s.source.ladder().len() <= MAX_VARS),
        );
    }
    steps
}

const BILIAISON_CHECKS: [&str; 7] = [
    "inclusion_J_in_I",
    "inclusion_J_in_Iprime",
    "congruence_identity",
    "ideal_equality_D1I_D2Iprime",
    "height_oracle_I",
    "height_oracle_Iprime",
    "height_oracle_J",
];

fn passes(rep: &VerificationReport, names: &[&str]) -> bool {
    names
        .iter()
        .all(|n| rep.check(n).is_some_and(|c| c.status == CheckStatus::Pass))
}

#[test]
fn criterion_1_height_formula() {
    let t0 = Instant::now();
    let fam = small_family();
    let bounds = ResourceBounds::default();
    let mut mismatches = Vec::new();
    let max_cells = fam.iter().map(|i| i.ladder().len()).max().unwrap_or(0);
    for i in &fam {
        let h = h_plus(i).unwrap().height;
        let o = oracle_height(i, FP, &bounds, &no_interrupt).unwrap();
        if h != o {
            mismatches.push(format!("{h} vs {o} on {i:?}"));
        }
    }
    let el = t0.elapsed();
    let ok = fam.len() >= 100 && mismatches.is_empty() && max_cells <= 15 && el < Duration::from_secs(600);
    report(
        1,
        ok,
        format!(
            "{} ideals (max |L+| = {max_cells}), {} height mismatches, {}",
            fam.len(),
            mismatches.len(),
            secs(el)
        ),
    );
}

#[test]
fn criterion_2_classical_heights() {
    let bounds = ResourceBounds::default();
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 2..=5usize {
        for t in 2..=n {
            let i = mk_ideal(triangle(n), &[Cell::new(n, n)], &[t]).unwrap();
            let expect = (n - t + 1) * (n - t + 2) / 2;
            let h = h_plus(&i).unwrap().height;
            let o = oracle_height(&i, FP, &bounds, &no_interrupt).unwrap();
            count += 1;
            if h != expect || o != expect {
                bad.push(format!("n={n} t={t}: formula {expect}, H+ {h}, oracle {o}"));
            }
        }
    }
    let veronese = h_plus(&mk_ideal(triangle(3), &[Cell::new(3, 3)], &[2]).unwrap())
        .unwrap()
        .height;
    report(
        2,
        bad.is_empty() && veronese == 3,
        format!("{count} cases, veronese height {veronese}, mismatches {bad:?}"),
    );
}

#[test]
fn criterion_3_chain_structure() {
    let fam = small_family();
    let mut bad = Vec::new();
    let mut steps = 0;
    for i in &fam {
        let cert = descend_chain(i).unwrap();
        let tau: usize = i.sizes().iter().sum();
        let s = i.len();
        let h = h_plus(i).unwrap();
        let gens = cert.terminal.enumerate_generators();
        let linear = gens.iter().all(|m| m.size() == 1);
        let gen_cells: BTreeSet<Cell> = gens.iter().flat_map(|m| m.cells()).collect();
        steps += cert.biliaison_count;
        if cert.steps.len() != tau - s
            || cert.biliaison_count != tau - s
            || !linear
            || gens.len() != h.height
            || gen_cells != h.h_plus
            || cert.g_link_count != 2 * (tau - s)
        {
            bad.push(format!("{i:?}"));
        }
    }
    report(
        3,
        bad.is_empty() && !fam.is_empty(),
        format!("{} chains, {steps} steps, {} structural mismatches", fam.len(), bad.len()),
    );
}

#[test]
fn criterion_4_step_verification() {
    let t0 = Instant::now();
    let steps = small_steps();
    let bounds = ResourceBounds::default();
    let mut failures: BTreeMap<&str, usize> = BTreeMap::new();
    let mut skipped = 0;
    for (id, st) in steps.iter().enumerate() {
        let rep = verify_step(st, id, FP, &bounds, &no_interrupt);
        for name in BILIAISON_CHECKS {
            match rep.check(name).map(|c| c.status) {
                Some(CheckStatus::Pass) => {}
                Some(CheckStatus::Skipped) => skipped += 1,
                _ => *failures.entry(name).or_default() += 1,
            }
        }
    }
    let fp_time = t0.elapsed();

    // Rational spot checks on the largest sources.
    let mut by_size: Vec<&BiliaisonStep> = steps.iter().collect();
    by_size.sort_by_key(|s| std::cmp::Reverse(s.source.ladder().len()));
    let mut q_bad = Vec::new();
    for (id, st) in by_size.iter().take(5).enumerate() {
        let q = verify_step(st, id, FieldSpec::Q, &bounds, &no_interrupt);
        let p = verify_step(st, id, FP, &bounds, &no_interrupt);
        if !passes(&q, &BILIAISON_CHECKS) {
            q_bad.push(format!("step {id} over Q"));
        }
        q_bad.extend(bad_prime_events(&q, &p));
    }
    let ok = !steps.is_empty()
        && failures.is_empty()
        && skipped == 0
        && q_bad.is_empty()
        && t0.elapsed() < Duration::from_secs(1200);
    report(
        4,
        ok,
        format!(
            "{} steps over F_32003 in {}, failures {failures:?}, skipped {skipped}; 5 steps over Q, issues {q_bad:?}",
            steps.len(),
            secs(fp_time)
        ),
    );
}

#[test]
fn criterion_5_localization() {
    let steps = small_steps();
    let bounds = ResourceBounds::default();
    let names = ["localization_phi", "localization_psi_phi_identity"];
    let mut good = 0;
    let mut bad_phi = Vec::new();
    let mut bad_ident = 0;
    for (id, st) in steps.iter().enumerate() {
        let rep = verify_step(st, id, FP, &bounds, &no_interrupt);
        if passes(&rep, &names) {
            good += 1;
        }
        if !passes(&rep, &names[..1]) {
            let p = st.pivot_point();
            bad_phi.push(format!("({},{}) t={}", p.row, p.col, st.pivot_size()));
        }
        if !passes(&rep, &names[1..]) {
            bad_ident += 1;
        }
    }
    bad_phi.sort();
    bad_phi.dedup();
    report(
        5,
        good >= 10 && bad_ident == 0,
        format!(
            "{good} of {} steps pass both checks; psi(phi) identity failures {bad_ident}; phi-image failures at pivots {bad_phi:?}",
            steps.len()
        ),
    );
}

#[test]
fn criterion_6_ladder_properties() {
    let mut rng = StdRng::seed_from_u64(0x5eed_1add);
    let bounds = ResourceBounds::default();
    let cases = 600;
    let mut failures = Vec::new();
    let mut groebner_checked = 0;
    for case in 0..cases {
        let n = rng.gen_range(1..=5);

        // Closure axiom against the brute-force convexity oracle.
        let density = rng.gen_range(0.2..0.9);
        let raw = random_subset(&mut rng, n, density);
        match validate_ladder(n, raw.iter().copied()) {
            Ok(_) => {
                if !is_convex(&raw) {
                    failures.push(format!("case {case}: accepted non-convex {raw:?}"));
                }
            }
            Err(LadderError::ClosureViolation { first, second, missing }) => {
                let witnessed = raw.contains(&first)
                    && raw.contains(&second)
                    && !raw.contains(&missing)
                    && first.le_product(missing)
                    && missing.le_product(second);
                if !witnessed || is_convex(&raw) {
                    failures.push(format!("case {case}: bad witness for {raw:?}"));
                }
            }
            Err(LadderError::EmptyLadder) if raw.is_empty() => {}
            Err(e) => failures.push(format!("case {case}: unexpected {e}")),
        }

        // Corner round-trip.
        let l = random_ladder(&mut rng, n);
        let c = l.corners();
        match from_corners(n, &c.lower_inside, &c.upper_inside) {
            Ok(back) if back == l => {}
            other => failures.push(format!("case {case}: round-trip of {l} gave {other:?}")),
        }

        // Normalization is idempotent and keeps the generated ideal.
        let i = random_ideal(&mut rng, &l, 3);
        let nrm = i.normalize();
        if nrm.normalize() != nrm {
            failures.push(format!("case {case}: normalize not idempotent on {i:?}"));
        }
        if l.len() <= MAX_VARS {
            let (a, b) = (i.enumerate_generators(), nrm.enumerate_generators());
            if a != b {
                groebner_checked += 1;
                match same_ideal(&a, &b, FP, &bounds, &no_interrupt) {
                    Ok(true) => {}
                    other => failures.push(format!("case {case}: generators changed ({other:?}) on {i:?}")),
                }
            }
        }
    }
    report(
        6,
        failures.is_empty(),
        format!(
            "{cases} random cases, {groebner_checked} Groebner ideal comparisons, {} failures {:?}",
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    );
}

fn with_sizes(ideal: &MixedLadderIdeal, sizes: &[usize]) -> Option<MixedLadderIdeal> {
    mk_ideal(ideal.ladder().clone(), ideal.points(), sizes).ok()
}

/// Corruptions of one honest step: link size vectors shifted by one, and a
/// target missing one more cell of its pivot box than it should.
fn corruptions(step: &BiliaisonStep) -> Vec<(String, BiliaisonStep)> {
    let mut out = Vec::new();
    let sizes = step.link.sizes();
    for k in 0..sizes.len() {
        for delta in [-1i64, 1] {
            let mut s = sizes.to_vec();
            let t = s[k] as i64 + delta;
            if t < 1 {
                continue;
            }
            s[k] = t as usize;
            if let Some(link) = with_sizes(&step.link, &s) {
                let mut bad = step.clone();
                bad.link = link;
                out.push((format!("link sizes {s:?}"), bad));
            }
        }
    }
    let k = step.pivot_k.min(step.target.len() - 1);
    let p = step.target.points()[k];
    let target_box: Vec<Cell> = step.target.ladder().box_cells(p).collect();
    for c in target_box {
        let cells = step.target.ladder().cells().filter(|x| *x != c);
        let Ok(l) = validate_ladder(step.target.ladder().n(), cells) else {
            continue;
        };
        let Ok(t) = mk_ideal(l, step.target.points(), step.target.sizes()) else {
            continue;
        };
        if t.enumerate_generators() != step.target.enumerate_generators() {
            let mut bad = step.clone();
            bad.target = t;
            out.push((format!("extra deleted cell {c}"), bad));
            break;
        }
    }
    out
}

#[test]
fn criterion_7_negative_controls() {
    let sources = [
        mk_ideal(triangle(3), &[Cell::new(3, 3)], &[2]).unwrap(),
        mk_ideal(triangle(4), &[Cell::new(4, 4)], &[3]).unwrap(),
        mk_ideal(triangle(4), &[Cell::new(4, 4)], &[2]).unwrap(),
        mk_ideal(triangle(4), &[Cell::new(2, 4), Cell::new(4, 4)], &[2, 3]).unwrap(),
    ];
    let bounds = ResourceBounds::default();
    let mut rejected = 0;
    let mut accepted = Vec::new();
    let mut sample = None;
    for src in &sources {
        let src = src.normalize();
        let honest = descend_step(&src).unwrap();
        for (label, bad) in corruptions(&honest) {
            let rep = verify_step(&bad, 0, FP, &bounds, &no_interrupt);
            let failed: Vec<_> = rep
                .checks
                .iter()
                .filter(|c| c.status == CheckStatus::Fail)
                .collect();
            if !failed.is_empty() && failed.iter().all(|c| c.witness.is_some()) {
                rejected += 1;
                sample.get_or_insert_with(|| {
                    format!("{label}: {} witness {}", failed[0].name, failed[0].witness.clone().unwrap())
                });
            } else {
                accepted.push(label);
            }
        }
    }
    report(
        7,
        rejected >= 5 && accepted.is_empty(),
        format!(
            "{rejected} corrupted steps rejected with witnesses, {} not rejected {accepted:?}; e.g. {}",
            accepted.len(),
            sample.unwrap_or_default()
        ),
    );
}
