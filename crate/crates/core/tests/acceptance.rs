//! Acceptance criteria: one PASS/FAIL line each, exact comparisons only.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use orthodontia::diffops::phi;
use orthodontia::families::{double_schubert, lascoux, script_s, stable_grothendieck};
use orthodontia::lascouxbasis::{
    percent_avoiding_scan, phi_lascoux_items, phi_lascoux_scan, flipped_specialization, graded_positive, lascoux_expand,
    percent_avoiding_diagrams, rothe_scan, positivity_check, Outcome, ScanRecord, ScanSummary,
};
use orthodontia::pipedreams::enumerate_pd;
use orthodontia::suites::{ambiguity_report, independent_expansion, run_suite, Suite, SuiteOptions};
use orthodontia::{Composition, Diagram, LascouxCache, Permutation, Polynomial};
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn perm(s: &str) -> Permutation {
    s.parse().expect("valid permutation")
}

fn suite_check(suite: Suite, ns: &[usize], opts: &SuiteOptions) -> Check {
    let mut notes = Vec::new();
    for &n in ns {
        let r = run_suite(suite, n, opts);
        if !r.passed() {
            return Err(format!("{suite} n={n}: {} of {} failed, first {:?}", r.failures.len(), r.checks, r.failures[0]));
        }
        notes.push(format!("{suite} n={n}: {} checks", r.checks));
    }
    Ok(notes.join("; "))
}

fn criterion1() -> Check {
    suite_check(Suite::OrthodontiaFormula, &[2, 3, 4, 5], &SuiteOptions::default())
}

fn criterion2() -> Check {
    let count = enumerate_pd(&perm("1423")).map_err(|e| e.to_string())?.len();
    if count == 5 {
        Ok("#PD(1423) = 5".into())
    } else {
        Err(format!("#PD(1423) = {count}"))
    }
}

fn criterion3() -> Check {
    for w in Permutation::all(5) {
        let s = script_s(&Diagram::rothe(&w)).map_err(|e| format!("{w}: {e}"))?;
        if s != double_schubert(&w).negate_y() {
            return Err(format!("mismatch at {w}"));
        }
    }
    Ok("120 permutations".into())
}

fn expect_expansion(w: &str, terms: &[(&[u32], i128)], cache: &LascouxCache) -> Check {
    let check = positivity_check(&Diagram::rothe(&perm(w)), false, cache).map_err(|e| e.to_string())?;
    let expect: BTreeMap<Composition, i128> =
        terms.iter().map(|(a, c)| (Composition::new(a.to_vec()), *c)).collect();
    if check.expansion.coeffs == expect {
        Ok(format!("{w}: {}", check.expansion))
    } else {
        Err(format!("{w}: got {}", check.expansion))
    }
}

fn criterion4(cache: &LascouxCache) -> Check {
    let a = expect_expansion(
        "321",
        &[(&[3, 2, 1], 1), (&[3, 2, 2], -2), (&[3, 3, 1], -1), (&[3, 2, 3], 1), (&[3, 3, 2], 1)],
        cache,
    )?;
    let b = expect_expansion(
        "3214",
        &[(&[4, 4, 3, 2], 1), (&[4, 4, 3, 3], -2), (&[4, 4, 4, 2], -1), (&[4, 4, 3, 4], 1), (&[4, 4, 4, 3], 1)],
        cache,
    )?;
    Ok(format!("{a}; {b}"))
}

fn criterion5(cache: &LascouxCache) -> Check {
    let mut checked = 0;
    for r in 1..=3 {
        for c in 1..=3 {
            for d in Diagram::all(r, c).filter(|d| d.columns_ordered_by_inclusion()) {
                let v = positivity_check(&d, false, cache).map_err(|e| format!("{d}: {e}"))?;
                if !v.verdict.positive {
                    return Err(format!("{d}: {}", v.expansion));
                }
                checked += 1;
            }
        }
    }
    let mut vex = 0;
    for n in [4, 5] {
        for w in Permutation::all(n).into_iter().filter(Permutation::is_vexillary) {
            let d = Diagram::rothe(&w);
            if !d.columns_ordered_by_inclusion() {
                return Err(format!("vexillary {w} has columns not ordered by inclusion"));
            }
            let v = positivity_check(&d, false, cache).map_err(|e| format!("{w}: {e}"))?;
            if !v.verdict.positive {
                return Err(format!("{w}: {}", v.expansion));
            }
            vex += 1;
        }
    }
    Ok(format!("{checked} diagrams in [3]x[3], {vex} vexillary permutations in S_4 and S_5"))
}

fn criterion6(cache: &LascouxCache) -> Check {
    let mut sampled: Vec<(ScanRecord, Polynomial)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut summaries = Vec::new();
    let mut pool: Vec<(ScanRecord, Box<dyn Fn() -> Polynomial>)> = Vec::new();

    for (n, max) in [(3, 3), (4, 2)] {
        let records = phi_lascoux_scan(n, max, cache);
        summaries.push(format!("conj15({n},{max}) {:?}", ScanSummary::of(&records)));
        for (rec, item) in records.into_iter().zip(phi_lascoux_items(n, max)) {
            pool.push((rec, Box::new(move || phi(&lascoux(&item.alpha), item.i).expect("phi in range"))));
        }
    }
    let records = percent_avoiding_scan(3, 3, cache);
    summaries.push(format!("conj14(3,3) {:?}", ScanSummary::of(&records)));
    for (rec, d) in records.into_iter().zip(percent_avoiding_diagrams(3, 3)) {
        pool.push((rec, Box::new(move || flipped_specialization(&d).expect("%-avoiding"))));
    }
    let perms = Permutation::all(4);
    let records = rothe_scan(&perms, cache);
    summaries.push(format!("rothe S_4 {:?}", ScanSummary::of(&records)));
    for (rec, w) in records.into_iter().zip(perms) {
        pool.push((rec, Box::new(move || flipped_specialization(&Diagram::rothe(&w)).expect("rothe"))));
    }

    if let Some((rec, _)) = pool.iter().find(|(r, _)| r.verdict == Outcome::Error) {
        return Err(format!("scan error on {}: {:?}", rec.item, rec.error));
    }
    for (rec, poly) in pool.choose_multiple(&mut rng, 10) {
        sampled.push((rec.clone(), poly()));
    }
    for (rec, f) in &sampled {
        let again = independent_expansion(f).map_err(|e| e.to_string())?;
        let verdict = if graded_positive(&again).positive { Outcome::Positive } else { Outcome::Violation };
        if again != rec.to_expansion(f.nx()) || verdict != rec.verdict {
            return Err(format!("re-expansion disagrees on {}", rec.item));
        }
    }
    let counterexamples: usize = pool.iter().filter(|(r, _)| r.verdict == Outcome::Violation).count();
    Ok(format!("{}; {counterexamples} counterexamples; 10 sampled items re-expanded", summaries.join("; ")))
}

fn criterion7() -> Check {
    let opts = SuiteOptions { operator_samples: 500, identity_samples: 200, ..Default::default() };
    let a = suite_check(Suite::Operators, &[4], &opts)?;
    let b = suite_check(Suite::Specialization, &[4], &opts)?;
    Ok(format!("{a}; {b}"))
}

fn criterion8() -> Check {
    let opts = SuiteOptions::default();
    let a = suite_check(Suite::Sorting, &[4, 5], &opts)?;
    let b = suite_check(Suite::SortedDescent, &[5], &opts)?;
    Ok(format!("{a}; {b}"))
}

fn criterion9() -> Check {
    suite_check(Suite::Triangularity, &[4], &SuiteOptions::default())
}

fn criterion10(cache: &LascouxCache) -> Check {
    let g = stable_grothendieck(&perm("21"), 3).map_err(|e| e.to_string())?;
    let x = |i| Polynomial::x(i, 3, 0).expect("in range");
    let e1 = &(&x(1) + &x(2)) + &x(3);
    let e2 = &(&(&x(1) * &x(2)) + &(&x(1) * &x(3))) + &(&x(2) * &x(3));
    let e3 = &(&x(1) * &x(2)) * &x(3);
    if g != &(&e1 - &e2) + &e3 {
        return Err(format!("G_21 = {g}"));
    }
    let mut checked = 0;
    for n in 1..=3 {
        let g = stable_grothendieck(&perm("21"), n).map_err(|e| e.to_string())?;
        for a in Composition::all_bounded(n, 2) {
            let e = lascoux_expand(&(&lascoux(&a) * &g), cache).map_err(|e| e.to_string())?;
            if !graded_positive(&e).positive {
                return Err(format!("alpha = {a}: {e}"));
            }
            checked += 1;
        }
    }
    Ok(format!("G_21 = e1 - e2 + e3; {checked} products graded nonnegative"))
}

fn criterion11() -> Check {
    let report = ambiguity_report(5);
    let text = report.to_string();
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("ambiguity_report.txt");
    std::fs::write(&path, &text).map_err(|e| e.to_string())?;
    println!("{text}");
    let omega = report.section("Inner omega").ok_or("missing omega section")?;
    let endpoint = report.section("Endpoint").ok_or("missing endpoint section")?;
    let decided = |s: &orthodontia::suites::ReportSection| {
        s.winners().len() == 1 && s.variants.iter().any(|v| !v.holds() && v.first_counterexample.is_some())
    };
    if !decided(omega) || !decided(endpoint) {
        return Err("a section has no unique winner with a counterexample for the loser".into());
    }
    Ok(format!(
        "omega: {}; endpoint: {}; written to {}",
        omega.winners()[0],
        endpoint.winners()[0],
        path.display()
    ))
}

fn main() -> ExitCode {
    let cache = LascouxCache::new();
    let criteria: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        ("triple agreement of G_w, S_2..S_5", Box::new(criterion1)),
        ("pipe dream count of 1423", Box::new(criterion2)),
        ("double Schubert orthodontia formula, S_5", Box::new(criterion3)),
        ("Lascoux expansions for 321 and 3214", Box::new(|| criterion4(&cache))),
        ("positivity for inclusion-ordered diagrams", Box::new(|| criterion5(&cache))),
        ("positivity scans with independent re-expansion", Box::new(|| criterion6(&cache))),
        ("operator identity suites", Box::new(criterion7)),
        ("sorting and descent structure, S_5", Box::new(criterion8)),
        ("triangularity and round trips", Box::new(criterion9)),
        ("stable Grothendieck G_21", Box::new(|| criterion10(&cache))),
        ("ambiguity report", Box::new(criterion11)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("PASS {:>2} {name} ({secs:.1}s): {note}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
