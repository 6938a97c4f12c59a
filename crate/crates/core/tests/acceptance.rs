//! Acceptance suite: one PASS/FAIL line per criterion, all exact-integer checks.

use std::time::{Duration, Instant};

use hurwitz_core::oracle::SearchLimits;
use hurwitz_core::verify::{
    alternating_count_check, braid_check, cayley_check, clebsch_hurwitz_check, hurwitz_element_product_check,
    identity_normal_form_check, middle_cycle_check, origins_check, sigma3_check, stable_form_check, CheckReport,
};

const SEED: u64 = 20240611;

struct Outcome {
    id: usize,
    title: &'static str,
    pass: bool,
    elapsed: Duration,
    budget: Duration,
    report: CheckReport,
}

fn run(id: usize, title: &'static str, budget_secs: u64, f: impl FnOnce() -> CheckReport) -> Outcome {
    let start = Instant::now();
    let report = f();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_secs);
    Outcome { id, title, pass: report.pass && elapsed <= budget, elapsed, budget, report }
}

fn main() {
    let lim = SearchLimits::default();
    let outcomes = vec![
        run(1, "genus bound and single orbit of transposition words", 60, || {
            clebsch_hurwitz_check(&[(3, 2), (4, 1)], lim).unwrap()
        }),
        run(2, "identity transposition normal form is complete", 120, || {
            identity_normal_form_check(&[(3, 8), (4, 6)], lim).unwrap()
        }),
        run(3, "products of Hurwitz elements", 10, || hurwitz_element_product_check(2, 20, SEED, lim).unwrap()),
        run(4, "degree-3 alternating component counts", 60, || alternating_count_check(12, 9, lim).unwrap()),
        run(5, "transposition / middle / full-cycle triples", 120, || middle_cycle_check(&[4, 5], lim).unwrap()),
        run(6, "stable range: type and product determine the orbit", 300, || {
            stable_form_check(200, 9, SEED, lim).unwrap()
        }),
        run(7, "degree-3 presentation and classifiers", 300, || sigma3_check(7, lim).unwrap()),
        run(8, "braid relations and commutation identities", 60, || braid_check(1000, 4, SEED, lim).unwrap()),
        run(9, "origins of non-perforated semigroups", 30, || origins_check(500, SEED).unwrap()),
        run(10, "Cayley embedding structure and Galois components", 30, || cayley_check(4, lim).unwrap()),
    ];
    let mut failed = Vec::new();
    for o in &outcomes {
        for line in &o.report.lines {
            println!("    [{}] {line}", o.id);
        }
        let timing = if o.elapsed <= o.budget { "" } else { " (over time budget)" };
        println!(
            "{} criterion {:>2}: {} [{:.2}s / {}s]{timing}",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.elapsed.as_secs_f64(),
            o.budget.as_secs()
        );
        if !o.pass {
            failed.push(o.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
