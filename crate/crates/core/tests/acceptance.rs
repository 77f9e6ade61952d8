//! Acceptance run: one line per criterion, exit status 1 if any fails.

use std::process::ExitCode;
use std::time::Duration;

use ordcopies::verify::{run_suite, DEFAULT_SEED};
use ordcopies::Exec;

/// (criterion, suite, minimum cases, time budget)
const CRITERIA: &[(u32, &str, u64, Option<u64>)] = &[
    (1, "oracle-agreement", 3000, Some(10)),
    (2, "indivisibility", 3000, None),
    (3, "lex-model", 512, Some(30)),
    (4, "cofinal-sum", 200, None),
    (5, "layer-lemmas", 500, None),
    (6, "fusion", 100, None),
    (7, "sq-product", 1000, Some(60)),
    (8, "factorizer", 211, None),
    (9, "enumeration", 500, None),
    (10, "separativity-witness", 500, None),
];

fn main() -> ExitCode {
    let mut all = true;
    for &(n, suite, min_cases, budget) in CRITERIA {
        let report = run_suite(suite, Exec::default(), DEFAULT_SEED).expect("registered suite");
        let within = budget.is_none_or(|s| report.elapsed < Duration::from_secs(s));
        let ok = report.passed() && report.cases >= min_cases && within;
        all &= ok;
        let target = budget
            .map(|s| format!(", target < {s}s"))
            .unwrap_or_default();
        println!(
            "criterion {n:>2}: {} {suite} ({} cases, {} failures, {:.2}s{target})",
            if ok { "PASS" } else { "FAIL" },
            report.cases,
            report.failures.len(),
            report.elapsed.as_secs_f64(),
        );
        for msg in report.failures.iter().take(3) {
            println!("    {msg}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
