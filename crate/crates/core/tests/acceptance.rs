use std::time::{Duration, Instant};

use qam_core::verify::{run_suite, SuiteReport};

const SEED: u64 = 20_240_917;

struct Criterion {
    number: usize,
    name: &'static str,
    suites: &'static [&'static str],
    limit: Duration,
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, name: "worked example: R-matrix, window move and fillings", suites: &["examples"], limit: Duration::from_secs(1) },
    Criterion { number: 2, name: "rank-two move tables and classical closed forms", suites: &["tables"], limit: Duration::from_secs(10) },
    Criterion { number: 3, name: "unique monotone paths in the quantum Bruhat graph", suites: &["shell"], limit: Duration::from_secs(120) },
    Criterion { number: 4, name: "moves commute with f_p and preserve weight and height", suites: &["yb"], limit: Duration::from_secs(600) },
    Criterion { number: 5, name: "type-A tableau isomorphism and jeu de taquin R-matrix", suites: &["typeA"], limit: Duration::from_secs(600) },
    Criterion { number: 6, name: "rank-two subsystem counts in F4 and E6", suites: &["counts"], limit: Duration::from_secs(60) },
    Criterion { number: 7, name: "energy grading through charge", suites: &["energy"], limit: Duration::from_secs(120) },
    Criterion { number: 8, name: "structural properties of chains, sign words and quantum roots", suites: &["structure"], limit: Duration::from_secs(600) },
    Criterion { number: 9, name: "independence of the move sequence (evidence only)", suites: &["probe"], limit: Duration::from_secs(600) },
];

fn main() {
    let mut all_passed = true;
    for c in CRITERIA {
        let start = Instant::now();
        let reports: Vec<Result<SuiteReport, String>> =
            c.suites.iter().map(|s| run_suite(s, SEED).map_err(|e| e.to_string())).collect();
        let elapsed = start.elapsed();
        let mut lines = Vec::new();
        let mut passed = elapsed <= c.limit;
        for r in &reports {
            match r {
                Ok(report) => {
                    for check in &report.checks {
                        passed &= check.passed;
                        lines.push(format!("    [{}] {} ({})", if check.passed { "ok" } else { "FAIL" }, check.statement, check.detail));
                    }
                }
                Err(e) => {
                    passed = false;
                    lines.push(format!("    [ERROR] {e}"));
                }
            }
        }
        println!(
            "criterion {}: {} {} ({:.2?}, limit {:?})",
            c.number,
            if passed { "PASS" } else { "FAIL" },
            c.name,
            elapsed,
            c.limit
        );
        for l in lines {
            println!("{l}");
        }
        all_passed &= passed;
    }
    if !all_passed {
        std::process::exit(1);
    }
}
