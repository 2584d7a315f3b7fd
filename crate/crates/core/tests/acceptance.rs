//! One PASS/FAIL line per acceptance criterion. The target fails if any
//! criterion fails.

use std::time::Instant;

use univobs::verify::{criterion, CRITERIA};

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for n in 1..=CRITERIA {
        let start = Instant::now();
        let check = criterion(n).expect("criterion is defined");
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {n:>2} {check} [{secs:.1}s]");
        if !check.passed {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
