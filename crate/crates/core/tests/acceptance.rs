//! End-to-end verification suite: runs every numbered criterion at its
//! stated size and tolerance and prints one pass/fail line per criterion.
//!
//! Run directly with `cargo test -p antiorb-core --test acceptance`, or see
//! the same results via `antiorb accept-all`.

use antiorb_core::accept::{run_criterion, CRITERIA_COUNT};

#[test]
fn all_criteria_pass() {
    let mut failures = Vec::new();
    for id in 1..=CRITERIA_COUNT {
        let r = run_criterion(id).unwrap_or_else(|e| panic!("criterion {id} failed to run: {e}"));
        println!(
            "criterion {:>2} {:<42} {}",
            r.id,
            r.name,
            if r.passed { "PASS" } else { "FAIL" }
        );
        if !r.passed {
            println!("    {}", r.details);
            failures.push(r.id);
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}
