//! Acceptance gate: runs every suite criterion, prints one line per
//! criterion, and fails if any criterion fails. All checks are exact.

use prym3::suite;

#[test]
fn acceptance_criteria() {
    let results = suite::run_all();
    let mut all_passed = true;
    for r in &results {
        println!(
            "criterion {:02} [{}] {} — {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
        all_passed &= r.passed;
    }
    assert!(all_passed, "at least one acceptance criterion failed");
    assert_eq!(results.len(), 11);
}
