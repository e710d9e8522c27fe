//! Acceptance criteria 1 to 8, one line per criterion. Every check is exact;
//! the runtime budgets are pinned in `CRITERIA` and enforced here.

use std::time::Instant;

use zk_stokes::acceptance::CRITERIA;

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for c in CRITERIA.iter() {
        let start = Instant::now();
        let outcome = c.run();
        let elapsed = start.elapsed();
        let budget = c.limit;
        let in_time = elapsed <= budget;
        let ok = outcome.passed && in_time;
        println!(
            "criterion {} [{}] {}: {} ({:.2?}, budget {:.0?})",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.name,
            outcome.detail,
            elapsed,
            budget
        );
        if !ok {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
