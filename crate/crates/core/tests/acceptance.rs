//! Acceptance suite: runs every registered verification check and prints one
//! pass/fail line per criterion. Each check pins its own thresholds, case
//! lists, seeds and (where stated) wall-clock bounds.

use treng_core::checks;

#[test]
fn acceptance_criteria() {
    let mut all_pass = true;
    let mut lines = vec![];
    let mut checks: Vec<_> = checks::registry();
    checks.sort_by_key(|c| c.criterion());
    for check in checks {
        let outcome = check.run();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        let line = format!(
            "criterion {:>2} [{}] {:<24} {:>8} ms  {}",
            check.criterion(),
            status,
            check.id(),
            outcome.elapsed_ms,
            check.title()
        );
        println!("{}", line);
        if !outcome.pass {
            for d in &outcome.details {
                println!("    {}", d);
            }
        }
        lines.push((check.criterion(), check.id(), outcome.pass));
        all_pass &= outcome.pass;
    }
    let failed: Vec<String> = lines
        .iter()
        .filter(|(_, _, pass)| !pass)
        .map(|(c, id, _)| format!("criterion {} ({})", c, id))
        .collect();
    assert!(all_pass, "failing acceptance criteria: {}", failed.join(", "));
}
