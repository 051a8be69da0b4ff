//! Acceptance suite: runs the full verification report and asserts every
//! required check at its pinned tolerance. One line is printed per check
//! (`cargo test --test acceptance -- --nocapture` to see them all).

use pdm1d::verify::verify_all;

#[test]
fn acceptance_suite() {
    let report = verify_all().expect("verification suite must run to completion");
    print!("{}", report.to_text());
    let failures: Vec<String> = report
        .checks
        .iter()
        .filter(|c| c.required && !c.passed)
        .map(|c| {
            format!(
                "{} — {} (tolerance {:.3e}, achieved {:.3e})",
                c.id, c.description, c.tolerance, c.achieved
            )
        })
        .collect();
    assert!(
        failures.is_empty(),
        "required checks failed:\n{}",
        failures.join("\n")
    );
}
