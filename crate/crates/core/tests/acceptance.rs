//! One line per acceptance criterion. Criteria listed in `KNOWN_FAILURES`
//! are reported as FAIL and must keep failing; every other criterion must
//! pass.

use std::time::Instant;

use groupiso::verify::{run_suite, Suite};

const SEED: u64 = 7;

/// Criterion 8 tests the literal statement for automorphisms fixing `A`
/// setwise, which has counterexamples (see `setwise_counterexample` in the
/// bilinear unit tests).
const KNOWN_FAILURES: &[Suite] = &[Suite::AutHom];

#[test]
fn acceptance() {
    let mut unexpected = Vec::new();
    for suite in Suite::ALL {
        let start = Instant::now();
        let report = run_suite(suite, SEED);
        let status = if report.passed() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} [{}] {status}: {} ({} checks, {} failures, {:.1}s)",
            report.criterion,
            suite.name(),
            suite.description(),
            report.checks,
            report.failures,
            start.elapsed().as_secs_f64()
        );
        for note in &report.notes {
            println!("    note: {note}");
        }
        for w in report.witnesses.iter().take(3) {
            println!("    witness: {w}");
        }
        if report.passed() == KNOWN_FAILURES.contains(&suite) {
            unexpected.push(suite.name());
        }
    }
    assert!(unexpected.is_empty(), "unexpected outcome for {unexpected:?}");
}
