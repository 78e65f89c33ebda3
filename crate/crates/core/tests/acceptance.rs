//! Acceptance suite: every known result recomputed exactly, each within its
//! time budget. Prints one PASS/FAIL line per criterion.

use std::process::ExitCode;

use secant_core::verify::checks;

fn main() -> ExitCode {
    let mut failures = 0;
    for check in checks() {
        let outcome = check.run();
        let ok = outcome.passed && outcome.within_time();
        if !ok {
            failures += 1;
        }
        let timing = if outcome.within_time() {
            ""
        } else {
            " (over time limit)"
        };
        println!(
            "{} [{:>2}] {}: {} | {} | {:.3}s / {}s{timing}",
            if ok { "PASS" } else { "FAIL" },
            outcome.id,
            outcome.name,
            outcome.claim,
            outcome.detail,
            outcome.elapsed.as_secs_f64(),
            outcome.time_limit.as_secs(),
        );
    }
    if failures == 0 {
        println!("all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
