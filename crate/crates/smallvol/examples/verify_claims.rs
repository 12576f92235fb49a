//! Runs the verification suites over a small window and prints the reports.
//! Each suite checks one slice of the published classification data: the
//! three tables, the displayed change-of-basis matrices, the feasibility
//! inequalities, the brute-force enumeration, the supporting lemmas, the
//! random-simplex oracle, and the classification round-trip.
//!
//! Run with `cargo run --example verify_claims`. The full-strength settings
//! live behind `smallvol verify <suite>`; this example keeps the bounds
//! small so it finishes in seconds.

use smallvol::verify::{run_suite, VerifyOptions, SUITE_NAMES};
use smallvol::Result;

fn main() -> Result<()> {
    let opts = VerifyOptions { dmax: 5, kmax: 2, ..VerifyOptions::default() };
    for name in SUITE_NAMES {
        let report = run_suite(name, &opts)?;
        let failed = report.n_failed();
        let line = report
            .render_text()
            .lines()
            .last()
            .unwrap_or_default()
            .to_string();
        println!("{line}");
        if failed > 0 {
            print!("{}", report.render_text());
        }
    }
    Ok(())
}
