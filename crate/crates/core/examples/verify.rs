//! Runs the quick self-check suite and prints one line per check.

use onecut::verify::{run, Level, VerifyOptions};

fn main() {
    let report = run(&VerifyOptions::new(Level::Quick));
    for c in &report.checks {
        println!(
            "{} {:<16} {}",
            if c.passed { "ok  " } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    std::process::exit(if report.passed { 0 } else { 4 });
}
