//! Runs every named check programmatically and prints a summary table.

use formpreserve::checks::{catalogue, run_check, Settings};

fn main() {
    let settings = Settings::default();
    for check in catalogue() {
        match run_check(&check, &settings) {
            Ok(m) => println!(
                "{:<10} {:<28} {:>10.3e} <= {:<8.1e} {}",
                check.suite.name(),
                check.name,
                m.metric,
                check.tolerance,
                if m.metric <= check.tolerance { "ok" } else { "FAIL" }
            ),
            Err(e) => println!("{:<10} {:<28} error: {e}", check.suite.name(), check.name),
        }
    }
}
