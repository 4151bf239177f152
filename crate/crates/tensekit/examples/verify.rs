//! Runs one verification suite and prints its checks (default `facts-bounds`).

use tensekit::suites::{run, Options};

fn main() -> tensekit::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "facts-bounds".into());
    let report = run(&name, &Options::default())?;
    println!("{} passed={} in {} ms", report.suite, report.passed, report.elapsed_ms);
    for c in &report.checks {
        println!("  {:?} {}", c.status, c.id);
    }
    Ok(())
}
