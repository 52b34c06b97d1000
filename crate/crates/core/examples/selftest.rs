//! Runs the self-checks and prints one line per check.
//!
//! cargo run --release --example selftest -- [quick|full] [mobius|stirling|bell|residues]

use prlab::selftest::{run_selftest_with_fault, Fault, Level, SelftestReport};

fn print(report: &SelftestReport) {
    for c in &report.checks {
        let tag = if c.passed { "ok  " } else { "FAIL" };
        println!("{tag} {:<40} {}", c.id, c.detail);
    }
    println!("{} checks, {} failed", report.checks.len(), report.failures.len());
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let report = run_selftest_with_fault(Level::Quick, None)?;
    print(&report);
    let broken = run_selftest_with_fault(Level::Quick, Some(Fault::Mobius))?;
    println!("with a corrupted Möbius table: {:?}", broken.failures);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let level = match args.next().as_deref() {
        Some("full") => Level::Full,
        _ => Level::Quick,
    };
    let fault = args.next().map(|s| s.parse::<Fault>()).transpose()?;
    let report = run_selftest_with_fault(level, fault)?;
    print(&report);
    if !report.passed {
        std::process::exit(2);
    }
    Ok(())
}
