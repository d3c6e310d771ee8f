//! Runs the bundled golden corpus and prints one line per row.

use std::error::Error;
use std::io::Write;

use freezeml::corpus::{golden_rows, run_corpus};
use freezeml::prelude::prelude;

pub fn run(out: &mut dyn Write) -> Result<(), Box<dyn Error>> {
    let rows = golden_rows();
    let report = run_corpus(&rows, &prelude());
    for o in &report.outcomes {
        writeln!(out, "{}", o.summary())?;
    }
    writeln!(
        out,
        "{}/{} rows passed in {:?}",
        report.passed(),
        rows.len(),
        report.elapsed
    )?;
    if !report.all_passed() {
        return Err("golden corpus mismatch".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run(&mut std::io::stdout())
}
