//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;

use skewline_core::verify::{run, VerifyOptions};

fn main() -> ExitCode {
    let report = match run(&VerifyOptions::new()) {
        Ok(r) => r,
        Err(e) => {
            println!("acceptance: verification could not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut ok = report.criteria.len() == 13;
    for c in &report.criteria {
        println!(
            "criterion {:>2} {}: {}",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            c.name
        );
        if !c.passed {
            println!("    expected: {}\n    actual:   {}", c.expected, c.actual);
        }
        ok &= c.passed;
    }
    let passed = report.criteria.iter().filter(|c| c.passed).count();
    println!("acceptance: {passed}/{} criteria passed", report.criteria.len());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
