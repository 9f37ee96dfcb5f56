use std::process::ExitCode;

use landau_cs_cli::verify::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let mut failed = 0;
    for id in 1..=CRITERIA {
        let r = run_criterion(id, false);
        println!("{}", r.line());
        println!("  {} ({:.2?}): {}", r.title, r.elapsed, r.detail);
        if !r.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", CRITERIA - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
