//! One line per acceptance criterion. Agreement is exact rational or
//! integer equality; each line also carries its runtime budget.
//!
//! Runs without the libtest harness so the lines are never captured.

use std::process::ExitCode;

use weierstrass_limits::verify::run_all;

fn main() -> ExitCode {
    let outcomes = run_all();
    let ids: Vec<u8> = outcomes.iter().map(|o| o.id).collect();
    if ids != (1..=10).collect::<Vec<u8>>() {
        println!("FAIL criteria list: {ids:?}");
        return ExitCode::FAILURE;
    }
    let mut failed = 0;
    for o in &outcomes {
        println!("{}", o.summary_line());
        for note in &o.notes {
            println!("     note: {note}");
        }
        if !o.passed() {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
