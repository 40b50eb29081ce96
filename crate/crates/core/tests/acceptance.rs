//! One line per reproduction criterion; exits nonzero if any does not pass.
//! Runs without the libtest harness so the lines are never captured.

use std::process::ExitCode;

use arrangements::reproduce;

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=12 {
        let o = reproduce::run(id, 0);
        println!("{}", o.line());
        if !o.passed() {
            for f in &o.failures {
                println!("    {f}");
            }
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: criteria not met: {failed:?}");
        ExitCode::FAILURE
    }
}
