use std::process::ExitCode;

use sections::acceptance::{run_suite, SuiteConfig};

fn main() -> ExitCode {
    let outcomes = run_suite(&SuiteConfig::default());
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if outcomes.len() != 11 || !failed.is_empty() {
        println!("acceptance: {} criteria run, failed {failed:?}", outcomes.len());
        return ExitCode::FAILURE;
    }
    println!("acceptance: all 11 criteria passed");
    ExitCode::SUCCESS
}
