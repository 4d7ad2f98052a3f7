//! Run the acceptance checks in their quick configuration.

use maxempty::verify::{run_all, VerifyConfig};

fn main() {
    let summary = run_all(&VerifyConfig::quick());
    for line in summary.lines() {
        println!("{line}");
    }
    std::process::exit(if summary.passed { 0 } else { 1 });
}
