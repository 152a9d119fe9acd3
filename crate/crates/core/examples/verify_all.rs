//! Runs every reproduction check and prints the report.

use liefree::metric::grid_budget_from_env;
use liefree::report::verify_all;

fn main() {
    let report = verify_all(grid_budget_from_env());
    println!("{report}");
    std::process::exit(if report.passed { 0 } else { 1 });
}
