//! Runs the ten acceptance properties and prints one PASS/FAIL line each.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use wallcross::verify::{run_property, Grid, VerifyOptions, PROPERTIES};

const LIMITS_SECS: [u64; 10] = [120, 300, 120, 60, 10, 60, 120, 120, 60, 60];

fn main() -> ExitCode {
    let grid = Grid::default();
    let opts = VerifyOptions { seed: 20240601, fault: None };
    let mut failed = 0;
    for (i, (name, limit)) in PROPERTIES.iter().zip(LIMITS_SECS).enumerate() {
        let start = Instant::now();
        let report = run_property(name, &grid, &opts).expect("known property");
        let elapsed = start.elapsed();
        let ok = report.passed() && elapsed <= Duration::from_secs(limit);
        println!(
            "criterion {:>2} {} {name}: {} cases in {:.2}s (limit {limit}s){}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            report.cases,
            elapsed.as_secs_f64(),
            report.failure.as_deref().map(|f| format!("; first failure: {f}")).unwrap_or_default()
        );
        failed += usize::from(!ok);
    }
    println!("acceptance: {} of {} criteria pass", PROPERTIES.len() - failed, PROPERTIES.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
