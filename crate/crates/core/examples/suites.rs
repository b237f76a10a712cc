//! Seeded suites through the library API, then merged like `rtp report` does.

use rtp::harness::{merge_reports, run_suite, RunConfig, SuiteOptions};
use rtp::report::to_json_string;

fn main() -> rtp::Result<()> {
    let cfg = RunConfig::new(42, 1e-9, 2)?;
    let opts = SuiteOptions { count: Some(5), ..SuiteOptions::default() };
    let reports = ["isometry", "coherence", "factorization"]
        .iter()
        .map(|name| run_suite(name, &opts, &cfg))
        .collect::<rtp::Result<Vec<_>>>()?;
    println!("{}", to_json_string(&merge_reports(&reports)));
    Ok(())
}
