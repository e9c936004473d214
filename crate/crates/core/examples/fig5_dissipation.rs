//! Concurrence of the coupler with cavity losses, one Lindblad run per rate.
//!
//!     cargo run --release --example fig5_dissipation [out_prefix]

use std::path::PathBuf;

use kerr_coupler::scenario::{run_scenario, Column, Scenario, ScenarioName};

fn main() -> kerr_coupler::Result<()> {
    let scenario = Scenario::preset(ScenarioName::Fig5)?;
    for (kappa, table) in scenario.tables()? {
        let c = table.column(Column::Concurrence).unwrap();
        let t = table.column(Column::T).unwrap();
        let peaks: Vec<String> = (1..c.len() - 1)
            .filter(|&i| c[i] > c[i - 1] && c[i] >= c[i + 1] && c[i] > 0.9)
            .map(|i| format!("{:.4}@{}", c[i], t[i]))
            .collect();
        let top = c.iter().cloned().fold(0.0, f64::max);
        println!(
            "kappa = {:<7} peak {top:.4}  maxima above 0.9: {}",
            kappa.unwrap(),
            peaks.join(" ")
        );
    }

    if let Some(prefix) = std::env::args().nth(1).map(PathBuf::from) {
        print!("{}", run_scenario(&scenario, &prefix)?);
    }
    Ok(())
}
