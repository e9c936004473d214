//! Load a JSON config, print its validation report and run it.
//!
//!     cargo run --release --example custom_config [config.json]
//!
//! Without an argument a weakly lossy coupler starting from |1,0> is used.

use std::path::Path;

use kerr_coupler::config::{load_config, parse_config, to_json};
use kerr_coupler::scenario::ValidationReport;
use kerr_coupler::{run_closed, run_open};

const DEFAULT: &str = r#"{
  "chi_a": 25, "chi_b": 25,
  "epsilon_re": 0.12566370614359174,
  "alpha_re": 0.12566370614359174,
  "kappa_a": 1e-4, "kappa_b": 1e-4,
  "initial_na": 1,
  "t_max": 120
}"#;

fn main() -> kerr_coupler::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => load_config(Path::new(&path))?,
        None => parse_config(DEFAULT, Path::new("<builtin>"))?,
    };
    print!("{}", ValidationReport::new(cfg.clone()));
    println!("\nresolved config:\n{}\n", to_json(&cfg));

    let records = if cfg.is_closed() {
        run_closed(&cfg)?
    } else {
        run_open(&cfg)?
    };
    let best = records
        .iter()
        .max_by(|a, b| a.concurrence.total_cmp(&b.concurrence))
        .unwrap();
    let last = records.last().unwrap();
    println!("peak concurrence {:.4} at t = {}", best.concurrence, best.t);
    println!(
        "final: trace {:.10}, leakage {:.2e}, Bell {:?}",
        last.norm_or_trace,
        last.leakage,
        last.bell_probs.map(|p| (p * 1e4).round() / 1e4)
    );
    Ok(())
}
