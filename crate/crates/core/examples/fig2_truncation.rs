//! Full truncated-space populations of the four qubit states next to the
//! closed-form four-state solution.
//!
//!     cargo run --release --example fig2_truncation [out.csv]

use std::path::PathBuf;

use kerr_coupler::closed::run_closed;
use kerr_coupler::scenario::{reduced_populations, Column, CsvTable};
use kerr_coupler::CouplerConfig;

fn main() -> kerr_coupler::Result<()> {
    let cfg = CouplerConfig::reference();
    let records = run_closed(&cfg)?;
    let analytic = reduced_populations(&cfg)?;

    let mut worst = (0.0, 0.0);
    for (r, pa) in records.iter().zip(&analytic) {
        for (p, q) in r.qubit_populations().iter().zip(pa) {
            if (p - q).abs() > worst.1 {
                worst = (r.t, (p - q).abs());
            }
        }
    }
    println!(
        "cutoffs ({}, {}), {} samples",
        cfg.cutoff_a,
        cfg.cutoff_b,
        records.len()
    );
    println!(
        "largest |p - p_analytic| = {:.3e} at t = {}",
        worst.1, worst.0
    );

    for t in [0.0, 50.0, 100.0, 150.0, 200.0, 250.0] {
        let k = (t / cfg.dt) as usize;
        let p = records[k].qubit_populations();
        println!(
            "t = {t:>5}: p00 {:.4}  p10 {:.4}  p01 {:.4}  p11 {:.4}",
            p[0], p[1], p[2], p[3]
        );
    }

    if let Some(out) = std::env::args().nth(1).map(PathBuf::from) {
        use Column::*;
        let columns = [T, P00, P10, P01, P11, Pa00, Pa10, Pa01, Pa11];
        CsvTable::from_records(&columns, &records, Some(&analytic))?.write_csv(&out)?;
        println!("wrote {}", out.display());
    }
    Ok(())
}
