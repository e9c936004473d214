//! How much population escapes the four qubit states, and how little the
//! answer moves when the cutoff is raised.
//!
//!     cargo run --release --example fig3_leakage

use kerr_coupler::closed::run_closed;
use kerr_coupler::CouplerConfig;

fn main() -> kerr_coupler::Result<()> {
    let base = run_closed(&CouplerConfig::reference())?;
    let max_of =
        |f: &dyn Fn(&kerr_coupler::TimeSeriesRecord) -> f64| base.iter().map(f).fold(0.0, f64::max);
    println!("max p(0,2)   = {:.3e}", max_of(&|r| r.population(0, 2)));
    println!("max p(1,2)   = {:.3e}", max_of(&|r| r.population(1, 2)));
    println!("max p(2,0)   = {:.3e}", max_of(&|r| r.population(2, 0)));
    println!("max leakage  = {:.3e}", max_of(&|r| r.leakage));

    for cutoff in [4, 6, 12] {
        let other = run_closed(&CouplerConfig::reference().with_cutoffs(cutoff, cutoff))?;
        let shift = base
            .iter()
            .zip(&other)
            .flat_map(|(a, b)| {
                a.qubit_populations()
                    .into_iter()
                    .zip(b.qubit_populations())
                    .map(|(x, y)| (x - y).abs())
            })
            .fold(0.0, f64::max);
        println!("cutoff 9 -> {cutoff:>2}: qubit populations shift by {shift:.2e}");
    }
    Ok(())
}
