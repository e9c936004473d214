//! Projections onto the four Bell-like states over the reference run.
//!
//!     cargo run --release --example fig4_bell_states

use kerr_coupler::closed::run_closed;
use kerr_coupler::CouplerConfig;

fn main() -> kerr_coupler::Result<()> {
    let records = run_closed(&CouplerConfig::reference())?;
    for k in 0..4 {
        let best = records
            .iter()
            .max_by(|a, b| a.bell_probs[k].total_cmp(&b.bell_probs[k]))
            .unwrap();
        println!(
            "B{}: max {:.4} at t = {}",
            k + 1,
            best.bell_probs[k],
            best.t
        );
    }

    println!("\nsamples with |b1|^2 or |b2|^2 above 0.95:");
    for r in records
        .iter()
        .filter(|r| r.bell_probs[0] > 0.95 || r.bell_probs[1] > 0.95)
    {
        println!(
            "  t = {:>6}  b1 {:.4}  b2 {:.4}",
            r.t, r.bell_probs[0], r.bell_probs[1]
        );
    }
    Ok(())
}
