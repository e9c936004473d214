//! Closed-form four-state amplitudes against the integrated reduced
//! equations, including a start from |1,0> which the closed form does not cover.
//!
//!     cargo run --release --example analytic_oracle

use kerr_coupler::analytic::{
    closed_form_amplitudes, integrate_reduced, integrate_reduced_from, QubitAmplitudes,
};
use kerr_coupler::entanglement::bell_decompose;
use kerr_coupler::{CouplerConfig, C64};

fn main() -> kerr_coupler::Result<()> {
    let cfg = CouplerConfig::reference();
    let grid = cfg.time_grid();
    let alpha = cfg.alpha.re;

    let integrated = integrate_reduced(cfg.alpha, cfg.epsilon, &grid)?;
    let mut worst: f64 = 0.0;
    for (&t, c) in grid.iter().zip(&integrated) {
        worst = worst.max(c.max_abs_diff(&closed_form_amplitudes(alpha, t)?));
    }
    println!(
        "x = {:.6}, y = {:.6}",
        alpha / 2.0,
        5f64.sqrt() * alpha / 2.0
    );
    println!("closed form vs RK4: max amplitude difference {worst:.2e}");

    let c = closed_form_amplitudes(alpha, std::f64::consts::PI / alpha)?;
    println!(
        "at t = pi/alpha: c10 = {:.2e}, |c11| = {:.6}",
        c.c10.norm(),
        c.c11.norm()
    );

    let one_photon = QubitAmplitudes {
        c00: C64::new(0.0, 0.0),
        c10: C64::new(1.0, 0.0),
        ..QubitAmplitudes::VACUUM
    };
    let from_one = integrate_reduced_from(cfg.alpha, cfg.epsilon, one_photon, &grid)?;
    let (t, b3) = grid
        .iter()
        .zip(&from_one)
        .map(|(&t, c)| (t, bell_decompose(&c.to_pure_state()).probabilities()[2]))
        .fold((0.0, 0.0), |best, x| if x.1 > best.1 { x } else { best });
    println!("start |1,0>: max |b3|^2 = {b3:.4} at t = {t}");
    Ok(())
}
