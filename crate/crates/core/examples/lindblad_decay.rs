//! A single lossy mode starting in |1>: both Lindblad solvers against exp(-2 kappa t).
//!
//!     cargo run --release --example lindblad_decay

use kerr_coupler::fock::{FockIndex, FockSpace, OperatorMatrix, PureState};
use kerr_coupler::hamiltonian::mode_operators;
use kerr_coupler::lindblad::{
    build_liouvillian, evolve_integrate, evolve_spectral, SpectralPropagator,
};
use kerr_coupler::C64;

fn main() -> kerr_coupler::Result<()> {
    let kappa: f64 = 0.05;
    // mode b is a lossless spectator
    let space = FockSpace::new(3, 1)?;
    let (a, _) = mode_operators(space)?;
    let collapse = a.scale(C64::new((2.0 * kappa).sqrt(), 0.0));
    let l = build_liouvillian(&OperatorMatrix::zeros(space.dim()), &[collapse])?;
    let one = FockIndex::new(1, 0);
    let k1 = space.flatten(one).unwrap();
    let rho0 = PureState::basis(space, one)?.to_density();

    let grid: Vec<f64> = (0..=10).map(|k| k as f64 * 5.0).collect();
    let spectral = evolve_spectral(&l, &rho0, &grid)?;
    let integrated = evolve_integrate(&l, &rho0, &grid)?;

    let rates = SpectralPropagator::new(&l)?;
    println!("eigenvector condition {:.2}", rates.condition());
    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>8}",
        "t", "exact", "spectral", "rk4", "purity"
    );
    for ((t, s), i) in grid.iter().zip(&spectral).zip(&integrated) {
        println!(
            "{t:>5} {:>12.9} {:>12.9} {:>12.9} {:>8.5}",
            (-2.0 * kappa * t).exp(),
            s.populations()[k1],
            i.populations()[k1],
            s.purity()
        );
    }
    Ok(())
}
