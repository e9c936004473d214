//! Wootters concurrence on a few textbook two-qubit states.
//!
//!     cargo run --example concurrence

use kerr_coupler::entanglement::{bell_vectors, concurrence, TwoQubitDensity};
use kerr_coupler::fock::OperatorMatrix;
use kerr_coupler::C64;

fn projector(v: [C64; 4]) -> OperatorMatrix {
    OperatorMatrix::from_fn(4, |i, j| v[i] * v[j].conj())
}

fn werner(p: f64) -> OperatorMatrix {
    let bell = projector(bell_vectors()[0]).scale(C64::new(p, 0.0));
    let noise = OperatorMatrix::identity(4).scale(C64::new((1.0 - p) / 4.0, 0.0));
    &bell + &noise
}

fn main() -> kerr_coupler::Result<()> {
    for (k, b) in bell_vectors().into_iter().enumerate() {
        println!(
            "C(B{}) = {:.12}",
            k + 1,
            concurrence(&TwoQubitDensity::from_matrix(projector(b))?)
        );
    }

    let (a, b) = (0.8f64.sqrt(), 0.2f64.sqrt());
    let partial = projector([
        C64::new(a, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(b, 0.0),
    ]);
    println!(
        "C(sqrt(.8)|00> + sqrt(.2)|11>) = {:.12}",
        concurrence(&TwoQubitDensity::from_matrix(partial)?)
    );

    // Werner states are entangled only above p = 1/3
    for p in [0.2, 1.0 / 3.0, 0.5, 0.9] {
        println!(
            "Werner p = {p:.3}: C = {:.6}",
            concurrence(&TwoQubitDensity::from_matrix(werner(p))?)
        );
    }
    Ok(())
}
