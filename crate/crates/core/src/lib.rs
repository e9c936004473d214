//! Pumped Kerr nonlinear coupler: two truncated bosonic modes with Kerr
//! self-interaction, linear coupling and a pump on mode `a`.
//!
//! The unitary solver ([`closed`]) diagonalizes the Hamiltonian once and
//! propagates the vacuum over a time grid; the Lindblad solver ([`lindblad`])
//! does the same with the Liouvillian, falling back to RK4 when it is badly
//! conditioned. [`analytic`] holds the closed-form four-state solution and
//! [`entanglement`] the Bell decomposition and Wootters concurrence.
//!
//! ```no_run
//! use kerr_coupler::{run_closed, CouplerConfig};
//!
//! let records = run_closed(&CouplerConfig::reference()).unwrap();
//! let peak = records.iter().map(|r| r.concurrence).fold(0.0, f64::max);
//! println!("max concurrence {peak:.4}");
//! ```

pub mod analytic;
pub mod closed;
pub mod config;
pub mod entanglement;
pub mod error;
pub mod fock;
pub mod hamiltonian;
pub mod lindblad;
pub mod scenario;

pub use analytic::{
    closed_form_amplitudes, integrate_reduced, integrate_reduced_from, QubitAmplitudes,
};
pub use closed::{propagate, run_closed, ClosedPropagator, TimeSeriesRecord, LEAKAGE_GUARD};
pub use config::{load_config, parse_config, to_json};
pub use entanglement::{
    bell_decompose, bell_states, concurrence, reduce_to_two_qubits, BellDecomposition,
    TwoModeState, TwoQubitDensity,
};
pub use error::{Error, Result};
pub use fock::{DensityOperator, FockIndex, FockSpace, OperatorMatrix, PureState, C64};
pub use hamiltonian::{build_collapse_operators, build_hamiltonian, CouplerConfig, SolverKind};
pub use lindblad::{build_liouvillian, evolve_config, run_open, Liouvillian, SpectralPropagator};
pub use scenario::{run_scenario, validate_config, Overrides, Scenario, ScenarioName};
