//! Unitary evolution `ψ(t) = V exp(−iλt) V† ψ0` in the full truncated basis.

use rayon::prelude::*;

use crate::entanglement::{bell_decompose, concurrence, reduce_to_two_qubits, TwoModeState};
use crate::error::{Error, Result};
use crate::fock::{
    hermitian_eigendecompose, DensityOperator, FockIndex, FockSpace, HermitianEigen,
    OperatorMatrix, PureState, C64,
};
use crate::hamiltonian::{build_hamiltonian, CouplerConfig};

/// Runs abort once more than this much population sits outside the qubit subspace.
pub const LEAKAGE_GUARD: f64 = 0.05;

/// One time sample of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesRecord {
    pub t: f64,
    pub space: FockSpace,
    /// Indexed by flat Fock position.
    pub populations: Vec<f64>,
    /// `|⟨B_i|ψ⟩|²` or `⟨B_i|ρ|B_i⟩`.
    pub bell_probs: [f64; 4],
    /// Concurrence of the renormalized qubit block.
    pub concurrence: f64,
    /// Trace of the qubit block before renormalization.
    pub qubit_trace: f64,
    pub leakage: f64,
    /// Norm (closed runs) or trace (open runs).
    pub norm_or_trace: f64,
}

impl TimeSeriesRecord {
    pub fn population(&self, n_a: usize, n_b: usize) -> f64 {
        self.space
            .flatten(FockIndex::new(n_a, n_b))
            .map_or(0.0, |k| self.populations[k])
    }

    /// `[p00, p10, p01, p11]`.
    pub fn qubit_populations(&self) -> [f64; 4] {
        [
            self.population(0, 0),
            self.population(1, 0),
            self.population(0, 1),
            self.population(1, 1),
        ]
    }

    pub fn from_pure(t: f64, psi: &PureState) -> Result<Self> {
        Self::from_state(t, psi, psi.populations(), psi.norm())
    }

    pub fn from_density(t: f64, rho: &DensityOperator) -> Result<Self> {
        Self::from_state(t, rho, rho.populations(), rho.trace())
    }

    fn from_state<S: TwoModeState>(
        t: f64,
        state: &S,
        populations: Vec<f64>,
        norm_or_trace: f64,
    ) -> Result<Self> {
        let space = state.space();
        let q = space.qubit_indices();
        let leakage = 1.0 - q.iter().map(|&k| populations[k]).sum::<f64>();
        let reduced = reduce_to_two_qubits(state)?;
        Ok(Self {
            t,
            space,
            bell_probs: bell_decompose(state).probabilities(),
            concurrence: concurrence(&reduced),
            qubit_trace: reduced.pre_normalization_trace(),
            populations,
            leakage,
            norm_or_trace,
        })
    }
}

pub(crate) fn check_leakage(t: f64, leakage: f64) -> Result<()> {
    if leakage > LEAKAGE_GUARD {
        return Err(Error::LeakageGuard {
            t,
            leakage,
            limit: LEAKAGE_GUARD,
        });
    }
    Ok(())
}

/// A Hamiltonian with its eigendecomposition cached for repeated propagation.
#[derive(Debug, Clone)]
pub struct ClosedPropagator {
    hamiltonian: OperatorMatrix,
    eigen: HermitianEigen,
}

impl ClosedPropagator {
    pub fn new(hamiltonian: OperatorMatrix) -> Result<Self> {
        let eigen = hermitian_eigendecompose(&hamiltonian)?;
        Ok(Self { hamiltonian, eigen })
    }

    pub fn hamiltonian(&self) -> &OperatorMatrix {
        &self.hamiltonian
    }

    pub fn eigen(&self) -> &HermitianEigen {
        &self.eigen
    }

    pub fn propagate(&self, psi0: &PureState, t: f64) -> Result<PureState> {
        let dim = self.hamiltonian.dim();
        if psi0.space().dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: psi0.space().dim(),
            });
        }
        let norm = psi0.norm();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::ContractViolation(format!(
                "initial state must be normalized (|psi0| = {norm})"
            )));
        }
        let v = self.eigen.eigenvectors.as_mat();
        let psi = psi0.amplitudes();
        // coefficients in the eigenbasis, each advanced by exp(−iλt)
        let coeffs: Vec<C64> = (0..dim)
            .map(|k| {
                let overlap: C64 = (0..dim).map(|i| v[(i, k)].conj() * psi[i]).sum();
                overlap * C64::from_polar(1.0, -self.eigen.eigenvalues[k] * t)
            })
            .collect();
        let amplitudes = (0..dim)
            .map(|i| (0..dim).map(|k| v[(i, k)] * coeffs[k]).sum())
            .collect();
        PureState::from_amplitudes(psi0.space(), amplitudes)
    }

    /// States at every grid time; samples are evaluated in parallel and returned in grid order.
    pub fn propagate_grid(&self, psi0: &PureState, t_grid: &[f64]) -> Result<Vec<PureState>> {
        t_grid
            .par_iter()
            .map(|&t| self.propagate(psi0, t))
            .collect()
    }
}

/// One-shot propagation; prefer [`ClosedPropagator`] for many times.
pub fn propagate(hamiltonian: &OperatorMatrix, psi0: &PureState, t: f64) -> Result<PureState> {
    ClosedPropagator::new(hamiltonian.clone())?.propagate(psi0, t)
}

/// Unitary run of `cfg` over its time grid.
///
/// Fails when either leakage rate is nonzero, and when population outside the
/// qubit subspace exceeds [`LEAKAGE_GUARD`] at any sample.
pub fn run_closed(cfg: &CouplerConfig) -> Result<Vec<TimeSeriesRecord>> {
    cfg.validate()?;
    if !cfg.is_closed() {
        return Err(Error::RequiresOpenSolver {
            kappa_a: cfg.kappa_a,
            kappa_b: cfg.kappa_b,
        });
    }
    let space = cfg.space()?;
    let propagator = ClosedPropagator::new(build_hamiltonian(cfg)?)?;
    let psi0 = PureState::basis(space, cfg.initial)?;
    let grid = cfg.time_grid();
    let states = propagator.propagate_grid(&psi0, &grid)?;
    grid.iter()
        .zip(&states)
        .map(|(&t, psi)| {
            check_leakage(t, TwoModeState::leakage(psi))?;
            TimeSeriesRecord::from_pure(t, psi)
        })
        .collect()
}
