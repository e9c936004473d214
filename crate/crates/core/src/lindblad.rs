//! Lindblad evolution of a [`DensityOperator`].
//!
//! Vectorization is row-stacking throughout: `vec(ρ)[i·D + j] = ρ[i][j]`.
//! Under this convention `vec(AρB) = (A ⊗ Bᵀ) vec(ρ)`, so
//!
//! ```text
//! L = −i(H ⊗ I − I ⊗ Hᵀ) + Σ_j [ C_j ⊗ C_j* − ½ C_j†C_j ⊗ I − ½ I ⊗ (C_j†C_j)ᵀ ]
//! ```

use log::debug;
use rayon::prelude::*;

use crate::analytic::check_grid;
use crate::closed::{check_leakage, TimeSeriesRecord};
use crate::entanglement::TwoModeState;
use crate::error::{Error, Result};
use crate::fock::{
    general_eigendecompose, inverse, tensor, DensityOperator, GeneralEigen, OperatorMatrix, C64,
    ZERO,
};
use crate::hamiltonian::{build_collapse_operators, build_hamiltonian, CouplerConfig, SolverKind};

/// Eigenvector-matrix condition number above which the spectral path refuses to run.
pub const CONDITION_THRESHOLD: f64 = 1e8;
/// Largest Hermiticity defect the spectral path may remove by symmetrization.
pub const HERMITICITY_BUDGET: f64 = 1e-8;
/// Trace drift at which the integrator declares the step unstable.
pub const TRACE_DRIFT_LIMIT: f64 = 1e-5;

// RK4 step is capped at this fraction of 1/‖L‖∞.
const STEP_SCALE: f64 = 0.4;

/// Superoperator acting on row-stacked density matrices of a `D`-dimensional space.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    dim: usize,
    matrix: OperatorMatrix,
    // nonzero entries per row, for matrix-vector products in the integrator
    rows: Vec<Vec<(usize, C64)>>,
}

impl Liouvillian {
    /// Dimension `D` of the underlying Hilbert space (the matrix is `D² × D²`).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; v.len()];
        self.apply_into(v, &mut out);
        out
    }

    fn apply_into(&self, v: &[C64], out: &mut [C64]) {
        for (o, row) in out.iter_mut().zip(&self.rows) {
            *o = row.iter().map(|&(j, l)| l * v[j]).sum();
        }
    }

    /// `L(ρ)` as a matrix.
    pub fn apply_to(&self, rho: &DensityOperator) -> Result<OperatorMatrix> {
        if rho.space().dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.space().dim(),
            });
        }
        let out = self.apply(&rho.vectorize());
        let d = self.dim;
        Ok(OperatorMatrix::from_fn(d, |i, j| out[i * d + j]))
    }

    /// Max-row-sum norm.
    pub fn inf_norm(&self) -> f64 {
        self.rows
            .iter()
            .map(|row| row.iter().map(|(_, l)| l.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn eigendecompose(&self) -> Result<GeneralEigen> {
        general_eigendecompose(&self.matrix)
    }
}

pub fn build_liouvillian(
    hamiltonian: &OperatorMatrix,
    collapse_ops: &[OperatorMatrix],
) -> Result<Liouvillian> {
    let d = hamiltonian.dim();
    if let Some(bad) = collapse_ops.iter().find(|c| c.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad.dim(),
        });
    }
    let deviation = hamiltonian.hermiticity_deviation();
    if deviation > crate::fock::HERMITIAN_TOL {
        return Err(Error::ContractViolation(format!(
            "Liouvillian needs a Hermitian Hamiltonian (|H - H†| = {deviation:.3e})"
        )));
    }
    let id = OperatorMatrix::identity(d);
    let minus_i = C64::new(0.0, -1.0);
    let half = C64::new(0.5, 0.0);

    let mut matrix =
        (&tensor(hamiltonian, &id) - &tensor(&id, &hamiltonian.transpose())).scale(minus_i);
    for c in collapse_ops {
        let cdc = &c.adjoint() * c;
        let jump = tensor(c, &c.conj());
        let left = tensor(&cdc, &id).scale(half);
        let right = tensor(&id, &cdc.transpose()).scale(half);
        matrix = &(&(&matrix + &jump) - &left) - &right;
    }

    let n = d * d;
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .filter_map(|j| {
                    let l = matrix.get(i, j);
                    (l != ZERO).then_some((j, l))
                })
                .collect()
        })
        .collect();
    Ok(Liouvillian {
        dim: d,
        matrix,
        rows,
    })
}

/// Cached eigendecomposition of a Liouvillian: `ρ(t) = unvec(V e^{σt} V⁻¹ vec ρ0)`.
#[derive(Debug, Clone)]
pub struct SpectralPropagator {
    dim: usize,
    eigen: GeneralEigen,
    inverse: OperatorMatrix,
}

impl SpectralPropagator {
    pub fn new(liouvillian: &Liouvillian) -> Result<Self> {
        let eigen = liouvillian.eigendecompose()?;
        if !(eigen.condition <= CONDITION_THRESHOLD) {
            return Err(Error::FallbackRequired {
                condition: eigen.condition,
            });
        }
        debug!(
            "Liouvillian eigenvector condition {:.3e} (dim {})",
            eigen.condition,
            liouvillian.matrix.dim()
        );
        let inverse = inverse(&eigen.eigenvectors);
        Ok(Self {
            dim: liouvillian.dim,
            eigen,
            inverse,
        })
    }

    /// Eigenvalues `σ_k` of the Liouvillian.
    pub fn rates(&self) -> &[C64] {
        &self.eigen.eigenvalues
    }

    pub fn condition(&self) -> f64 {
        self.eigen.condition
    }

    /// Evolves `rho0` to every grid time, symmetrizing each result.
    pub fn evolve(&self, rho0: &DensityOperator, t_grid: &[f64]) -> Result<Vec<DensityOperator>> {
        check_grid(t_grid)?;
        let space = rho0.space();
        if space.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: space.dim(),
            });
        }
        let coeffs = self.inverse.apply(&rho0.vectorize());
        let v = self.eigen.eigenvectors.as_mat();
        let n = coeffs.len();
        t_grid
            .par_iter()
            .map(|&t| {
                let weighted: Vec<C64> = coeffs
                    .iter()
                    .zip(&self.eigen.eigenvalues)
                    .map(|(c, s)| c * (s * t).exp())
                    .collect();
                let vec_rho: Vec<C64> = (0..n)
                    .map(|i| (0..n).map(|k| v[(i, k)] * weighted[k]).sum())
                    .collect();
                let mut rho = DensityOperator::unvectorize(space, &vec_rho)?;
                let deviation = rho.symmetrize();
                debug!("t = {t}: symmetrization removed {deviation:.3e}");
                if deviation > HERMITICITY_BUDGET {
                    return Err(Error::HermiticityDrift { deviation });
                }
                Ok(rho)
            })
            .collect()
    }
}

pub fn evolve_spectral(
    liouvillian: &Liouvillian,
    rho0: &DensityOperator,
    t_grid: &[f64],
) -> Result<Vec<DensityOperator>> {
    SpectralPropagator::new(liouvillian)?.evolve(rho0, t_grid)
}

/// Largest RK4 step used by [`evolve_integrate`].
pub fn integrator_step_limit(liouvillian: &Liouvillian) -> f64 {
    let norm = liouvillian.inf_norm();
    if norm > 0.0 {
        STEP_SCALE / norm
    } else {
        f64::INFINITY
    }
}

/// Fixed-step RK4 on `d vec(ρ)/dt = L vec(ρ)` from `t = 0`.
pub fn evolve_integrate(
    liouvillian: &Liouvillian,
    rho0: &DensityOperator,
    t_grid: &[f64],
) -> Result<Vec<DensityOperator>> {
    check_grid(t_grid)?;
    let space = rho0.space();
    if space.dim() != liouvillian.dim {
        return Err(Error::DimensionMismatch {
            expected: liouvillian.dim,
            found: space.dim(),
        });
    }
    let d = liouvillian.dim;
    let h_max = integrator_step_limit(liouvillian);
    let trace_of = |v: &[C64]| -> f64 { (0..d).map(|i| v[i * d + i].re).sum() };

    let mut state = rho0.vectorize();
    let initial_trace = trace_of(&state);
    let n = state.len();
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (
        vec![ZERO; n],
        vec![ZERO; n],
        vec![ZERO; n],
        vec![ZERO; n],
        vec![ZERO; n],
    );

    let mut now = 0.0;
    let mut out = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let span = t - now;
        if span > 0.0 {
            let steps = (span / h_max).ceil().max(1.0) as usize;
            let h = span / steps as f64;
            for _ in 0..steps {
                liouvillian.apply_into(&state, &mut k1);
                axpy_into(&state, &k1, h / 2.0, &mut tmp);
                liouvillian.apply_into(&tmp, &mut k2);
                axpy_into(&state, &k2, h / 2.0, &mut tmp);
                liouvillian.apply_into(&tmp, &mut k3);
                axpy_into(&state, &k3, h, &mut tmp);
                liouvillian.apply_into(&tmp, &mut k4);
                for i in 0..n {
                    state[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
                }
            }
            now = t;
            let drift = (trace_of(&state) - initial_trace).abs();
            if !(drift <= TRACE_DRIFT_LIMIT) {
                return Err(Error::StepInstability { t, drift });
            }
        }
        out.push(DensityOperator::unvectorize(space, &state)?);
    }
    Ok(out)
}

fn axpy_into(x: &[C64], y: &[C64], a: f64, out: &mut [C64]) {
    for ((o, xi), yi) in out.iter_mut().zip(x).zip(y) {
        *o = xi + yi * a;
    }
}

/// Density matrices of `cfg` over its time grid using the configured solver.
///
/// The spectral path falls back to the integrator when the Liouvillian's
/// eigenvectors are too ill-conditioned.
pub fn evolve_config(cfg: &CouplerConfig) -> Result<Vec<DensityOperator>> {
    cfg.validate()?;
    let space = cfg.space()?;
    let liouvillian = build_liouvillian(&build_hamiltonian(cfg)?, &build_collapse_operators(cfg)?)?;
    let rho0 = crate::fock::PureState::basis(space, cfg.initial)?.to_density();
    let grid = cfg.time_grid();
    match cfg.solver {
        SolverKind::Integrate => evolve_integrate(&liouvillian, &rho0, &grid),
        SolverKind::Spectral => match evolve_spectral(&liouvillian, &rho0, &grid) {
            Err(Error::FallbackRequired { condition }) => {
                debug!("spectral path refused (condition {condition:.3e}); integrating instead");
                evolve_integrate(&liouvillian, &rho0, &grid)
            }
            other => other,
        },
    }
}

/// Open-system run of `cfg`: populations, Bell probabilities `⟨B_i|ρ|B_i⟩`,
/// concurrence of the renormalized qubit block, leakage and trace.
pub fn run_open(cfg: &CouplerConfig) -> Result<Vec<TimeSeriesRecord>> {
    let states = evolve_config(cfg)?;
    cfg.time_grid()
        .iter()
        .zip(&states)
        .map(|(&t, rho)| {
            check_leakage(t, TwoModeState::leakage(rho))?;
            TimeSeriesRecord::from_density(t, rho)
        })
        .collect()
}
