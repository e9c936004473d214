//! Bell-basis analysis and Wootters concurrence.
//!
//! Two-qubit matrices use the basis order `|00⟩, |01⟩, |10⟩, |11⟩`, which is
//! the flat order of [`FockSpace::qubits`].

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::fock::{
    hermitian_eigendecompose, DensityOperator, FockSpace, OperatorMatrix, PureState, C64, ZERO,
};

/// Eigenvalues of `ρ ρ̃` below this magnitude are treated as zero.
pub const SPECTRUM_CLAMP: f64 = 1e-12;
/// Projection traces below this make the projected concurrence meaningless.
pub const MIN_QUBIT_TRACE: f64 = 0.5;

// Eigenvalues of ρ below this are dropped before taking its square root.
const SQRT_CLAMP: f64 = 1e-14;

/// The four Bell-like states, as amplitudes in `|00⟩, |01⟩, |10⟩, |11⟩` order:
///
/// * `B1 = (|11⟩ + i|00⟩)/√2`
/// * `B2 = (|00⟩ + i|11⟩)/√2`
/// * `B3 = (|01⟩ − i|10⟩)/√2`
/// * `B4 = (|10⟩ − i|01⟩)/√2`
pub fn bell_vectors() -> [[C64; 4]; 4] {
    let r = C64::new(FRAC_1_SQRT_2, 0.0);
    let ir = C64::new(0.0, FRAC_1_SQRT_2);
    [
        [ir, ZERO, ZERO, r],
        [r, ZERO, ZERO, ir],
        [ZERO, r, -ir, ZERO],
        [ZERO, -ir, r, ZERO],
    ]
}

/// The Bell-like states as pure states on the two-qubit Fock space.
pub fn bell_states() -> [PureState; 4] {
    bell_vectors().map(|v| {
        PureState::from_amplitudes(FockSpace::qubits(), v.to_vec())
            .expect("qubit space has dimension 4")
    })
}

/// States that expose their `|00⟩, |01⟩, |10⟩, |11⟩` block.
pub trait TwoModeState {
    fn space(&self) -> FockSpace;

    /// Unnormalized 4×4 block of the density matrix on the qubit subspace.
    fn qubit_block(&self) -> [[C64; 4]; 4];

    fn bell_decompose(&self) -> BellDecomposition;

    /// `1 − (p00 + p01 + p10 + p11)`.
    fn leakage(&self) -> f64 {
        let block = self.qubit_block();
        1.0 - (0..4).map(|i| block[i][i].re).sum::<f64>()
    }
}

impl TwoModeState for PureState {
    fn space(&self) -> FockSpace {
        PureState::space(self)
    }

    fn qubit_block(&self) -> [[C64; 4]; 4] {
        let psi = qubit_amplitudes(self);
        std::array::from_fn(|i| std::array::from_fn(|j| psi[i] * psi[j].conj()))
    }

    fn bell_decompose(&self) -> BellDecomposition {
        let psi = qubit_amplitudes(self);
        let amplitudes =
            bell_vectors().map(|b| b.iter().zip(&psi).map(|(bk, pk)| bk.conj() * pk).sum());
        BellDecomposition::Pure {
            amplitudes,
            leakage: TwoModeState::leakage(self),
        }
    }
}

impl TwoModeState for DensityOperator {
    fn space(&self) -> FockSpace {
        DensityOperator::space(self)
    }

    fn qubit_block(&self) -> [[C64; 4]; 4] {
        let q = DensityOperator::space(self).qubit_indices();
        q.map(|r| q.map(|c| self.get(r, c)))
    }

    fn bell_decompose(&self) -> BellDecomposition {
        let block = self.qubit_block();
        let probabilities = bell_vectors().map(|b| {
            let mut acc = ZERO;
            for i in 0..4 {
                for j in 0..4 {
                    acc += b[i].conj() * block[i][j] * b[j];
                }
            }
            acc.re
        });
        BellDecomposition::Mixed {
            probabilities,
            leakage: TwoModeState::leakage(self),
        }
    }
}

fn qubit_amplitudes(state: &PureState) -> [C64; 4] {
    let q = state.space().qubit_indices();
    q.map(|k| state.amplitudes()[k])
}

/// Components of a state along `B1..B4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BellDecomposition {
    /// `b_i = ⟨B_i|ψ⟩`.
    Pure { amplitudes: [C64; 4], leakage: f64 },
    /// `p_i = ⟨B_i|ρ|B_i⟩`.
    Mixed {
        probabilities: [f64; 4],
        leakage: f64,
    },
}

impl BellDecomposition {
    pub fn probabilities(&self) -> [f64; 4] {
        match self {
            Self::Pure { amplitudes, .. } => amplitudes.map(|b| b.norm_sqr()),
            Self::Mixed { probabilities, .. } => *probabilities,
        }
    }

    pub fn leakage(&self) -> f64 {
        match self {
            Self::Pure { leakage, .. } | Self::Mixed { leakage, .. } => *leakage,
        }
    }
}

pub fn bell_decompose<S: TwoModeState + ?Sized>(state: &S) -> BellDecomposition {
    state.bell_decompose()
}

/// Renormalized qubit block of a two-mode state.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitDensity {
    matrix: OperatorMatrix,
    pre_normalization_trace: f64,
}

impl TwoQubitDensity {
    /// Wraps a 4×4 density matrix; it is normalized by its trace.
    pub fn from_matrix(matrix: OperatorMatrix) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: matrix.dim(),
            });
        }
        let trace = matrix.trace().re;
        if !(trace > 0.0) {
            return Err(Error::ExcessiveLeakage { trace });
        }
        Ok(Self {
            matrix: matrix.scale(C64::new(1.0 / trace, 0.0)),
            pre_normalization_trace: trace,
        })
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    pub fn pre_normalization_trace(&self) -> f64 {
        self.pre_normalization_trace
    }
}

/// Projects onto `{|00⟩, |01⟩, |10⟩, |11⟩}` and renormalizes.
pub fn reduce_to_two_qubits<S: TwoModeState + ?Sized>(state: &S) -> Result<TwoQubitDensity> {
    let block = state.qubit_block();
    let trace: f64 = (0..4).map(|i| block[i][i].re).sum();
    if trace < MIN_QUBIT_TRACE {
        return Err(Error::ExcessiveLeakage { trace });
    }
    TwoQubitDensity::from_matrix(OperatorMatrix::from_fn(4, |i, j| block[i][j]))
}

/// `σ_y ⊗ σ_y` with `σ_y = [[0, −i], [i, 0]]`.
pub fn spin_flip() -> OperatorMatrix {
    let sy = [[ZERO, C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), ZERO]];
    OperatorMatrix::from_fn(4, |r, c| sy[r / 2][c / 2] * sy[r % 2][c % 2])
}

/// `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
pub fn spin_flipped(rho: &OperatorMatrix) -> OperatorMatrix {
    let s = spin_flip();
    &(&s * &rho.conj()) * &s
}

/// `λ_i`, the square roots of the eigenvalues of `ρ ρ̃`, in decreasing order.
///
/// They are the singular values of `√ρ √ρ̃`, which is how they are computed:
/// that product keeps full relative accuracy near product states, where
/// `ρ ρ̃` is nilpotent and its eigenvalues are ill-conditioned.
pub fn wootters_lambdas(rho: &TwoQubitDensity) -> [f64; 4] {
    let sqrt_rho = psd_sqrt(rho.matrix());
    let sqrt_tilde = spin_flipped(&sqrt_rho);
    let product = &sqrt_rho * &sqrt_tilde;
    let mut sv = product
        .as_mat()
        .singular_values()
        .unwrap_or_else(|_| vec![0.0; 4]);
    sv.sort_by(|a, b| b.total_cmp(a));
    std::array::from_fn(|i| {
        let s = sv.get(i).copied().unwrap_or(0.0);
        if s * s < SPECTRUM_CLAMP {
            0.0
        } else {
            s
        }
    })
}

/// `C = max(0, λ1 − λ2 − λ3 − λ4)`.
pub fn concurrence(rho: &TwoQubitDensity) -> f64 {
    let l = wootters_lambdas(rho);
    (l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0)
}

/// Principal square root of a Hermitian positive semidefinite matrix,
/// with round-off eigenvalues dropped.
fn psd_sqrt(m: &OperatorMatrix) -> OperatorMatrix {
    let sym = (m + &m.adjoint()).scale(C64::new(0.5, 0.0));
    let evd = hermitian_eigendecompose(&sym).expect("symmetrized input is Hermitian");
    evd.reconstruct_with(|l| {
        if l > SQRT_CLAMP {
            C64::new(l.sqrt(), 0.0)
        } else {
            ZERO
        }
    })
}
