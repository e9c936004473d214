//! Coupler parameters, the two-mode Hamiltonian and the photon-leakage
//! collapse operators.
//!
//! Units: ħ = 1 and time is dimensionless; `chi`, `epsilon`, `alpha` and
//! `kappa` share one frequency unit.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fock::{annihilation, tensor, FockIndex, FockSpace, OperatorMatrix, C64};

/// Default per-mode cutoff for unitary runs.
pub const DEFAULT_CLOSED_CUTOFF: usize = 9;
/// Default per-mode cutoff for Lindblad runs (Liouvillian of size 256×256).
pub const DEFAULT_OPEN_CUTOFF: usize = 3;
/// Ratio `|chi| / max(|epsilon|, |alpha|)` at which the four-state truncation is flagged valid.
pub const SCISSORS_RATIO: f64 = 10.0;

/// Which Lindblad propagator `run_open` uses first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolverKind {
    /// Liouvillian eigendecomposition, falling back to the integrator when ill-conditioned.
    #[default]
    Spectral,
    /// Fixed-step fourth-order integration.
    Integrate,
}

impl SolverKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverKind::Spectral => "spectral",
            SolverKind::Integrate => "integrate",
        }
    }
}

impl std::str::FromStr for SolverKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "spectral" => Ok(SolverKind::Spectral),
            "integrate" => Ok(SolverKind::Integrate),
            other => Err(format!(
                "unknown solver `{other}` (expected spectral or integrate)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CouplerConfig {
    pub chi_a: f64,
    pub chi_b: f64,
    /// Internal mode-mode coupling.
    pub epsilon: C64,
    /// External pump on mode `a`.
    pub alpha: C64,
    pub kappa_a: f64,
    pub kappa_b: f64,
    pub cutoff_a: usize,
    pub cutoff_b: usize,
    pub t_max: f64,
    pub dt: f64,
    pub initial: FockIndex,
    pub solver: SolverKind,
}

impl CouplerConfig {
    /// `chi_a = chi_b = 25`, `epsilon = alpha = pi/25`, t ∈ [0, 250] sampled every 0.5,
    /// vacuum start, no leakage, cutoffs 9.
    pub fn reference() -> Self {
        Self {
            chi_a: 25.0,
            chi_b: 25.0,
            epsilon: C64::new(PI / 25.0, 0.0),
            alpha: C64::new(PI / 25.0, 0.0),
            kappa_a: 0.0,
            kappa_b: 0.0,
            cutoff_a: DEFAULT_CLOSED_CUTOFF,
            cutoff_b: DEFAULT_CLOSED_CUTOFF,
            t_max: 250.0,
            dt: 0.5,
            initial: FockIndex::new(0, 0),
            solver: SolverKind::Spectral,
        }
    }

    /// Reference couplings with equal leakage `kappa` on both modes at the open-run cutoffs.
    pub fn reference_open(kappa: f64) -> Self {
        Self {
            kappa_a: kappa,
            kappa_b: kappa,
            cutoff_a: DEFAULT_OPEN_CUTOFF,
            cutoff_b: DEFAULT_OPEN_CUTOFF,
            ..Self::reference()
        }
    }

    pub fn with_cutoffs(mut self, cutoff_a: usize, cutoff_b: usize) -> Self {
        self.cutoff_a = cutoff_a;
        self.cutoff_b = cutoff_b;
        self
    }

    pub fn with_kappa(mut self, kappa_a: f64, kappa_b: f64) -> Self {
        self.kappa_a = kappa_a;
        self.kappa_b = kappa_b;
        self
    }

    pub fn is_closed(&self) -> bool {
        self.kappa_a == 0.0 && self.kappa_b == 0.0
    }

    /// Checks every field and reports all offending ones at once.
    pub fn validate(&self) -> Result<()> {
        let mut bad = Vec::new();
        let finite = [
            ("chi_a", self.chi_a),
            ("chi_b", self.chi_b),
            ("epsilon_re", self.epsilon.re),
            ("epsilon_im", self.epsilon.im),
            ("alpha_re", self.alpha.re),
            ("alpha_im", self.alpha.im),
            ("kappa_a", self.kappa_a),
            ("kappa_b", self.kappa_b),
            ("t_max", self.t_max),
            ("dt", self.dt),
        ];
        for (name, value) in finite {
            if !value.is_finite() {
                bad.push(format!("{name} must be finite (got {value})"));
            }
        }
        for (name, kappa) in [("kappa_a", self.kappa_a), ("kappa_b", self.kappa_b)] {
            if kappa < 0.0 {
                bad.push(format!("{name} must be >= 0 (got {kappa})"));
            }
        }
        for (name, cutoff) in [("cutoff_a", self.cutoff_a), ("cutoff_b", self.cutoff_b)] {
            if cutoff < 1 {
                bad.push(format!("{name} must be >= 1 (got {cutoff})"));
            }
        }
        if !(self.dt > 0.0) {
            bad.push(format!("dt must be > 0 (got {})", self.dt));
        }
        // t_max = 0 is a single-sample run; otherwise the grid must hold at least one step.
        if self.t_max < 0.0 || (self.t_max > 0.0 && self.t_max < self.dt) {
            bad.push(format!(
                "t_max must be 0 or >= dt (got t_max = {}, dt = {})",
                self.t_max, self.dt
            ));
        }
        if self.initial.n_a > self.cutoff_a {
            bad.push(format!(
                "initial_na = {} exceeds cutoff_a = {}",
                self.initial.n_a, self.cutoff_a
            ));
        }
        if self.initial.n_b > self.cutoff_b {
            bad.push(format!(
                "initial_nb = {} exceeds cutoff_b = {}",
                self.initial.n_b, self.cutoff_b
            ));
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig { fields: bad })
        }
    }

    pub fn space(&self) -> Result<FockSpace> {
        FockSpace::new(self.cutoff_a, self.cutoff_b)
    }

    /// True when both Kerr constants dominate the linear couplings by [`SCISSORS_RATIO`].
    pub fn scissors_valid(&self) -> bool {
        let coupling = self.epsilon.norm().max(self.alpha.norm());
        self.chi_a.abs() >= SCISSORS_RATIO * coupling
            && self.chi_b.abs() >= SCISSORS_RATIO * coupling
    }

    /// Sample times `k·dt` for `k = 0..=floor(t_max/dt)`.
    pub fn time_grid(&self) -> Vec<f64> {
        let steps = (self.t_max / self.dt + 1e-9).floor() as usize;
        (0..=steps).map(|k| k as f64 * self.dt).collect()
    }
}

/// Mode operators `a ⊗ I` and `I ⊗ b` on `space`.
pub fn mode_operators(space: FockSpace) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let a = annihilation(space.cutoff_a())?;
    let b = annihilation(space.cutoff_b())?;
    let id_a = OperatorMatrix::identity(space.cutoff_a() + 1);
    let id_b = OperatorMatrix::identity(space.cutoff_b() + 1);
    Ok((tensor(&a, &id_b), tensor(&id_a, &b)))
}

/// Total photon number `a†a + b†b`.
pub fn total_number(space: FockSpace) -> Result<OperatorMatrix> {
    let (a, b) = mode_operators(space)?;
    Ok(&(&a.adjoint() * &a) + &(&b.adjoint() * &b))
}

/// `H = (χa/2) a†²a² + (χb/2) b†²b² + ε a†b + ε* a b† + α a† + α* a`.
pub fn build_hamiltonian(cfg: &CouplerConfig) -> Result<OperatorMatrix> {
    cfg.validate()?;
    let space = cfg.space()?;
    let (a, b) = mode_operators(space)?;
    let (ad, bd) = (a.adjoint(), b.adjoint());

    let kerr = |op: &OperatorMatrix, op_dag: &OperatorMatrix, chi: f64| {
        let pairs = &(op_dag * op_dag) * &(op * op);
        pairs.scale(C64::new(chi / 2.0, 0.0))
    };
    let nonlinear = &kerr(&a, &ad, cfg.chi_a) + &kerr(&b, &bd, cfg.chi_b);
    let internal = &(&ad * &b).scale(cfg.epsilon) + &(&a * &bd).scale(cfg.epsilon.conj());
    let external = &ad.scale(cfg.alpha) + &a.scale(cfg.alpha.conj());

    Ok(&(&nonlinear + &internal) + &external)
}

/// `C_a = sqrt(2κa) a`, `C_b = sqrt(2κb) b`, omitting those with zero rate.
pub fn build_collapse_operators(cfg: &CouplerConfig) -> Result<Vec<OperatorMatrix>> {
    cfg.validate()?;
    let (a, b) = mode_operators(cfg.space()?)?;
    Ok([(cfg.kappa_a, a), (cfg.kappa_b, b)]
        .into_iter()
        .filter(|(kappa, _)| *kappa > 0.0)
        .map(|(kappa, op)| op.scale(C64::new((2.0 * kappa).sqrt(), 0.0)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockIndex;

    fn elem(h: &OperatorMatrix, space: FockSpace, row: (usize, usize), col: (usize, usize)) -> C64 {
        let r = space.flatten(FockIndex::new(row.0, row.1)).unwrap();
        let c = space.flatten(FockIndex::new(col.0, col.1)).unwrap();
        h.get(r, c)
    }

    #[test]
    fn qubit_block_coupling_pattern() {
        let mut cfg = CouplerConfig::reference().with_cutoffs(1, 1);
        cfg.epsilon = C64::new(0.3, -0.2);
        cfg.alpha = C64::new(0.7, 0.1);
        let space = cfg.space().unwrap();
        let h = build_hamiltonian(&cfg).unwrap();
        assert_eq!(elem(&h, space, (1, 0), (0, 0)), cfg.alpha);
        assert_eq!(elem(&h, space, (0, 1), (1, 0)), cfg.epsilon.conj());
        assert_eq!(elem(&h, space, (1, 1), (0, 1)), cfg.alpha);
        for n in space.indices() {
            let k = space.flatten(n).unwrap();
            assert_eq!(h.get(k, k), C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn kerr_only_spectrum() {
        let mut cfg = CouplerConfig::reference().with_cutoffs(4, 3);
        cfg.chi_a = 3.0;
        cfg.chi_b = 7.0;
        cfg.epsilon = C64::new(0.0, 0.0);
        cfg.alpha = C64::new(0.0, 0.0);
        let space = cfg.space().unwrap();
        let h = build_hamiltonian(&cfg).unwrap();
        for idx in space.indices() {
            let k = space.flatten(idx).unwrap();
            let (n, m) = (idx.n_a as f64, idx.n_b as f64);
            let want = 1.5 * n * (n - 1.0) + 3.5 * m * (m - 1.0);
            assert!((h.get(k, k).re - want).abs() < 1e-12, "{idx}");
            for j in 0..space.dim() {
                if j != k {
                    assert_eq!(h.get(k, j), C64::new(0.0, 0.0));
                }
            }
        }
        for q in space.qubit_indices() {
            assert_eq!(h.get(q, q), C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn all_zero_parameters_give_zero_matrix() {
        let mut cfg = CouplerConfig::reference().with_cutoffs(2, 2);
        cfg.chi_a = 0.0;
        cfg.chi_b = 0.0;
        cfg.epsilon = C64::new(0.0, 0.0);
        cfg.alpha = C64::new(0.0, 0.0);
        let h = build_hamiltonian(&cfg).unwrap();
        assert_eq!(h, OperatorMatrix::zeros(9));
    }

    #[test]
    fn hermitian_for_complex_couplings() {
        let mut cfg = CouplerConfig::reference().with_cutoffs(5, 4);
        cfg.epsilon = C64::new(0.11, 0.42);
        cfg.alpha = C64::new(-0.3, 0.05);
        let h = build_hamiltonian(&cfg).unwrap();
        assert!(h.hermiticity_deviation() <= 1e-12);
    }

    #[test]
    fn qubit_block_independent_of_kerr() {
        let block = |chi: f64| {
            let mut cfg = CouplerConfig::reference().with_cutoffs(4, 4);
            cfg.chi_a = chi;
            cfg.chi_b = 2.0 * chi + 1.0;
            let space = cfg.space().unwrap();
            let h = build_hamiltonian(&cfg).unwrap();
            let q = space.qubit_indices();
            q.map(|r| q.map(|c| h.get(r, c)))
        };
        assert_eq!(block(0.0), block(25.0));
        assert_eq!(block(25.0), block(-3.5));
    }

    #[test]
    fn photon_number_conserved_without_pump() {
        let mut cfg = CouplerConfig::reference().with_cutoffs(4, 4);
        cfg.alpha = C64::new(0.0, 0.0);
        cfg.epsilon = C64::new(0.2, 0.1);
        let space = cfg.space().unwrap();
        let h = build_hamiltonian(&cfg).unwrap();
        let comm = h.commutator(&total_number(space).unwrap());
        for idx in space.indices().filter(|i| i.n_a + i.n_b <= 2) {
            let col = space.flatten(idx).unwrap();
            for row in 0..space.dim() {
                assert!(comm.get(row, col).norm() < 1e-12, "column {idx}");
            }
        }
    }

    #[test]
    fn collapse_operators() {
        let cfg = CouplerConfig::reference().with_cutoffs(1, 1);
        assert!(build_collapse_operators(&cfg).unwrap().is_empty());

        let space = cfg.space().unwrap();
        let (a, b) = mode_operators(space).unwrap();

        let ops = build_collapse_operators(&cfg.clone().with_kappa(1e-4, 0.0)).unwrap();
        assert_eq!(ops.len(), 1);
        assert!(ops[0].max_abs_diff(&a.scale(C64::new(2e-4f64.sqrt(), 0.0))) < 1e-15);

        let ops = build_collapse_operators(&cfg.clone().with_kappa(0.0, 1e-3)).unwrap();
        assert_eq!(ops.len(), 1);
        assert!(ops[0].max_abs_diff(&b.scale(C64::new(2e-3f64.sqrt(), 0.0))) < 1e-15);
    }

    #[test]
    fn negative_kappa_rejected() {
        let cfg = CouplerConfig::reference().with_kappa(-1.0, 0.0);
        match build_collapse_operators(&cfg) {
            Err(Error::InvalidConfig { fields }) => assert!(fields[0].contains("kappa_a")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validation_lists_every_offending_field() {
        let mut cfg = CouplerConfig::reference();
        cfg.cutoff_b = 0;
        cfg.dt = 0.0;
        cfg.kappa_b = -2.0;
        let Err(Error::InvalidConfig { fields }) = cfg.validate() else {
            panic!("expected validation failure");
        };
        assert_eq!(fields.len(), 3, "{fields:?}");
        for name in ["kappa_b", "cutoff_b", "dt"] {
            assert!(fields.iter().any(|f| f.starts_with(name)), "{fields:?}");
        }
    }

    #[test]
    fn scissors_flag() {
        assert!(CouplerConfig::reference().scissors_valid());
        let mut cfg = CouplerConfig::reference();
        cfg.chi_a = 1.0;
        assert!(!cfg.scissors_valid());
    }

    #[test]
    fn time_grid_includes_endpoint() {
        let grid = CouplerConfig::reference().time_grid();
        assert_eq!(grid.len(), 501);
        assert_eq!(*grid.last().unwrap(), 250.0);
        let mut cfg = CouplerConfig::reference();
        cfg.t_max = 0.0;
        assert_eq!(cfg.time_grid(), vec![0.0]);
    }
}
