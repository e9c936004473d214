//! Dense complex linear algebra over a truncated two-mode Fock space.
//!
//! Basis states `|n_a⟩|n_b⟩` are laid out row-major in `(n_a, n_b)`:
//! `flat = n_a * (cutoff_b + 1) + n_b`. Every module goes through
//! [`FockSpace::flatten`] / [`FockSpace::unflatten`] for this mapping.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use faer::linalg::solvers::DenseSolveCore;
use faer::{Mat, MatRef, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// Tolerance below which a matrix is accepted as Hermitian by the eigensolvers.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Photon numbers of the two modes, `|n_a⟩|n_b⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FockIndex {
    pub n_a: usize,
    pub n_b: usize,
}

impl FockIndex {
    pub const fn new(n_a: usize, n_b: usize) -> Self {
        Self { n_a, n_b }
    }
}

impl fmt::Display for FockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{}⟩", self.n_a, self.n_b)
    }
}

/// Truncated product space `{0..=cutoff_a} × {0..=cutoff_b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockSpace {
    cutoff_a: usize,
    cutoff_b: usize,
}

impl FockSpace {
    pub fn new(cutoff_a: usize, cutoff_b: usize) -> Result<Self> {
        for cutoff in [cutoff_a, cutoff_b] {
            if cutoff < 1 {
                return Err(Error::InvalidDimension { cutoff });
            }
        }
        Ok(Self { cutoff_a, cutoff_b })
    }

    /// The four-state space spanned by `n_a, n_b ∈ {0, 1}`.
    pub fn qubits() -> Self {
        Self {
            cutoff_a: 1,
            cutoff_b: 1,
        }
    }

    pub fn cutoff_a(&self) -> usize {
        self.cutoff_a
    }

    pub fn cutoff_b(&self) -> usize {
        self.cutoff_b
    }

    pub fn dim(&self) -> usize {
        (self.cutoff_a + 1) * (self.cutoff_b + 1)
    }

    pub fn contains(&self, index: FockIndex) -> bool {
        index.n_a <= self.cutoff_a && index.n_b <= self.cutoff_b
    }

    /// Flat position of `index`, or `None` if it lies outside the cutoffs.
    pub fn flatten(&self, index: FockIndex) -> Option<usize> {
        self.contains(index)
            .then(|| index.n_a * (self.cutoff_b + 1) + index.n_b)
    }

    pub fn unflatten(&self, flat: usize) -> Option<FockIndex> {
        (flat < self.dim()).then(|| FockIndex {
            n_a: flat / (self.cutoff_b + 1),
            n_b: flat % (self.cutoff_b + 1),
        })
    }

    pub fn indices(&self) -> impl Iterator<Item = FockIndex> + '_ {
        (0..self.dim()).map(move |k| FockIndex {
            n_a: k / (self.cutoff_b + 1),
            n_b: k % (self.cutoff_b + 1),
        })
    }

    /// Flat positions of `|00⟩, |01⟩, |10⟩, |11⟩`, in that order.
    pub fn qubit_indices(&self) -> [usize; 4] {
        let stride = self.cutoff_b + 1;
        [0, 1, stride, stride + 1]
    }
}

/// Square complex matrix acting on a (single- or two-mode) truncated space.
#[derive(Clone, PartialEq)]
pub struct OperatorMatrix {
    mat: Mat<C64>,
}

impl fmt::Debug for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "OperatorMatrix({}x{}) [", self.dim(), self.dim())?;
        for i in 0..self.dim() {
            write!(f, "  ")?;
            for j in 0..self.dim() {
                let z = self.mat[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            mat: Mat::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: Mat::identity(dim, dim),
        }
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self {
            mat: Mat::from_fn(dim, dim, f),
        }
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i] } else { ZERO })
    }

    /// Builds from row-major nested rows; every row must have the same length as the outer vector.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self::from_fn(dim, |i, j| rows[i][j]))
    }

    pub(crate) fn from_mat(mat: Mat<C64>) -> Self {
        debug_assert_eq!(mat.nrows(), mat.ncols());
        Self { mat }
    }

    pub fn as_mat(&self) -> MatRef<'_, C64> {
        self.mat.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.mat[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.mat[(row, col)] = value;
    }

    pub fn adjoint(&self) -> Self {
        Self::from_mat(self.mat.adjoint().to_owned())
    }

    pub fn transpose(&self) -> Self {
        Self::from_mat(self.mat.transpose().to_owned())
    }

    pub fn conj(&self) -> Self {
        Self::from_mat(self.mat.conjugate().to_owned())
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::from_fn(self.dim(), |i, j| self.mat[(i, j)] * factor)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.mat[(i, i)]).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "max_abs_diff: dimension mismatch");
        let n = self.dim();
        let mut worst = 0.0_f64;
        for j in 0..n {
            for i in 0..n {
                worst = worst.max((self.mat[(i, j)] - other.mat[(i, j)]).norm());
            }
        }
        worst
    }

    /// `max |M - M†|` entrywise.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for j in 0..n {
            for i in 0..=j {
                worst = worst.max((self.mat[(i, j)] - self.mat[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .flat_map(|j| (0..n).map(move |i| (i, j)))
            .map(|(i, j)| self.mat[(i, j)].norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.mat.norm_l2()
    }

    /// Matrix-vector product `M v`.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim(), "apply: dimension mismatch");
        let n = self.dim();
        let mut out = vec![ZERO; n];
        for (j, &vj) in v.iter().enumerate() {
            if vj == ZERO {
                continue;
            }
            let col = self.mat.col(j);
            for (i, o) in out.iter_mut().enumerate() {
                *o += col[i] * vj;
            }
        }
        out
    }

    /// Commutator `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

impl<'a> Add<&'a OperatorMatrix> for &'a OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &'a OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix::from_mat(&self.mat + &rhs.mat)
    }
}

impl<'a> Sub<&'a OperatorMatrix> for &'a OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &'a OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix::from_mat(&self.mat - &rhs.mat)
    }
}

impl<'a> Mul<&'a OperatorMatrix> for &'a OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &'a OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix::from_mat(&self.mat * &rhs.mat)
    }
}

/// Truncated ladder operator: entry `(n-1, n) = sqrt(n)` for `n = 1..=cutoff`.
pub fn annihilation(cutoff: usize) -> Result<OperatorMatrix> {
    if cutoff < 1 {
        return Err(Error::InvalidDimension { cutoff });
    }
    Ok(OperatorMatrix::from_fn(cutoff + 1, |i, j| {
        if j == i + 1 {
            C64::new((j as f64).sqrt(), 0.0)
        } else {
            ZERO
        }
    }))
}

pub fn creation(cutoff: usize) -> Result<OperatorMatrix> {
    annihilation(cutoff).map(|a| a.adjoint())
}

pub fn number(cutoff: usize) -> Result<OperatorMatrix> {
    if cutoff < 1 {
        return Err(Error::InvalidDimension { cutoff });
    }
    let diag: Vec<C64> = (0..=cutoff).map(|n| C64::new(n as f64, 0.0)).collect();
    Ok(OperatorMatrix::from_diagonal(&diag))
}

/// Kronecker product matching the flat ordering:
/// `((i_a, i_b), (j_a, j_b)) = A(i_a, j_a) · B(i_b, j_b)`.
pub fn tensor(a: &OperatorMatrix, b: &OperatorMatrix) -> OperatorMatrix {
    let (na, nb) = (a.dim(), b.dim());
    OperatorMatrix::from_fn(na * nb, |row, col| {
        a.get(row / nb, col / nb) * b.get(row % nb, col % nb)
    })
}

/// `M = V diag(λ) V†`, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: OperatorMatrix,
}

impl HermitianEigen {
    /// Rebuilds `V f(λ) V†` for a scalar function of the spectrum.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> C64) -> OperatorMatrix {
        let v = self.eigenvectors.as_mat();
        let n = v.nrows();
        let scaled = Mat::from_fn(n, n, |i, k| v[(i, k)] * f(self.eigenvalues[k]));
        OperatorMatrix::from_mat(&scaled * v.adjoint())
    }
}

pub fn hermitian_eigendecompose(m: &OperatorMatrix) -> Result<HermitianEigen> {
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::ContractViolation(format!(
            "hermitian_eigendecompose requires a Hermitian matrix (|M - M†| = {deviation:.3e})"
        )));
    }
    let evd = m
        .as_mat()
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::SolverFailure {
            residual: f64::INFINITY,
        })?;
    let eigenvalues = evd
        .S()
        .column_vector()
        .iter()
        .copied()
        .map(|z| z.re)
        .collect();
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors: OperatorMatrix::from_mat(evd.U().to_owned()),
    })
}

/// Right eigenpairs `M v_k = σ_k v_k` with unit-norm columns.
#[derive(Debug, Clone)]
pub struct GeneralEigen {
    pub eigenvalues: Vec<C64>,
    pub eigenvectors: OperatorMatrix,
    /// 2-norm condition number of the eigenvector matrix; infinite when singular.
    pub condition: f64,
}

pub fn general_eigendecompose(m: &OperatorMatrix) -> Result<GeneralEigen> {
    let n = m.dim();
    let evd = m.as_mat().eigen().map_err(|_| Error::SolverFailure {
        residual: f64::INFINITY,
    })?;
    let eigenvalues: Vec<C64> = evd.S().column_vector().iter().copied().collect();
    let mut vectors = evd.U().to_owned();
    for k in 0..n {
        let norm = vectors.col(k).norm_l2();
        if norm > 0.0 {
            for i in 0..n {
                vectors[(i, k)] /= norm;
            }
        }
    }

    let scale = m.frobenius_norm();
    let residual = (0..n)
        .map(|k| {
            let mv = &m.mat * vectors.col(k);
            (0..n)
                .map(|i| (mv[i] - eigenvalues[k] * vectors[(i, k)]).norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max);
    if !residual.is_finite() || residual > 1e-8 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::SolverFailure { residual });
    }

    let condition = match vectors.singular_values() {
        Ok(s) => {
            let max = s.iter().copied().fold(0.0, f64::max);
            let min = s.iter().copied().fold(f64::INFINITY, f64::min);
            if min > 0.0 {
                max / min
            } else {
                f64::INFINITY
            }
        }
        Err(_) => f64::INFINITY,
    };

    Ok(GeneralEigen {
        eigenvalues,
        eigenvectors: OperatorMatrix::from_mat(vectors),
        condition,
    })
}

/// Inverse via partial-pivot LU.
pub(crate) fn inverse(m: &OperatorMatrix) -> OperatorMatrix {
    OperatorMatrix::from_mat(m.as_mat().partial_piv_lu().inverse())
}

/// Complex amplitudes `c_{n_a, n_b}` over a two-mode Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    space: FockSpace,
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn from_amplitudes(space: FockSpace, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: amplitudes.len(),
            });
        }
        Ok(Self { space, amplitudes })
    }

    /// Fock basis state `|n_a, n_b⟩`.
    pub fn basis(space: FockSpace, index: FockIndex) -> Result<Self> {
        let flat = space.flatten(index).ok_or_else(|| Error::InvalidConfig {
            fields: vec![format!(
                "initial state {index} lies outside cutoffs ({}, {})",
                space.cutoff_a, space.cutoff_b
            )],
        })?;
        let mut amplitudes = vec![ZERO; space.dim()];
        amplitudes[flat] = ONE;
        Ok(Self { space, amplitudes })
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: FockIndex) -> C64 {
        self.space
            .flatten(index)
            .map_or(ZERO, |k| self.amplitudes[k])
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn normalized(mut self) -> Self {
        let norm = self.norm();
        if norm > 0.0 {
            self.amplitudes.iter_mut().for_each(|c| *c /= norm);
        }
        self
    }

    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|c| c.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.space, other.space, "inner: space mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `⟨ψ|M|ψ⟩`.
    pub fn expectation(&self, op: &OperatorMatrix) -> C64 {
        let applied = op.apply(&self.amplitudes);
        self.amplitudes
            .iter()
            .zip(&applied)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn apply(&self, op: &OperatorMatrix) -> Result<Self> {
        if op.dim() != self.space.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: op.dim(),
            });
        }
        Ok(Self {
            space: self.space,
            amplitudes: op.apply(&self.amplitudes),
        })
    }

    pub fn to_density(&self) -> DensityOperator {
        let psi = &self.amplitudes;
        DensityOperator {
            space: self.space,
            matrix: OperatorMatrix::from_fn(psi.len(), |i, j| psi[i] * psi[j].conj()),
        }
    }
}

/// Density matrix over a two-mode Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    space: FockSpace,
    matrix: OperatorMatrix,
}

impl DensityOperator {
    pub fn from_matrix(space: FockSpace, matrix: OperatorMatrix) -> Result<Self> {
        if matrix.dim() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: matrix.dim(),
            });
        }
        Ok(Self { space, matrix })
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.matrix.get(row, col)
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.space.dim())
            .map(|k| self.matrix.get(k, k).re)
            .collect()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        self.matrix.hermiticity_deviation()
    }

    /// Replaces `ρ` by `(ρ + ρ†)/2` and returns the deviation it removed.
    pub fn symmetrize(&mut self) -> f64 {
        let deviation = self.matrix.hermiticity_deviation();
        let adj = self.matrix.adjoint();
        self.matrix = (&self.matrix + &adj).scale(C64::new(0.5, 0.0));
        deviation
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let mut sym = self.clone();
        sym.symmetrize();
        let evd = hermitian_eigendecompose(&sym.matrix)?;
        Ok(evd.eigenvalues.first().copied().unwrap_or(0.0))
    }

    /// Row-stacking vectorization: `vec(ρ)[i·D + j] = ρ[i][j]`.
    pub fn vectorize(&self) -> Vec<C64> {
        let d = self.space.dim();
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                out.push(self.matrix.get(i, j));
            }
        }
        out
    }

    pub fn unvectorize(space: FockSpace, v: &[C64]) -> Result<Self> {
        let d = space.dim();
        if v.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: v.len(),
            });
        }
        Ok(Self {
            space,
            matrix: OperatorMatrix::from_fn(d, |i, j| v[i * d + j]),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn random_hermitian(n: usize, rng: &mut impl Rng) -> OperatorMatrix {
        let g = OperatorMatrix::from_fn(n, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        (&g + &g.adjoint()).scale(c(0.5))
    }

    #[test]
    fn annihilation_cutoff_one() {
        let a = annihilation(1).unwrap();
        let expected =
            OperatorMatrix::from_rows(&[vec![c(0.0), c(1.0)], vec![c(0.0), c(0.0)]]).unwrap();
        assert_eq!(a, expected);
    }

    #[test]
    fn annihilation_cutoff_two_entries() {
        let a = annihilation(2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = match (i, j) {
                    (0, 1) => 1.0,
                    (1, 2) => 2f64.sqrt(),
                    _ => 0.0,
                };
                assert_eq!(a.get(i, j), c(want), "entry ({i},{j})");
            }
        }
        let two = vec![c(0.0), c(0.0), c(1.0)];
        assert_eq!(a.apply(&two), vec![c(0.0), c(2f64.sqrt()), c(0.0)]);
    }

    #[test]
    fn annihilation_rejects_zero_cutoff() {
        assert!(matches!(
            annihilation(0),
            Err(Error::InvalidDimension { cutoff: 0 })
        ));
        assert!(FockSpace::new(0, 3).is_err());
    }

    #[test]
    fn truncated_commutator_has_top_level_defect() {
        for cutoff in 1..6 {
            let a = annihilation(cutoff).unwrap();
            let comm = a.commutator(&a.adjoint());
            let mut expected = OperatorMatrix::identity(cutoff + 1);
            expected.set(cutoff, cutoff, c(-(cutoff as f64)));
            assert!(comm.max_abs_diff(&expected) < 1e-14, "cutoff {cutoff}");
        }
    }

    #[test]
    fn tensor_examples() {
        let i2 = OperatorMatrix::identity(2);
        assert_eq!(tensor(&i2, &i2), OperatorMatrix::identity(4));

        let n = number(1).unwrap();
        let expected = OperatorMatrix::from_diagonal(&[c(0.0), c(0.0), c(1.0), c(1.0)]);
        assert_eq!(tensor(&n, &i2), expected);

        let space = FockSpace::qubits();
        let a = tensor(&annihilation(1).unwrap(), &i2);
        let one_zero = PureState::basis(space, FockIndex::new(1, 0)).unwrap();
        let lowered = one_zero.apply(&a).unwrap();
        assert_eq!(
            lowered,
            PureState::basis(space, FockIndex::new(0, 0)).unwrap()
        );
    }

    #[test]
    fn tensor_is_associative_on_integer_matrices() {
        let mut rng = seeded(7);
        let m = |n: usize, rng: &mut rand::rngs::StdRng| {
            OperatorMatrix::from_fn(n, |_, _| {
                C64::new(rng.gen_range(-3..4) as f64, rng.gen_range(-3..4) as f64)
            })
        };
        let (a, b, cc) = (m(2, &mut rng), m(3, &mut rng), m(2, &mut rng));
        assert_eq!(tensor(&tensor(&a, &b), &cc), tensor(&a, &tensor(&b, &cc)));
    }

    fn seeded(seed: u64) -> rand::rngs::StdRng {
        rand::rngs::StdRng::seed_from_u64(seed)
    }

    #[test]
    fn hermitian_examples() {
        let d = OperatorMatrix::from_diagonal(&[c(3.0), c(1.0)]);
        assert_eq!(
            hermitian_eigendecompose(&d).unwrap().eigenvalues,
            vec![1.0, 3.0]
        );

        let x = OperatorMatrix::from_rows(&[vec![c(0.0), c(1.0)], vec![c(1.0), c(0.0)]]).unwrap();
        let evd = hermitian_eigendecompose(&x).unwrap();
        assert!((evd.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((evd.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hermitian_rejects_non_hermitian() {
        let m = OperatorMatrix::from_rows(&[vec![c(0.0), c(1.0)], vec![c(0.0), c(0.0)]]).unwrap();
        assert!(matches!(
            hermitian_eigendecompose(&m),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn random_hermitian_16_is_unitarily_diagonalized() {
        let mut rng = seeded(42);
        let m = random_hermitian(16, &mut rng);
        let evd = hermitian_eigendecompose(&m).unwrap();
        let v = &evd.eigenvectors;
        assert!((&v.adjoint() * v).max_abs_diff(&OperatorMatrix::identity(16)) < 1e-9);
        assert!(evd.reconstruct_with(c).max_abs_diff(&m) < 1e-9);
        assert!(evd.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let sum: f64 = evd.eigenvalues.iter().sum();
        assert!((sum - m.trace().re).abs() < 1e-9);
    }

    #[test]
    fn general_diagonal_spectrum() {
        let m = OperatorMatrix::from_diagonal(&[c(-1.0), C64::new(-2.0, 3.0)]);
        let evd = general_eigendecompose(&m).unwrap();
        let mut got = evd.eigenvalues.clone();
        got.sort_by(|a, b| b.re.partial_cmp(&a.re).unwrap());
        assert!((got[0] - c(-1.0)).norm() < 1e-14);
        assert!((got[1] - C64::new(-2.0, 3.0)).norm() < 1e-14);
        assert!(evd.condition < 1.0 + 1e-12);
    }

    #[test]
    fn general_flags_defective_matrix() {
        let m = OperatorMatrix::from_rows(&[vec![c(0.0), c(1.0)], vec![c(0.0), c(0.0)]]).unwrap();
        let evd = general_eigendecompose(&m).unwrap();
        assert!(evd.condition > 1e8, "condition {}", evd.condition);
    }

    #[test]
    fn general_residuals_on_random_matrix() {
        let mut rng = seeded(3);
        let m = OperatorMatrix::from_fn(12, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let evd = general_eigendecompose(&m).unwrap();
        for k in 0..12 {
            let v: Vec<C64> = (0..12).map(|i| evd.eigenvectors.get(i, k)).collect();
            let mv = m.apply(&v);
            let r: f64 = mv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - evd.eigenvalues[k] * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(r <= 1e-8 * m.frobenius_norm());
        }
    }

    #[test]
    fn vectorize_is_row_stacking() {
        let space = FockSpace::qubits();
        let m = OperatorMatrix::from_fn(4, |i, j| c((10 * i + j) as f64));
        let rho = DensityOperator::from_matrix(space, m).unwrap();
        let v = rho.vectorize();
        assert_eq!(v[4 + 2], c(12.0));
        assert_eq!(DensityOperator::unvectorize(space, &v).unwrap(), rho);
    }

    proptest! {
        #[test]
        fn flat_index_bijection(ca in 1usize..8, cb in 1usize..8, na in 0usize..8, nb in 0usize..8) {
            let space = FockSpace::new(ca, cb).unwrap();
            let idx = FockIndex::new(na, nb);
            match space.flatten(idx) {
                Some(flat) => {
                    prop_assert!(flat < space.dim());
                    prop_assert_eq!(space.unflatten(flat), Some(idx));
                }
                None => prop_assert!(na > ca || nb > cb),
            }
        }

        #[test]
        fn hermitian_trace_matches_eigen_sum(seed in any::<u64>(), n in 2usize..10) {
            let mut rng = seeded(seed);
            let m = random_hermitian(n, &mut rng);
            let evd = hermitian_eigendecompose(&m).unwrap();
            let sum: f64 = evd.eigenvalues.iter().sum();
            prop_assert!((sum - m.trace().re).abs() < 1e-9);
            let v = &evd.eigenvectors;
            prop_assert!((&v.adjoint() * v).max_abs_diff(&OperatorMatrix::identity(n)) < 1e-9);
        }
    }
}
