//! Four-state reduction of the coupler: the closed-form amplitudes for real
//! `alpha = epsilon` starting from vacuum, and a direct RK4 integration of the
//! reduced equations of motion for arbitrary complex couplings.
//!
//! Nothing here touches the full-basis solvers; these are the cross-checks.

use crate::error::{Error, Result};
use crate::fock::{FockSpace, PureState, C64};

/// Amplitudes of `|00⟩, |10⟩, |01⟩, |11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitAmplitudes {
    pub c00: C64,
    pub c10: C64,
    pub c01: C64,
    pub c11: C64,
}

impl QubitAmplitudes {
    pub const VACUUM: Self = Self {
        c00: C64::new(1.0, 0.0),
        c10: C64::new(0.0, 0.0),
        c01: C64::new(0.0, 0.0),
        c11: C64::new(0.0, 0.0),
    };

    pub fn norm_sqr(&self) -> f64 {
        self.c00.norm_sqr() + self.c10.norm_sqr() + self.c01.norm_sqr() + self.c11.norm_sqr()
    }

    /// `[|c00|², |c10|², |c01|², |c11|²]`.
    pub fn populations(&self) -> [f64; 4] {
        [
            self.c00.norm_sqr(),
            self.c10.norm_sqr(),
            self.c01.norm_sqr(),
            self.c11.norm_sqr(),
        ]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.c00 - other.c00,
            self.c10 - other.c10,
            self.c01 - other.c01,
            self.c11 - other.c11,
        ]
        .iter()
        .map(|d| d.norm())
        .fold(0.0, f64::max)
    }

    /// The same state on the two-qubit Fock space (cutoffs 1, 1).
    pub fn to_pure_state(&self) -> PureState {
        // flat order on cutoffs (1,1): |00⟩, |01⟩, |10⟩, |11⟩
        PureState::from_amplitudes(
            FockSpace::qubits(),
            vec![self.c00, self.c01, self.c10, self.c11],
        )
        .expect("four amplitudes fill the qubit space")
    }

    fn to_array(self) -> [C64; 4] {
        [self.c00, self.c10, self.c01, self.c11]
    }

    fn from_array(v: [C64; 4]) -> Self {
        Self {
            c00: v[0],
            c10: v[1],
            c01: v[2],
            c11: v[3],
        }
    }
}

/// Closed-form amplitudes at time `t` for real `alpha = epsilon`, vacuum start.
///
/// With `x = alpha/2` and `y = sqrt(5)·x`:
/// ```text
/// c00 = cos(xt)cos(yt) + sin(xt)sin(yt)/√5
/// c10 = -i (2/√5) cos(xt) sin(yt)
/// c01 = -(2/√5) sin(xt) sin(yt)
/// c11 = i [cos(xt) sin(yt)/√5 - sin(xt) cos(yt)]
/// ```
pub fn closed_form_amplitudes(alpha: f64, t: f64) -> Result<QubitAmplitudes> {
    if alpha == 0.0 {
        return Err(Error::DegenerateInput(
            "closed form needs alpha != 0; with no coupling the state is frozen",
        ));
    }
    if !alpha.is_finite() {
        return Err(Error::DegenerateInput("closed form needs a finite alpha"));
    }
    let sqrt5 = 5f64.sqrt();
    let x = alpha / 2.0;
    let y = sqrt5 * x;
    let (sx, cx) = (x * t).sin_cos();
    let (sy, cy) = (y * t).sin_cos();
    Ok(QubitAmplitudes {
        c00: C64::new(cx * cy + sx * sy / sqrt5, 0.0),
        c10: C64::new(0.0, -2.0 / sqrt5 * cx * sy),
        c01: C64::new(-2.0 / sqrt5 * sx * sy, 0.0),
        c11: C64::new(0.0, cx * sy / sqrt5 - sx * cy),
    })
}

/// Largest internal step used by [`integrate_reduced`] for the given couplings.
pub fn reduced_step_limit(alpha: C64, epsilon: C64) -> f64 {
    let rate = alpha.norm().max(epsilon.norm());
    if rate > 0.0 {
        REDUCED_STEP_SCALE / rate
    } else {
        f64::INFINITY
    }
}

// Accumulated RK4 phase error over ~250 time units stays near 1e-9 at this scale.
const REDUCED_STEP_SCALE: f64 = 0.005;

/// Right-hand side of `i dc/dt = M c` for the four-state system.
fn reduced_rhs(alpha: C64, epsilon: C64, c: &[C64; 4]) -> [C64; 4] {
    let [c00, c10, c01, c11] = *c;
    let minus_i = C64::new(0.0, -1.0);
    [
        minus_i * (alpha.conj() * c10),
        minus_i * (epsilon * c01 + alpha * c00),
        minus_i * (epsilon.conj() * c10 + alpha.conj() * c11),
        minus_i * (alpha * c01),
    ]
}

/// Integrates the reduced equations from the vacuum.
pub fn integrate_reduced(alpha: C64, epsilon: C64, t_grid: &[f64]) -> Result<Vec<QubitAmplitudes>> {
    integrate_reduced_from(alpha, epsilon, QubitAmplitudes::VACUUM, t_grid)
}

/// Integrates
/// ```text
/// i ċ00 = α* c10
/// i ċ10 = ε c01 + α c00
/// i ċ01 = ε* c10 + α* c11
/// i ċ11 = α c01
/// ```
/// with classical RK4 from `initial` at `t = 0`, reporting the state at each grid time.
pub fn integrate_reduced_from(
    alpha: C64,
    epsilon: C64,
    initial: QubitAmplitudes,
    t_grid: &[f64],
) -> Result<Vec<QubitAmplitudes>> {
    check_grid(t_grid)?;
    let h_max = reduced_step_limit(alpha, epsilon);
    let mut state = initial.to_array();
    let mut now = 0.0;
    let mut out = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let span = t - now;
        if span > 0.0 {
            let steps = (span / h_max).ceil().max(1.0) as usize;
            let h = span / steps as f64;
            for _ in 0..steps {
                state = rk4_step(alpha, epsilon, &state, h);
            }
            now = t;
        }
        out.push(QubitAmplitudes::from_array(state));
    }
    Ok(out)
}

fn rk4_step(alpha: C64, epsilon: C64, c: &[C64; 4], h: f64) -> [C64; 4] {
    let shifted = |base: &[C64; 4], k: &[C64; 4], f: f64| -> [C64; 4] {
        std::array::from_fn(|i| base[i] + k[i] * f)
    };
    let k1 = reduced_rhs(alpha, epsilon, c);
    let k2 = reduced_rhs(alpha, epsilon, &shifted(c, &k1, h / 2.0));
    let k3 = reduced_rhs(alpha, epsilon, &shifted(c, &k2, h / 2.0));
    let k4 = reduced_rhs(alpha, epsilon, &shifted(c, &k3, h));
    std::array::from_fn(|i| c[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0))
}

pub(crate) fn check_grid(t_grid: &[f64]) -> Result<()> {
    if let Some(first) = t_grid.first() {
        if !(*first >= 0.0) {
            return Err(Error::InvalidGrid(format!(
                "grid must start at t >= 0 (got {first})"
            )));
        }
    }
    if let Some(w) = t_grid.windows(2).find(|w| !(w[1] >= w[0])) {
        return Err(Error::InvalidGrid(format!(
            "grid must be ascending ({} followed by {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    const ALPHA: f64 = PI / 25.0;

    #[test]
    fn vacuum_at_zero() {
        let c = closed_form_amplitudes(ALPHA, 0.0).unwrap();
        assert_eq!(c, QubitAmplitudes::VACUUM);
    }

    #[test]
    fn quarter_period_reduction() {
        let t = PI / ALPHA;
        let c = closed_form_amplitudes(ALPHA, t).unwrap();
        let yt = 5f64.sqrt() * PI / 2.0;
        let s5 = 5f64.sqrt();
        let want = QubitAmplitudes {
            c00: C64::new(yt.sin() / s5, 0.0),
            c10: C64::new(0.0, 0.0),
            c01: C64::new(-2.0 / s5 * yt.sin(), 0.0),
            c11: C64::new(0.0, -yt.cos()),
        };
        assert!(c.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn zero_alpha_is_degenerate() {
        assert!(matches!(
            closed_form_amplitudes(0.0, 1.0),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn closed_form_norm_is_exact() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..1000 {
            let t = rng.gen_range(0.0..1000.0);
            let alpha = rng.gen_range(0.01..2.0);
            let c = closed_form_amplitudes(alpha, t).unwrap();
            assert!((c.norm_sqr() - 1.0).abs() <= 1e-12);
        }
    }

    /// Central differences of the closed form substituted into the reduced equations.
    #[test]
    fn closed_form_solves_reduced_equations() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let alpha = C64::new(ALPHA, 0.0);
        let h = 1e-4;
        for _ in 0..100 {
            let t = rng.gen_range(1.0..250.0);
            let plus = closed_form_amplitudes(ALPHA, t + h).unwrap().to_array();
            let minus = closed_form_amplitudes(ALPHA, t - h).unwrap().to_array();
            let here = closed_form_amplitudes(ALPHA, t).unwrap().to_array();
            let rhs = reduced_rhs(alpha, alpha, &here);
            for k in 0..4 {
                let deriv = (plus[k] - minus[k]) / (2.0 * h);
                assert!(
                    (deriv - rhs[k]).norm() <= 1e-6 * ALPHA,
                    "t = {t}, component {k}"
                );
            }
        }
    }

    #[test]
    fn c10_vanishes_on_nodes() {
        let x = ALPHA / 2.0;
        let y = 5f64.sqrt() * x;
        for k in 0..6 {
            let on_cos_node = (PI / 2.0 + k as f64 * PI) / x;
            let on_sin_node = k as f64 * PI / y;
            for t in [on_cos_node, on_sin_node] {
                let c = closed_form_amplitudes(ALPHA, t).unwrap();
                assert!(c.c10.norm() <= 1e-12, "t = {t}: {}", c.c10.norm());
            }
        }
    }

    #[test]
    fn integrator_matches_closed_form() {
        let grid: Vec<f64> = (0..=500).map(|k| k as f64 * 0.5).collect();
        let alpha = C64::new(ALPHA, 0.0);
        let path = integrate_reduced(alpha, alpha, &grid).unwrap();
        for (t, c) in grid.iter().zip(&path) {
            let exact = closed_form_amplitudes(ALPHA, *t).unwrap();
            assert!(c.max_abs_diff(&exact) <= 1e-7, "t = {t}");
            assert!((c.norm_sqr() - 1.0).abs() <= 1e-8);
        }
    }

    #[test]
    fn frozen_without_coupling() {
        let zero = C64::new(0.0, 0.0);
        let start = QubitAmplitudes {
            c00: C64::new(0.6, 0.0),
            c10: C64::new(0.0, 0.8),
            ..QubitAmplitudes::VACUUM
        };
        let path = integrate_reduced_from(zero, zero, start, &[0.0, 3.0, 100.0]).unwrap();
        assert!(path.iter().all(|c| *c == start));
    }

    #[test]
    fn rejects_descending_grid() {
        let a = C64::new(ALPHA, 0.0);
        assert!(matches!(
            integrate_reduced(a, a, &[0.0, 2.0, 1.0]),
            Err(Error::InvalidGrid(_))
        ));
        assert!(matches!(
            integrate_reduced(a, a, &[-1.0, 2.0]),
            Err(Error::InvalidGrid(_))
        ));
    }

    #[test]
    fn complex_couplings_conserve_norm() {
        let alpha = C64::new(0.05, -0.08);
        let epsilon = C64::new(-0.02, 0.11);
        let grid: Vec<f64> = (0..=250).map(|k| k as f64).collect();
        let path = integrate_reduced(alpha, epsilon, &grid).unwrap();
        let drift = path
            .iter()
            .map(|c| (c.norm_sqr() - 1.0).abs())
            .fold(0.0, f64::max);
        assert!(drift <= 1e-8, "drift {drift}");
    }
}
