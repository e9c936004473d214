//! Flat JSON configuration files.
//!
//! ```json
//! {
//!   "chi_a": 25.0, "chi_b": 25.0,
//!   "epsilon_re": 0.12566370614359174, "epsilon_im": 0.0,
//!   "alpha_re": 0.12566370614359174, "alpha_im": 0.0,
//!   "kappa_a": 0.0, "kappa_b": 0.0,
//!   "cutoff_a": 9, "cutoff_b": 9,
//!   "t_max": 250.0, "dt": 0.5,
//!   "initial_na": 0, "initial_nb": 0,
//!   "solver": "spectral"
//! }
//! ```
//!
//! `chi_a`, `chi_b`, `epsilon_re` and `alpha_re` are required. Imaginary parts
//! and leakage rates default to 0, the grid to `t_max = 250, dt = 0.5`, the
//! initial state to vacuum and the solver to `spectral`. Cutoffs default to 9
//! for closed runs and 3 when either leakage rate is nonzero.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{FockIndex, C64};
use crate::hamiltonian::{CouplerConfig, SolverKind, DEFAULT_CLOSED_CUTOFF, DEFAULT_OPEN_CUTOFF};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub chi_a: f64,
    pub chi_b: f64,
    pub epsilon_re: f64,
    #[serde(default)]
    pub epsilon_im: f64,
    pub alpha_re: f64,
    #[serde(default)]
    pub alpha_im: f64,
    #[serde(default)]
    pub kappa_a: f64,
    #[serde(default)]
    pub kappa_b: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff_a: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff_b: Option<usize>,
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default)]
    pub initial_na: usize,
    #[serde(default)]
    pub initial_nb: usize,
    #[serde(default = "default_solver")]
    pub solver: String,
}

fn default_t_max() -> f64 {
    250.0
}

fn default_dt() -> f64 {
    0.5
}

fn default_solver() -> String {
    SolverKind::Spectral.as_str().to_owned()
}

impl ConfigFile {
    /// Resolves defaults and validates.
    pub fn into_config(self) -> Result<CouplerConfig> {
        let open = self.kappa_a != 0.0 || self.kappa_b != 0.0;
        let default_cutoff = if open {
            DEFAULT_OPEN_CUTOFF
        } else {
            DEFAULT_CLOSED_CUTOFF
        };
        let solver = self
            .solver
            .parse::<SolverKind>()
            .map_err(|e| Error::InvalidConfig {
                fields: vec![format!("solver: {e}")],
            })?;
        let cfg = CouplerConfig {
            chi_a: self.chi_a,
            chi_b: self.chi_b,
            epsilon: C64::new(self.epsilon_re, self.epsilon_im),
            alpha: C64::new(self.alpha_re, self.alpha_im),
            kappa_a: self.kappa_a,
            kappa_b: self.kappa_b,
            cutoff_a: self.cutoff_a.unwrap_or(default_cutoff),
            cutoff_b: self.cutoff_b.unwrap_or(default_cutoff),
            t_max: self.t_max,
            dt: self.dt,
            initial: FockIndex::new(self.initial_na, self.initial_nb),
            solver,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl From<&CouplerConfig> for ConfigFile {
    fn from(cfg: &CouplerConfig) -> Self {
        Self {
            chi_a: cfg.chi_a,
            chi_b: cfg.chi_b,
            epsilon_re: cfg.epsilon.re,
            epsilon_im: cfg.epsilon.im,
            alpha_re: cfg.alpha.re,
            alpha_im: cfg.alpha.im,
            kappa_a: cfg.kappa_a,
            kappa_b: cfg.kappa_b,
            cutoff_a: Some(cfg.cutoff_a),
            cutoff_b: Some(cfg.cutoff_b),
            t_max: cfg.t_max,
            dt: cfg.dt,
            initial_na: cfg.initial.n_a,
            initial_nb: cfg.initial.n_b,
            solver: cfg.solver.as_str().to_owned(),
        }
    }
}

/// Parses JSON text; `origin` labels parse errors.
pub fn parse_config(text: &str, origin: &Path) -> Result<CouplerConfig> {
    let file: ConfigFile = serde_json::from_str(text).map_err(|e| Error::ConfigParse {
        path: origin.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.into_config()
}

pub fn load_config(path: &Path) -> Result<CouplerConfig> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text, path)
}

pub fn to_json(cfg: &CouplerConfig) -> String {
    serde_json::to_string_pretty(&ConfigFile::from(cfg)).expect("flat config always serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn origin() -> PathBuf {
        PathBuf::from("test.json")
    }

    #[test]
    fn reference_round_trips() {
        let cfg = CouplerConfig::reference();
        assert_eq!(parse_config(&to_json(&cfg), &origin()).unwrap(), cfg);
    }

    #[test]
    fn missing_optional_fields_take_defaults() {
        let cfg = parse_config(
            r#"{"chi_a": 25, "chi_b": 25, "epsilon_re": 0.1, "alpha_re": 0.1}"#,
            &origin(),
        )
        .unwrap();
        assert_eq!(cfg.kappa_a, 0.0);
        assert_eq!(cfg.kappa_b, 0.0);
        assert_eq!((cfg.cutoff_a, cfg.cutoff_b), (9, 9));
        assert_eq!(cfg.solver, SolverKind::Spectral);
        assert_eq!(cfg.initial, FockIndex::new(0, 0));

        let open = parse_config(
            r#"{"chi_a": 25, "chi_b": 25, "epsilon_re": 0.1, "alpha_re": 0.1, "kappa_b": 1e-4}"#,
            &origin(),
        )
        .unwrap();
        assert_eq!((open.cutoff_a, open.cutoff_b), (3, 3));
    }

    #[test]
    fn parse_errors_carry_position() {
        let text = "{\n  \"chi_a\": 25,\n  \"chi_b\": oops\n}";
        match parse_config(text, &origin()) {
            Err(Error::ConfigParse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_and_missing_fields_are_rejected() {
        let typo = r#"{"chi_a": 25, "chi_b": 25, "epsilon_re": 0.1, "alpha_re": 0.1, "kapa_a": 1}"#;
        assert!(matches!(
            parse_config(typo, &origin()),
            Err(Error::ConfigParse { .. })
        ));
        let missing = r#"{"chi_a": 25, "epsilon_re": 0.1, "alpha_re": 0.1}"#;
        let err = parse_config(missing, &origin()).unwrap_err();
        assert!(err.to_string().contains("chi_b"), "{err}");
    }

    #[test]
    fn validation_failures_name_fields() {
        let bad = r#"{"chi_a": 25, "chi_b": 25, "epsilon_re": 0.1, "alpha_re": 0.1, "kappa_a": -1, "dt": 0, "solver": "euler"}"#;
        let err = parse_config(bad, &origin()).unwrap_err();
        assert!(err.to_string().contains("solver"), "{err}");
        let bad = r#"{"chi_a": 25, "chi_b": 25, "epsilon_re": 0.1, "alpha_re": 0.1, "kappa_a": -1, "dt": 0}"#;
        let Error::InvalidConfig { fields } = parse_config(bad, &origin()).unwrap_err() else {
            panic!("expected validation error");
        };
        assert!(fields.iter().any(|f| f.contains("kappa_a")));
        assert!(fields.iter().any(|f| f.starts_with("dt")));
    }
}
