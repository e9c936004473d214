//! Named scenarios, CSV output and config validation reports.
//!
//! Scenarios `fig2`–`fig4` are unitary runs of the reference coupler; `fig5`
//! runs the Lindblad solver once per leakage rate in [`FIG5_KAPPAS`] and
//! writes one file per rate. Any JSON config can be run as `custom`.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::analytic::{closed_form_amplitudes, integrate_reduced_from, QubitAmplitudes};
use crate::closed::{run_closed, TimeSeriesRecord};
use crate::config::load_config;
use crate::error::{Error, Result};
use crate::fock::{FockIndex, C64};
use crate::hamiltonian::{CouplerConfig, SolverKind};
use crate::lindblad::run_open;

/// Leakage rates (`kappa_a = kappa_b`) of the dissipative scenario.
pub const FIG5_KAPPAS: [f64; 3] = [0.0, 1e-4, 1e-3];

// Probability columns tolerate this much round-off outside [0, 1] before clamping.
const RANGE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioName {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Custom,
}

impl ScenarioName {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "fig2" => Some(Self::Fig2),
            "fig3" => Some(Self::Fig3),
            "fig4" => Some(Self::Fig4),
            "fig5" => Some(Self::Fig5),
            "custom" => Some(Self::Custom),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
            Self::Fig5 => "fig5",
            Self::Custom => "custom",
        }
    }
}

/// CSV column selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Column {
    T,
    P00,
    P10,
    P01,
    P11,
    Pa00,
    Pa10,
    Pa01,
    Pa11,
    P02,
    P12,
    PB1,
    PB2,
    PB3,
    PB4,
    Concurrence,
    Leakage,
    Trace,
}

impl Column {
    pub fn header(&self) -> &'static str {
        match self {
            Column::T => "t",
            Column::P00 => "p00",
            Column::P10 => "p10",
            Column::P01 => "p01",
            Column::P11 => "p11",
            Column::Pa00 => "pa00",
            Column::Pa10 => "pa10",
            Column::Pa01 => "pa01",
            Column::Pa11 => "pa11",
            Column::P02 => "p02",
            Column::P12 => "p12",
            Column::PB1 => "pB1",
            Column::PB2 => "pB2",
            Column::PB3 => "pB3",
            Column::PB4 => "pB4",
            Column::Concurrence => "concurrence",
            Column::Leakage => "leakage",
            Column::Trace => "trace",
        }
    }

    /// Columns that must lie in `[0, 1]`.
    fn is_bounded(&self) -> bool {
        !matches!(self, Column::T | Column::Trace)
    }

    fn needs_analytic(&self) -> bool {
        matches!(
            self,
            Column::Pa00 | Column::Pa10 | Column::Pa01 | Column::Pa11
        )
    }

    fn value(&self, record: &TimeSeriesRecord, analytic: Option<&[f64; 4]>) -> f64 {
        let pa = |k: usize| analytic.map_or(f64::NAN, |a| a[k]);
        match self {
            Column::T => record.t,
            Column::P00 => record.population(0, 0),
            Column::P10 => record.population(1, 0),
            Column::P01 => record.population(0, 1),
            Column::P11 => record.population(1, 1),
            Column::Pa00 => pa(0),
            Column::Pa10 => pa(1),
            Column::Pa01 => pa(2),
            Column::Pa11 => pa(3),
            Column::P02 => record.population(0, 2),
            Column::P12 => record.population(1, 2),
            Column::PB1 => record.bell_probs[0],
            Column::PB2 => record.bell_probs[1],
            Column::PB3 => record.bell_probs[2],
            Column::PB4 => record.bell_probs[3],
            Column::Concurrence => record.concurrence,
            Column::Leakage => record.leakage,
            Column::Trace => record.norm_or_trace,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: ScenarioName,
    pub config: CouplerConfig,
    pub outputs: Vec<Column>,
}

impl Scenario {
    pub fn preset(name: ScenarioName) -> Result<Self> {
        use Column::*;
        let (config, outputs) = match name {
            ScenarioName::Fig2 => (
                CouplerConfig::reference(),
                vec![T, P00, P10, P01, P11, Pa00, Pa10, Pa01, Pa11],
            ),
            ScenarioName::Fig3 => (CouplerConfig::reference(), vec![T, P02, P12, Leakage]),
            ScenarioName::Fig4 => (CouplerConfig::reference(), vec![T, PB1, PB2, PB3, PB4]),
            ScenarioName::Fig5 => (
                CouplerConfig::reference_open(0.0),
                vec![T, Concurrence, Leakage, Trace],
            ),
            ScenarioName::Custom => {
                return Err(Error::UnknownScenario(
                    "custom (pass a JSON config path instead)".to_owned(),
                ))
            }
        };
        Ok(Self {
            name,
            config,
            outputs,
        })
    }

    pub fn custom(config: CouplerConfig) -> Self {
        use Column::*;
        Self {
            name: ScenarioName::Custom,
            config,
            outputs: vec![
                T,
                P00,
                P10,
                P01,
                P11,
                P02,
                P12,
                PB1,
                PB2,
                PB3,
                PB4,
                Concurrence,
                Leakage,
                Trace,
            ],
        }
    }

    /// A preset name, or otherwise a path to a JSON config.
    pub fn resolve(target: &str) -> Result<Self> {
        match ScenarioName::parse(target) {
            Some(ScenarioName::Custom) | None => {
                let path = Path::new(target);
                if target.ends_with(".json") || path.exists() {
                    Ok(Self::custom(load_config(path)?))
                } else {
                    Err(Error::UnknownScenario(target.to_owned()))
                }
            }
            Some(name) => Self::preset(name),
        }
    }

    pub fn apply(&mut self, overrides: &Overrides) -> Result<()> {
        if let Some(solver) = overrides.solver {
            self.config.solver = solver;
        }
        if let Some(c) = overrides.cutoff_a {
            self.config.cutoff_a = c;
        }
        if let Some(c) = overrides.cutoff_b {
            self.config.cutoff_b = c;
        }
        self.config.validate()
    }

    /// Configs actually run, with the leakage rate labelling each output file.
    pub fn cases(&self) -> Vec<(Option<f64>, CouplerConfig)> {
        match self.name {
            ScenarioName::Fig5 => FIG5_KAPPAS
                .iter()
                .map(|&k| (Some(k), self.config.clone().with_kappa(k, k)))
                .collect(),
            _ => vec![(None, self.config.clone())],
        }
    }

    /// Runs every case and returns its table; nothing is written.
    pub fn tables(&self) -> Result<Vec<(Option<f64>, CsvTable)>> {
        self.cases()
            .into_par_iter()
            .map(|(kappa, cfg)| {
                let records = if self.name == ScenarioName::Fig5 {
                    run_open(&cfg)?
                } else if cfg.is_closed() {
                    run_closed(&cfg)?
                } else {
                    run_open(&cfg)?
                };
                let analytic = if self.outputs.iter().any(Column::needs_analytic) {
                    Some(reduced_populations(&cfg)?)
                } else {
                    None
                };
                Ok((
                    kappa,
                    CsvTable::from_records(&self.outputs, &records, analytic.as_deref())?,
                ))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub solver: Option<SolverKind>,
    pub cutoff_a: Option<usize>,
    pub cutoff_b: Option<usize>,
}

/// Four-state populations `[p00, p10, p01, p11]` on the config's grid: the
/// closed form when `alpha = epsilon` is real and the run starts in vacuum,
/// otherwise the integrated reduced equations.
pub fn reduced_populations(cfg: &CouplerConfig) -> Result<Vec<[f64; 4]>> {
    let grid = cfg.time_grid();
    let vacuum = cfg.initial == FockIndex::new(0, 0);
    let real_equal = cfg.alpha.im == 0.0 && cfg.epsilon == cfg.alpha && cfg.alpha.re != 0.0;
    if vacuum && real_equal {
        return grid
            .iter()
            .map(|&t| closed_form_amplitudes(cfg.alpha.re, t).map(|c| c.populations()))
            .collect();
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let start = match (cfg.initial.n_a, cfg.initial.n_b) {
        (0, 0) => QubitAmplitudes::VACUUM,
        (1, 0) => QubitAmplitudes {
            c00: zero,
            c10: one,
            ..QubitAmplitudes::VACUUM
        },
        (0, 1) => QubitAmplitudes {
            c00: zero,
            c01: one,
            ..QubitAmplitudes::VACUUM
        },
        (1, 1) => QubitAmplitudes {
            c00: zero,
            c11: one,
            ..QubitAmplitudes::VACUUM
        },
        _ => {
            return Err(Error::InvalidConfig {
                fields: vec![format!(
                    "analytic columns need an initial state in the qubit subspace (got {})",
                    cfg.initial
                )],
            })
        }
    };
    Ok(
        integrate_reduced_from(cfg.alpha, cfg.epsilon, start, &grid)?
            .iter()
            .map(QubitAmplitudes::populations)
            .collect(),
    )
}

/// Rows of selected columns, range-checked.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn from_records(
        columns: &[Column],
        records: &[TimeSeriesRecord],
        analytic: Option<&[[f64; 4]]>,
    ) -> Result<Self> {
        let rows = records
            .iter()
            .enumerate()
            .map(|(k, rec)| {
                columns
                    .iter()
                    .map(|col| {
                        let v = col.value(rec, analytic.map(|a| &a[k]));
                        if col.is_bounded() {
                            checked_probability(*col, rec.t, v)
                        } else {
                            Ok(v)
                        }
                    })
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            columns: columns.to_vec(),
            rows,
        })
    }

    pub fn column(&self, col: Column) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| *c == col)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn write_to(&self, mut w: impl Write) -> std::io::Result<()> {
        let header: Vec<&str> = self.columns.iter().map(Column::header).collect();
        writeln!(w, "{}", header.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_value(v)).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }
}

fn checked_probability(column: Column, t: f64, v: f64) -> Result<f64> {
    if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&v) {
        return Err(Error::OutputRange {
            column: column.header(),
            t,
            value: v,
        });
    }
    Ok(v.clamp(0.0, 1.0))
}

/// Scientific notation with 12 significant digits; `-0` prints as `0`.
pub fn format_value(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.11e}")
}

/// `<stem>_kappa_<κ>.csv` next to `out`.
pub fn kappa_path(out: &Path, kappa: f64) -> PathBuf {
    let stem = out.to_string_lossy().trim_end_matches(".csv").to_owned();
    let label = if kappa == 0.0 {
        "0".to_owned()
    } else {
        format!("{kappa:e}")
    };
    PathBuf::from(format!("{stem}_kappa_{label}.csv"))
}

/// Files written by [`run_scenario`].
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub scenario: ScenarioName,
    pub files: Vec<(PathBuf, usize)>,
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (path, rows) in &self.files {
            writeln!(
                f,
                "{}: wrote {rows} rows to {}",
                self.scenario.as_str(),
                path.display()
            )?;
        }
        Ok(())
    }
}

/// Runs `scenario` and writes its CSV file(s) under `out`.
pub fn run_scenario(scenario: &Scenario, out: &Path) -> Result<RunSummary> {
    let mut files = Vec::new();
    for (kappa, table) in scenario.tables()? {
        let path = match kappa {
            Some(k) => kappa_path(out, k),
            None => out.to_path_buf(),
        };
        table.write_csv(&path)?;
        files.push((path, table.rows.len()));
    }
    Ok(RunSummary {
        scenario: scenario.name,
        files,
    })
}

/// What `validate` prints: parameters, the truncation-validity flag and run cost.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub config: CouplerConfig,
    pub scissors_valid: bool,
    /// `|alpha| / 2`.
    pub x: f64,
    /// `sqrt(5)·x`.
    pub y: f64,
    pub hilbert_dim: usize,
    /// `D²` for open runs.
    pub liouvillian_dim: Option<usize>,
    pub samples: usize,
    /// Rough count of complex multiply-adds.
    pub estimated_flops: f64,
}

impl ValidationReport {
    pub fn new(config: CouplerConfig) -> Self {
        let d = (config.cutoff_a + 1) * (config.cutoff_b + 1);
        let samples = config.time_grid().len();
        let x = config.alpha.norm() / 2.0;
        let (liouvillian_dim, estimated_flops) = if config.is_closed() {
            let d = d as f64;
            (None, 10.0 * d.powi(3) + samples as f64 * 2.0 * d * d)
        } else {
            let n = (d * d) as f64;
            (Some(d * d), 25.0 * n.powi(3) + samples as f64 * n * n)
        };
        Self {
            scissors_valid: config.scissors_valid(),
            x,
            y: 5f64.sqrt() * x,
            hilbert_dim: d,
            liouvillian_dim,
            samples,
            estimated_flops,
            config,
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(f, "chi_a        = {}", c.chi_a)?;
        writeln!(f, "chi_b        = {}", c.chi_b)?;
        writeln!(f, "epsilon      = {} {:+}i", c.epsilon.re, c.epsilon.im)?;
        writeln!(f, "alpha        = {} {:+}i", c.alpha.re, c.alpha.im)?;
        writeln!(f, "kappa_a      = {}", c.kappa_a)?;
        writeln!(f, "kappa_b      = {}", c.kappa_b)?;
        writeln!(f, "cutoffs      = ({}, {})", c.cutoff_a, c.cutoff_b)?;
        writeln!(
            f,
            "time grid    = 0..={} step {} ({} samples)",
            c.t_max, c.dt, self.samples
        )?;
        writeln!(f, "initial      = {}", c.initial)?;
        writeln!(f, "solver       = {}", c.solver.as_str())?;
        writeln!(f, "scissors     = {}", self.scissors_valid)?;
        writeln!(f, "x = |alpha|/2 = {:.12}", self.x)?;
        writeln!(f, "y = sqrt(5) x = {:.12}", self.y)?;
        match self.liouvillian_dim {
            Some(n) => writeln!(
                f,
                "cost         = Liouvillian {n}x{n}, ~{:.2e} flops",
                self.estimated_flops
            )?,
            None => writeln!(
                f,
                "cost         = Hamiltonian {d}x{d}, ~{:.2e} flops",
                self.estimated_flops,
                d = self.hilbert_dim
            )?,
        }
        Ok(())
    }
}

/// Parses and validates a config file without running anything.
pub fn validate_config(path: &Path) -> Result<ValidationReport> {
    Ok(ValidationReport::new(load_config(path)?))
}
