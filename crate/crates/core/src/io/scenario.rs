//! TOML scenario documents.
//!
//! ```toml
//! [array]
//! fill = [0.7, 0.0]          # or: transparencies = [[re, im], {mag = .., phase = ..}, ...]
//! n = 64
//!
//! [[defects]]
//! index = 32                 # one-based
//! new_value = { mag = 0.7, phase = 0.2865 }
//!
//! [config]
//! epsilon = 0.2
//! delta = 0.05
//! max_defects = 1
//! cq = 4.0                   # optional
//! id_confirmations = 1       # optional
//! calibration_error = 0.0    # optional
//!
//! [rare_search]
//! prior_p = 0.1
//! delta = 0.05               # optional, defaults to config.delta
//! pattern = "theoretical"    # "theoretical", "actual", or a list of values
//! actual = "actual"          # "actual", "theoretical" or "random"
//!
//! [sweep]                    # optional; defaults to array value 1 and defect 1
//! base = [0.7, 0.0]
//! defect = [0.5, 0.0]
//! ```
//!
//! Unknown keys are rejected. Every invariant violation is reported with the
//! offending field.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use num_complex::Complex;
use serde::Deserialize;
use thiserror::Error;

use crate::error::Error;
use crate::harness::{ArraySource, SweepTemplate};
use crate::protocols::{DefectScenario, DefectTestConfig, RareSearchConfig};
use crate::quantum::PixelArray;
use crate::scalar::Real;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario file `{}`: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{}{message}", path_prefix(.path))]
    Parse { path: Option<PathBuf>, message: String },

    #[error("{}{field}: {message}", path_prefix(.path))]
    Invalid { path: Option<PathBuf>, field: String, message: String },
}

fn path_prefix(path: &Option<PathBuf>) -> String {
    path.as_ref().map(|p| format!("{}: ", p.display())).unwrap_or_default()
}

impl ScenarioError {
    fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        ScenarioError::Invalid { path: None, field: field.into(), message: message.into() }
    }

    fn from_core(field: &str, err: Error) -> Self {
        match err {
            Error::InvalidParameter { name, reason } if field == "config" => {
                Self::invalid(format!("config.{name}"), reason)
            }
            other => Self::invalid(field, other.to_string()),
        }
    }

    fn with_path(self, p: &Path) -> Self {
        match self {
            ScenarioError::Parse { message, .. } => ScenarioError::Parse { path: Some(p.to_owned()), message },
            ScenarioError::Invalid { field, message, .. } => {
                ScenarioError::Invalid { path: Some(p.to_owned()), field, message }
            }
            io => io,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDoc {
    array: ArrayDoc,
    #[serde(default)]
    defects: Vec<DefectDoc>,
    config: Option<ConfigDoc>,
    rare_search: Option<RareDoc>,
    sweep: Option<SweepDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrayDoc {
    transparencies: Option<Vec<ComplexDoc>>,
    fill: Option<ComplexDoc>,
    n: Option<usize>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum ComplexDoc {
    Rect([f64; 2]),
    Polar(PolarDoc),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolarDoc {
    mag: f64,
    phase: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DefectDoc {
    index: usize,
    new_value: ComplexDoc,
}

fn default_cq() -> f64 {
    4.0
}

fn default_confirmations() -> u32 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    epsilon: f64,
    delta: f64,
    max_defects: usize,
    #[serde(default = "default_cq")]
    cq: f64,
    #[serde(default = "default_confirmations")]
    id_confirmations: u32,
    #[serde(default)]
    calibration_error: f64,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PatternDoc {
    Named(String),
    Values(Vec<ComplexDoc>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RareDoc {
    prior_p: f64,
    delta: Option<f64>,
    pattern: Option<PatternDoc>,
    actual: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepDoc {
    base: ComplexDoc,
    defect: ComplexDoc,
}

fn to_complex(value: ComplexDoc, field: &str) -> Result<Complex<f64>, ScenarioError> {
    let z = match value {
        ComplexDoc::Rect([re, im]) => Complex::new(re, im),
        ComplexDoc::Polar(PolarDoc { mag, phase }) => {
            if mag.is_nan() || mag < 0.0 || !phase.is_finite() {
                return Err(ScenarioError::invalid(field, format!("invalid polar value mag={mag}, phase={phase}")));
            }
            Complex::from_polar(mag, phase)
        }
    };
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(ScenarioError::invalid(field, "value is not finite"));
    }
    if z.norm() > 1.0 + <f64 as Real>::CONSTRUCTIVE_TOL {
        return Err(ScenarioError::invalid(field, format!("magnitude {} exceeds 1", z.norm())));
    }
    Ok(z)
}

fn to_array(values: &[ComplexDoc], field: &str) -> Result<PixelArray<f64>, ScenarioError> {
    let v = values
        .iter()
        .enumerate()
        .map(|(i, &z)| to_complex(z, &format!("{field}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    PixelArray::new(v).map_err(|e| ScenarioError::from_core(field, e))
}

/// Rare-search part of a scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct RareSection {
    pub config: RareSearchConfig<f64>,
    pub actual: ArraySource,
}

/// A validated scenario file. Indices are zero-based from here on.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub defect: DefectScenario<f64>,
    pub config: Option<DefectTestConfig>,
    pub rare: Option<RareSection>,
    pub sweep: Option<SweepTemplate>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ScenarioError::Io { path: path.to_owned(), source })?;
        Self::from_toml_str(&text).map_err(|e| e.with_path(path))
    }

    pub fn from_toml_str(text: &str) -> Result<Self, ScenarioError> {
        let doc: ScenarioDoc =
            toml::from_str(text).map_err(|e| ScenarioError::Parse { path: None, message: e.to_string() })?;

        let theoretical = match (&doc.array.transparencies, doc.array.fill, doc.array.n) {
            (Some(values), None, None) => to_array(values, "array.transparencies")?,
            (None, Some(fill), Some(n)) => {
                if n == 0 {
                    return Err(ScenarioError::invalid("array.n", "must be at least 1"));
                }
                let z = to_complex(fill, "array.fill")?;
                PixelArray::uniform(n, z).map_err(|e| ScenarioError::from_core("array.fill", e))?
            }
            _ => {
                return Err(ScenarioError::invalid(
                    "array",
                    "give either `transparencies` or both `fill` and `n`",
                ))
            }
        };
        let n = theoretical.len();

        let mut planted = Vec::with_capacity(doc.defects.len());
        let mut seen = BTreeSet::new();
        for (k, d) in doc.defects.iter().enumerate() {
            let field = format!("defects[{k}]");
            if d.index == 0 || d.index > n {
                return Err(ScenarioError::invalid(
                    format!("{field}.index"),
                    format!("pixel {} out of range 1..={n}", d.index),
                ));
            }
            if !seen.insert(d.index) {
                return Err(ScenarioError::invalid(format!("{field}.index"), format!("pixel {} listed twice", d.index)));
            }
            planted.push((d.index - 1, to_complex(d.new_value, &format!("{field}.new_value"))?));
        }
        let defect = DefectScenario::planted(theoretical, &planted)
            .map_err(|e| ScenarioError::from_core("defects", e))?;

        let config = match doc.config {
            Some(c) => {
                let cfg = DefectTestConfig {
                    epsilon: c.epsilon,
                    delta: c.delta,
                    max_defects: c.max_defects,
                    round_constant: c.cq,
                    id_confirmations: c.id_confirmations,
                    calibration_error: c.calibration_error,
                };
                cfg.validate(n).map_err(|e| ScenarioError::from_core("config", e))?;
                defect.validate(&cfg).map_err(|e| match e {
                    Error::InvalidParameter { reason, .. } => ScenarioError::invalid("defects", reason),
                    other => ScenarioError::invalid("defects", other.to_string()),
                })?;
                Some(cfg)
            }
            None => None,
        };

        let rare = match doc.rare_search {
            Some(r) => {
                let delta = match (r.delta, &config) {
                    (Some(d), _) => d,
                    (None, Some(c)) => c.delta,
                    (None, None) => {
                        return Err(ScenarioError::invalid(
                            "rare_search.delta",
                            "missing, and there is no [config] section to take it from",
                        ))
                    }
                };
                let pattern = match r.pattern {
                    None => defect.theoretical.clone(),
                    Some(PatternDoc::Named(name)) => match name.as_str() {
                        "theoretical" => defect.theoretical.clone(),
                        "actual" => defect.actual.clone(),
                        other => {
                            return Err(ScenarioError::invalid(
                                "rare_search.pattern",
                                format!("unknown pattern reference `{other}` (expected \"theoretical\" or \"actual\")"),
                            ))
                        }
                    },
                    Some(PatternDoc::Values(values)) => {
                        let p = to_array(&values, "rare_search.pattern")?;
                        if p.len() != n {
                            return Err(ScenarioError::invalid(
                                "rare_search.pattern",
                                format!("{} values for {n} pixels", p.len()),
                            ));
                        }
                        p
                    }
                };
                let actual = match r.actual.as_deref().unwrap_or("actual") {
                    "actual" => ArraySource::Fixed(defect.actual.clone()),
                    "theoretical" => ArraySource::Fixed(defect.theoretical.clone()),
                    "random" => ArraySource::UniformDisc,
                    other => {
                        return Err(ScenarioError::invalid(
                            "rare_search.actual",
                            format!("unknown source `{other}` (expected \"actual\", \"theoretical\" or \"random\")"),
                        ))
                    }
                };
                let config = RareSearchConfig::new(r.prior_p, delta, pattern).map_err(|e| match e {
                    Error::InvalidParameter { name, reason } => {
                        ScenarioError::invalid(format!("rare_search.{name}"), reason)
                    }
                    other => ScenarioError::invalid("rare_search", other.to_string()),
                })?;
                Some(RareSection { config, actual })
            }
            None => None,
        };

        let sweep = match doc.sweep {
            Some(s) => Some(SweepTemplate {
                base: to_complex(s.base, "sweep.base")?,
                defect: to_complex(s.defect, "sweep.defect")?,
            }),
            None => None,
        };

        Ok(Self { defect, config, rare, sweep })
    }

    pub fn require_config(&self) -> Result<&DefectTestConfig, ScenarioError> {
        self.config
            .as_ref()
            .ok_or_else(|| ScenarioError::invalid("config", "section is required for this command"))
    }

    pub fn require_rare(&self) -> Result<&RareSection, ScenarioError> {
        self.rare
            .as_ref()
            .ok_or_else(|| ScenarioError::invalid("rare_search", "section is required for this command"))
    }

    /// The `[sweep]` section, or pixel 1 of the array as base and the first
    /// listed defect as the planted value.
    pub fn sweep_template(&self) -> Result<SweepTemplate, ScenarioError> {
        if let Some(t) = self.sweep {
            return Ok(t);
        }
        let first = self.defect.defect_indices.iter().next().ok_or_else(|| {
            ScenarioError::invalid("sweep", "no [sweep] section and no defect to derive the template from")
        })?;
        Ok(SweepTemplate {
            base: self.defect.theoretical.transparencies()[0],
            defect: self.defect.actual.transparencies()[*first],
        })
    }
}
