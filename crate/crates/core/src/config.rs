//! Experiment configuration files.
//!
//! A config is a TOML document with optional sections:
//!
//! ```toml
//! [ensemble]
//! preset = "goe"            # goe, gue, or an entry law name
//! truncate = false
//!
//! [experiment]
//! n_values = [50, 100, 200, 400, 800]
//! replicates = 200
//! master_seed = 20240601
//! vector_laws = ["uniform01"]
//!
//! [berry_esseen]            # presence enables the check
//! a = 16.0
//!
//! [bias_scan]
//! u_values = [0.5]
//! ```
//!
//! Any key can be overridden from the command line as `section.key=value`,
//! where `value` is read as a TOML value and falls back to a bare string.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::ensemble::{
    Construction, EnsembleSpec, EntryLaw, Symmetry, TruncationPolicy, UnitVectorSpec,
};
use crate::harness::{BerryEsseenConfig, BiasScanConfig, ExperimentConfig};
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnsembleSection {
    pub preset: String,
    pub symmetry: Option<Symmetry>,
    pub entry_law: Option<String>,
    pub construction: Option<Construction>,
    pub truncate: bool,
    pub epsilon_exponent: f64,
    pub remove_diagonal: bool,
}

impl Default for EnsembleSection {
    fn default() -> Self {
        Self {
            preset: "goe".into(),
            symmetry: None,
            entry_law: None,
            construction: None,
            truncate: false,
            epsilon_exponent: TruncationPolicy::default().epsilon_exponent,
            remove_diagonal: false,
        }
    }
}

impl EnsembleSection {
    /// Template spec for dimension `n`.
    pub fn resolve(&self, n: usize) -> Result<EnsembleSpec> {
        let mut spec = EnsembleSpec::preset(&self.preset, n)?;
        if let Some(s) = self.symmetry {
            spec.symmetry = s;
        }
        if let Some(law) = &self.entry_law {
            spec.entry_law = law.parse::<EntryLaw>()?;
        }
        if let Some(c) = self.construction {
            spec.construction = c;
        }
        spec.preprocessing = TruncationPolicy {
            enabled: self.truncate,
            epsilon_exponent: self.epsilon_exponent,
            remove_diagonal: self.remove_diagonal || self.truncate,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentSection {
    pub n_values: Vec<usize>,
    pub replicates: usize,
    pub master_seed: u64,
    pub vector_laws: Vec<UnitVectorSpec>,
    pub record_timing: bool,
    pub export_cdfs: bool,
}

impl Default for ExperimentSection {
    fn default() -> Self {
        Self {
            n_values: vec![50, 100, 200, 400, 800],
            replicates: 200,
            master_seed: DEFAULT_SEED,
            vector_laws: vec![UnitVectorSpec::Uniform01],
            record_timing: false,
            export_cdfs: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConfigFile {
    pub ensemble: EnsembleSection,
    pub experiment: ExperimentSection,
    pub berry_esseen: Option<BerryEsseenConfig>,
    pub bias_scan: Option<BiasScanConfig>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Applies `section.key=value` overrides.
    pub fn with_overrides<S: AsRef<str>>(&self, overrides: &[S]) -> Result<Self> {
        if overrides.is_empty() {
            return Ok(self.clone());
        }
        let mut root = toml::Table::try_from(self)
            .map_err(|e| Error::Config(format!("cannot apply overrides: {e}")))?;
        for item in overrides {
            let item = item.as_ref();
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("override `{item}` is not key=value")))?;
            let (section, field) = key
                .trim()
                .split_once('.')
                .ok_or_else(|| Error::Config(format!("override key `{key}` must be section.key")))?;
            let table = root
                .entry(section.to_string())
                .or_insert_with(|| toml::Value::Table(toml::Table::new()))
                .as_table_mut()
                .ok_or_else(|| Error::Config(format!("`{section}` is not a section")))?;
            table.insert(field.to_string(), parse_value(value.trim()));
        }
        toml::Value::Table(root)
            .try_into()
            .map_err(|e: toml::de::Error| {
                Error::Config(format!("invalid override ({}): {}", join(overrides), e.message()))
            })
    }

    pub fn experiment(&self) -> Result<ExperimentConfig> {
        let e = &self.experiment;
        let first = *e
            .n_values
            .first()
            .ok_or_else(|| Error::Config("experiment.n_values must not be empty".into()))?;
        let ensemble = self
            .ensemble
            .resolve(first.max(2))
            .map_err(|err| Error::Config(format!("ensemble: {err}")))?;
        let cfg = ExperimentConfig {
            ensemble,
            vector_specs: e.vector_laws.clone(),
            n_values: e.n_values.clone(),
            replicates: e.replicates,
            master_seed: e.master_seed,
            berry_esseen: self.berry_esseen,
            bias_scan: self.bias_scan.clone(),
            record_timing: e.record_timing,
            export_cdfs: e.export_cdfs,
        };
        cfg.validate().map_err(|err| match err {
            Error::Config(_) => err,
            other => Error::Config(other.to_string()),
        })?;
        Ok(cfg)
    }
}

fn parse_value(text: &str) -> toml::Value {
    toml::from_str::<toml::Table>(&format!("v = {text}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(text.to_string()))
}

fn join<S: AsRef<str>>(items: &[S]) -> String {
    items.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let cfg = ConfigFile::parse("").unwrap().experiment().unwrap();
        assert_eq!(cfg.n_values, vec![50, 100, 200, 400, 800]);
        assert_eq!(cfg.replicates, 200);
        assert_eq!(cfg.ensemble.tag(), "goe");
        assert!(cfg.berry_esseen.is_none());
    }

    #[test]
    fn full_file() {
        let text = r#"
[ensemble]
preset = "rademacher"
symmetry = "complex_hermitian"
truncate = true

[experiment]
n_values = [20, 40, 80]
replicates = 7
master_seed = 3
vector_laws = ["normal", "basis1", "poisson1"]

[berry_esseen]
tau = 3.0

[bias_scan]
u_values = [0.5, 1.0]
route = "eigen"
"#;
        let cfg = ConfigFile::parse(text).unwrap().experiment().unwrap();
        assert_eq!(cfg.ensemble.tag(), "wigner-rademacher-complex-trunc");
        assert_eq!(cfg.vector_specs[1], UnitVectorSpec::CanonicalBasis(1));
        assert_eq!(cfg.berry_esseen.unwrap().tau, 3.0);
        assert_eq!(cfg.berry_esseen.unwrap().a, 16.0);
        assert_eq!(cfg.bias_scan.unwrap().u_values(), vec![0.5, 1.0]);
    }

    #[test]
    fn unknown_key_reports_line() {
        let err = ConfigFile::parse("[experiment]\nreplicates = 3\nrepeats = 4\n").unwrap_err();
        let msg = err.to_string();
        assert!(err.is_config());
        assert!(msg.contains("repeats") && msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn overrides() {
        let base = ConfigFile::parse("[experiment]\nreplicates = 3\n").unwrap();
        let unknown_preset = base.with_overrides(&["ensemble.preset=wigner"]).unwrap();
        assert!(unknown_preset.experiment().unwrap_err().is_config());
        let cfg = base
            .with_overrides(&["experiment.n_values=[10, 20, 30]", "ensemble.preset=rademacher", "berry_esseen.c0=1.5"])
            .unwrap()
            .experiment()
            .unwrap();
        assert_eq!(cfg.n_values, vec![10, 20, 30]);
        assert_eq!(cfg.replicates, 3);
        assert_eq!(cfg.ensemble.tag(), "wigner-rademacher-real");
        assert_eq!(cfg.berry_esseen.unwrap().c0, 1.5);
    }

    #[test]
    fn bad_overrides() {
        let base = ConfigFile::default();
        for bad in ["experiment.reps=3", "replicates=3", "experiment.replicates", "experiment.replicates=many"] {
            let err = base.with_overrides(&[bad]).unwrap_err();
            assert!(err.is_config(), "{bad}");
        }
        let err = base.with_overrides(&["experiment.reps=3"]).unwrap_err();
        assert!(err.to_string().contains("reps"), "{err}");
    }

    #[test]
    fn semantic_errors_are_config_errors() {
        for text in [
            "[experiment]\nreplicates = 0",
            "[experiment]\nn_values = [40, 20, 80]",
            "[experiment]\nvector_laws = [\"cauchy\"]",
            "[ensemble]\npreset = \"rademacher\"\nconstruction = \"gaussian_symmetrized\"",
            "[berry_esseen]\ntau = 1.0",
        ] {
            let err = ConfigFile::parse(text).and_then(|c| c.experiment()).unwrap_err();
            assert!(err.is_config(), "{text}: {err:?}");
        }
    }
}
