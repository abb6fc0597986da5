//! Monte Carlo sweeps over dimensions, replicates and unit-vector laws.
//!
//! Replicates run in parallel, but every random stream is keyed by
//! `(master_seed, replicate, n, …)` and results are collected back into the
//! logical order `n → vector law → replicate`, so the output depends only on
//! the configuration and never on the worker count.

mod bias;
mod bridge;
mod summary;

use std::io::{Read, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::berry_esseen::{derive_constants, verify_inequality, SmoothingInequalityParams};
use crate::empirical::{build_esd, build_vesd, WeightedStepCDF};
use crate::ensemble::{sample_unit_vector, sample_wigner, EnsembleSpec, UnitVectorSpec};
use crate::metrics::kolmogorov_to_semicircle;
use crate::spectral::Eigensystem;
use crate::{Error, Result};

pub use bias::{bias_scan, BiasRoute, BiasRow, BiasScanConfig};
pub use bridge::{bridge_study, BridgeStudy, BridgeSummary};
pub use summary::{aggregate_and_fit, DistanceSummary, ExperimentSummary};

/// Header of the per-replicate results CSV.
pub const RECORD_HEADER: &str =
    "n,replicate,vector_law,ensemble,seed,delta_vesd,delta_esd,be_lhs,be_rhs,wall_time_ms";

/// Constants of the smoothing-inequality check; `v = c0 / √n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BerryEsseenConfig {
    pub a: f64,
    pub b: f64,
    pub tau: f64,
    pub c0: f64,
}

impl Default for BerryEsseenConfig {
    fn default() -> Self {
        Self {
            a: 16.0,
            b: 3.0,
            tau: 2.0,
            c0: 2.0,
        }
    }
}

impl BerryEsseenConfig {
    pub fn params(&self, n: usize) -> Result<SmoothingInequalityParams> {
        derive_constants(self.a, self.b, self.tau)?.for_dimension(n, self.c0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Template; its `n` is replaced by each entry of `n_values`.
    pub ensemble: EnsembleSpec,
    pub vector_specs: Vec<UnitVectorSpec>,
    pub n_values: Vec<usize>,
    pub replicates: usize,
    pub master_seed: u64,
    pub berry_esseen: Option<BerryEsseenConfig>,
    pub bias_scan: Option<BiasScanConfig>,
    /// Wall-clock times make output files differ between runs, so they are
    /// written as 0 unless asked for.
    pub record_timing: bool,
    pub export_cdfs: bool,
}

impl ExperimentConfig {
    pub fn new(ensemble: EnsembleSpec, n_values: Vec<usize>, replicates: usize, master_seed: u64) -> Self {
        Self {
            ensemble,
            vector_specs: vec![UnitVectorSpec::Uniform01],
            n_values,
            replicates,
            master_seed,
            berry_esseen: None,
            bias_scan: None,
            record_timing: false,
            export_cdfs: false,
        }
    }

    pub fn with_vectors(mut self, specs: Vec<UnitVectorSpec>) -> Self {
        self.vector_specs = specs;
        self
    }

    pub fn with_berry_esseen(mut self, be: BerryEsseenConfig) -> Self {
        self.berry_esseen = Some(be);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be at least 1".into()));
        }
        if self.n_values.is_empty() {
            return Err(Error::Config("n_values must not be empty".into()));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(format!(
                "n_values must be strictly ascending, got {:?}",
                self.n_values
            )));
        }
        if self.vector_specs.is_empty() {
            return Err(Error::Config("at least one vector law is required".into()));
        }
        for &n in &self.n_values {
            self.ensemble.with_n(n).validate()?;
            for spec in &self.vector_specs {
                if let UnitVectorSpec::CanonicalBasis(k) = spec {
                    if *k == 0 || *k > n {
                        return Err(Error::Config(format!(
                            "vector law {} needs n >= {k}, but n = {n}",
                            spec.name()
                        )));
                    }
                }
            }
        }
        if let Some(be) = &self.berry_esseen {
            be.params(self.n_values[0])
                .map_err(|e| Error::Config(format!("berry_esseen: {e}")))?;
        }
        if let Some(scan) = &self.bias_scan {
            scan.validate()?;
        }
        Ok(())
    }
}

/// One row of the results table. Rows for failed replicates keep their
/// identifying fields, leave the metrics empty, and carry the error message.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub n: usize,
    pub replicate: u64,
    pub vector_law: String,
    pub ensemble: String,
    pub seed: u64,
    pub delta_vesd: Option<f64>,
    pub delta_esd: Option<f64>,
    pub be_lhs: Option<f64>,
    pub be_rhs: Option<f64>,
    pub wall_time_ms: u64,
    #[serde(skip)]
    pub error: Option<String>,
}

impl ExperimentRecord {
    pub fn is_failure(&self) -> bool {
        self.error.is_some() || self.delta_vesd.is_none()
    }

    /// `Some(lhs <= rhs)` when a smoothing-inequality check was made.
    pub fn be_holds(&self) -> Option<bool> {
        Some(self.be_lhs? <= self.be_rhs? * (1.0 + crate::berry_esseen::HOLDS_TOLERANCE))
    }
}

/// Runs `f` on a pool of `threads` workers, or on the global pool for `None`.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::Config("--threads must be at least 1".into())),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Serves every allocation of 1 MiB or more with its own mapping.
///
/// glibc raises its mmap threshold after the first large matrix is freed, and
/// the 10–40 MB matrices of a sweep at `n ≥ 1000` then fragment the heap until
/// resident memory grows by roughly one matrix per replicate. Pinning the
/// threshold keeps long sweeps flat. Call once at startup; a no-op elsewhere.
pub fn pin_mmap_threshold() {
    #[cfg(all(target_os = "linux", target_env = "gnu"))]
    // SAFETY: mallopt only adjusts allocator tuning parameters.
    unsafe {
        libc::mallopt(libc::M_MMAP_THRESHOLD, 1 << 20);
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    cfg.validate()?;
    let tag = cfg.ensemble.tag();
    let mut records = Vec::with_capacity(cfg.n_values.len() * cfg.vector_specs.len() * cfg.replicates);
    for &n in &cfg.n_values {
        let spec = cfg.ensemble.with_n(n);
        let be = cfg.berry_esseen.map(|b| b.params(n)).transpose()?;
        let per_replicate: Vec<Vec<ExperimentRecord>> = (0..cfg.replicates as u64)
            .into_par_iter()
            .map(|rep| replicate_records(cfg, &spec, &tag, be.as_ref(), rep))
            .collect();
        for (law_index, _) in cfg.vector_specs.iter().enumerate() {
            records.extend(per_replicate.iter().map(|rows| rows[law_index].clone()));
        }
    }
    Ok(records)
}

fn replicate_records(
    cfg: &ExperimentConfig,
    spec: &EnsembleSpec,
    tag: &str,
    be: Option<&SmoothingInequalityParams>,
    rep: u64,
) -> Vec<ExperimentRecord> {
    let start = Instant::now();
    let blank = |law: &UnitVectorSpec| ExperimentRecord {
        n: spec.n,
        replicate: rep,
        vector_law: law.name(),
        ensemble: tag.to_string(),
        seed: cfg.master_seed,
        delta_vesd: None,
        delta_esd: None,
        be_lhs: None,
        be_rhs: None,
        wall_time_ms: 0,
        error: None,
    };
    let shared = sample_wigner(spec, cfg.master_seed, rep).and_then(|sample| {
        let eig = Eigensystem::compute(&sample)?;
        let esd = kolmogorov_to_semicircle(&build_esd(&eig.esd())?).distance;
        Ok((eig, esd))
    });
    let (eig, delta_esd) = match shared {
        Ok(ok) => ok,
        Err(e) => {
            return cfg
                .vector_specs
                .iter()
                .map(|law| ExperimentRecord {
                    error: Some(e.to_string()),
                    ..blank(law)
                })
                .collect()
        }
    };
    let mut rows: Vec<ExperimentRecord> = cfg
        .vector_specs
        .iter()
        .map(|law| {
            let row = blank(law);
            match vesd_metrics(&eig, law, cfg.master_seed, rep, be) {
                Ok((delta, be_check)) => ExperimentRecord {
                    delta_vesd: Some(delta),
                    delta_esd: Some(delta_esd),
                    be_lhs: be_check.map(|c| c.0),
                    be_rhs: be_check.map(|c| c.1),
                    ..row
                },
                Err(e) => ExperimentRecord {
                    delta_esd: Some(delta_esd),
                    error: Some(e.to_string()),
                    ..row
                },
            }
        })
        .collect();
    if cfg.record_timing {
        let ms = start.elapsed().as_millis() as u64;
        rows.iter_mut().for_each(|r| r.wall_time_ms = ms);
    }
    rows
}

fn vesd_metrics(
    eig: &Eigensystem,
    law: &UnitVectorSpec,
    seed: u64,
    rep: u64,
    be: Option<&SmoothingInequalityParams>,
) -> Result<(f64, Option<(f64, f64)>)> {
    let x = sample_unit_vector(law, eig.n(), seed, rep)?;
    let vesd = build_vesd(&eig.project(&x)?)?;
    let delta = kolmogorov_to_semicircle(&vesd).distance;
    let check = match be {
        Some(p) => {
            let c = verify_inequality(&vesd, p)?;
            Some((c.lhs, c.rhs))
        }
        None => None,
    };
    Ok((delta, check))
}

/// Step CDFs of replicate 0 for every `n`: one VESD per vector law plus the
/// ESD, labelled by law name or `esd`.
pub fn figure_cdfs(cfg: &ExperimentConfig) -> Result<Vec<(usize, String, WeightedStepCDF)>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for &n in &cfg.n_values {
        let sample = sample_wigner(&cfg.ensemble.with_n(n), cfg.master_seed, 0)?;
        let eig = Eigensystem::compute(&sample)?;
        for law in &cfg.vector_specs {
            let x = sample_unit_vector(law, n, cfg.master_seed, 0)?;
            out.push((n, law.name(), build_vesd(&eig.project(&x)?)?));
        }
        out.push((n, "esd".to_string(), build_esd(&eig.esd())?));
    }
    Ok(out)
}

pub fn write_records_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(RECORD_HEADER.split(','))?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records_csv<R: Read>(input: R) -> Result<Vec<ExperimentRecord>> {
    let mut reader = csv::Reader::from_reader(input);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != RECORD_HEADER {
        return Err(Error::Config(format!(
            "unexpected results header `{}` (expected `{RECORD_HEADER}`)",
            header.join(",")
        )));
    }
    reader
        .deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

/// `n,replicate,vector_law,error` for every failed row.
pub fn write_failures_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "replicate", "vector_law", "error"])?;
    for r in records.iter().filter(|r| r.is_failure()) {
        w.write_record([
            r.n.to_string(),
            r.replicate.to_string(),
            r.vector_law.clone(),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
