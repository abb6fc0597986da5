use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ExperimentRecord;
use crate::metrics::fit_rate;
use crate::{Error, Result};

/// Mean distance per dimension and the fitted rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceSummary {
    pub mean_distance: BTreeMap<usize, f64>,
    /// Replicates that contributed to each mean.
    pub replicates: BTreeMap<usize, usize>,
    pub slope: f64,
    pub fixed_exponent_coefficient: f64,
    pub r_squared: f64,
    pub log_coefficient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub ensemble: String,
    /// Keyed by vector law name.
    pub laws: BTreeMap<String, DistanceSummary>,
    pub esd: DistanceSummary,
    pub failures: usize,
}

impl ExperimentSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary always serializes")
    }
}

fn summarize(samples: BTreeMap<usize, Vec<f64>>) -> Result<DistanceSummary> {
    let mean_distance: BTreeMap<usize, f64> = samples
        .iter()
        .map(|(&n, v)| (n, v.iter().sum::<f64>() / v.len() as f64))
        .collect();
    let replicates = samples.iter().map(|(&n, v)| (n, v.len())).collect();
    let ns: Vec<usize> = mean_distance.keys().copied().collect();
    let ds: Vec<f64> = mean_distance.values().copied().collect();
    let fit = fit_rate(&ns, &ds)?;
    Ok(DistanceSummary {
        mean_distance,
        replicates,
        slope: fit.slope,
        fixed_exponent_coefficient: fit.fixed_exponent_coefficient,
        r_squared: fit.r_squared,
        log_coefficient: fit.log_coefficient,
    })
}

/// Means are accumulated in record order after sorting by replicate, so the
/// summary of a persisted CSV matches the in-memory one exactly.
pub fn aggregate_and_fit(records: &[ExperimentRecord]) -> Result<ExperimentSummary> {
    if records.is_empty() {
        return Err(Error::Fit("no records to aggregate".into()));
    }
    let ensemble = records[0].ensemble.clone();
    let mut vesd: BTreeMap<String, BTreeMap<usize, BTreeMap<u64, f64>>> = BTreeMap::new();
    let mut esd: BTreeMap<usize, BTreeMap<u64, f64>> = BTreeMap::new();
    let mut failures = 0;
    for r in records {
        if let Some(d) = r.delta_esd {
            esd.entry(r.n).or_default().entry(r.replicate).or_insert(d);
        }
        match r.delta_vesd {
            Some(d) if r.error.is_none() => {
                vesd.entry(r.vector_law.clone())
                    .or_default()
                    .entry(r.n)
                    .or_default()
                    .insert(r.replicate, d);
            }
            _ => failures += 1,
        }
    }
    let flatten = |m: BTreeMap<usize, BTreeMap<u64, f64>>| -> BTreeMap<usize, Vec<f64>> {
        m.into_iter()
            .map(|(n, reps)| (n, reps.into_values().collect()))
            .collect()
    };
    let laws = vesd
        .into_iter()
        .map(|(law, m)| {
            summarize(flatten(m))
                .map(|s| (law.clone(), s))
                .map_err(|e| Error::Fit(format!("vector law {law}: {e}")))
        })
        .collect::<Result<_>>()?;
    Ok(ExperimentSummary {
        ensemble,
        laws,
        esd: summarize(flatten(esd))?,
        failures,
    })
}
