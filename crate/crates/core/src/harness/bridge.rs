use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ExperimentConfig;
use crate::empirical::{bridge_path, bridge_relation_check, BridgePath};
use crate::ensemble::{sample_unit_vector, sample_wigner};
use crate::spectral::Eigensystem;
use crate::Result;

/// Statistics of `Q_n` over the replicates of one `(n, vector law)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BridgeSummary {
    pub n: usize,
    pub vector_law: String,
    pub replicates: usize,
    pub mean_q_half: f64,
    /// Sample variance (denominator `reps − 1`) of `Q_n(1/2)`.
    pub var_q_half: f64,
    /// Largest `max(|Q_n(0)|, |Q_n(1)|)` over replicates.
    pub max_endpoint_error: f64,
    /// Largest discrepancy in `Q_n(F(x)) = √(n/2)(H(x) − F(x))`.
    pub max_relation_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BridgeStudy {
    pub summaries: Vec<BridgeSummary>,
    /// Replicate-0 path for every `(n, vector law)`.
    pub paths: Vec<(usize, String, BridgePath)>,
}

pub fn bridge_study(cfg: &ExperimentConfig) -> Result<BridgeStudy> {
    cfg.validate()?;
    let mut summaries = Vec::new();
    let mut paths = Vec::new();
    for &n in &cfg.n_values {
        let spec = cfg.ensemble.with_n(n);
        let per_rep: Vec<Vec<(BridgePath, f64)>> = (0..cfg.replicates as u64)
            .into_par_iter()
            .map(|rep| -> Result<_> {
                let eig = Eigensystem::compute(&sample_wigner(&spec, cfg.master_seed, rep)?)?;
                cfg.vector_specs
                    .iter()
                    .map(|law| {
                        let x = sample_unit_vector(law, n, cfg.master_seed, rep)?;
                        let sd = eig.project(&x)?;
                        Ok((bridge_path(&sd), bridge_relation_check(&sd)))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        for (li, law) in cfg.vector_specs.iter().enumerate() {
            let halves: Vec<f64> = per_rep.iter().map(|r| r[li].0.at(0.5)).collect();
            let k = halves.len() as f64;
            let mean = halves.iter().sum::<f64>() / k;
            let var = if halves.len() > 1 {
                halves.iter().map(|q| (q - mean).powi(2)).sum::<f64>() / (k - 1.0)
            } else {
                0.0
            };
            let endpoint = per_rep
                .iter()
                .map(|r| {
                    let v = &r[li].0.values;
                    v[0].abs().max(v[v.len() - 1].abs())
                })
                .fold(0.0, f64::max);
            let relation = per_rep.iter().map(|r| r[li].1).fold(0.0, f64::max);
            summaries.push(BridgeSummary {
                n,
                vector_law: law.name(),
                replicates: halves.len(),
                mean_q_half: mean,
                var_q_half: var,
                max_endpoint_error: endpoint,
                max_relation_error: relation,
            });
            paths.push((n, law.name(), per_rep[0][li].0.clone()));
        }
    }
    Ok(BridgeStudy { summaries, paths })
}
