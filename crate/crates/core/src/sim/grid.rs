use serde::{Deserialize, Serialize};

use super::{first_passage_mc, FptBatch, FptSummary, SimConfig};
use crate::error::{Error, Result};
use crate::fou::FouParams;
use crate::rng::derive_seed;
use crate::stats::{spearman_permutation, PermutationTest};

/// Hurst values of the escaping-time grid.
pub const ESCAPE_GRID_HURST: [f64; 3] = [0.3, 0.5, 0.7];
/// Values taken by both `a` and `1/sigma^2` on the escaping-time grid.
pub const ESCAPE_GRID_LEVELS: [f64; 5] = [0.5, 1.0, 1.5, 2.0, 2.5];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FptGridConfig {
    pub hurst: Vec<f64>,
    pub a: Vec<f64>,
    /// Noise levels given as `1/sigma^2`.
    pub inv_sigma2: Vec<f64>,
    pub n_paths: usize,
    pub dt: f64,
    pub t_end: f64,
    pub boundary: f64,
    pub w0: f64,
    pub master_seed: u64,
}

impl FptGridConfig {
    /// 3 x 5 x 5 cells, 50 paths each, `dt = 0.01`, `10^5` steps, boundary 1.
    pub fn escape_grid(master_seed: u64) -> Self {
        Self {
            hurst: ESCAPE_GRID_HURST.to_vec(),
            a: ESCAPE_GRID_LEVELS.to_vec(),
            inv_sigma2: ESCAPE_GRID_LEVELS.to_vec(),
            n_paths: 50,
            dt: 0.01,
            t_end: 1000.0,
            boundary: 1.0,
            w0: 0.0,
            master_seed,
        }
    }

    pub fn n_cells(&self) -> usize {
        self.hurst.len() * self.a.len() * self.inv_sigma2.len()
    }

    fn cell_config(&self, index: usize, h: f64, a: f64, inv_s2: f64) -> Result<SimConfig<f64>> {
        if !(inv_s2 > 0.0) || !inv_s2.is_finite() {
            return Err(Error::invalid("inv_sigma2", format!("must be positive, got {inv_s2}")));
        }
        let params = FouParams::new(a, 1.0 / inv_s2.sqrt(), h, self.w0)?;
        SimConfig::new(
            params,
            self.t_end,
            self.dt,
            self.n_paths,
            derive_seed(self.master_seed, index as u64),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FptGridCell {
    pub hurst: f64,
    pub a: f64,
    pub inv_sigma2: f64,
    pub sigma: f64,
    pub summary: FptSummary,
}

/// Runs every cell (Hurst slowest, then `a`, then `1/sigma^2`); cell `i`
/// uses master seed `derive_seed(master, i)`.
pub fn fpt_grid(config: &FptGridConfig) -> Result<Vec<(FptGridCell, FptBatch<f64>)>> {
    if config.n_cells() == 0 {
        return Err(Error::invalid("grid", "every axis needs at least one value"));
    }
    let mut out = Vec::with_capacity(config.n_cells());
    let mut index = 0;
    for &h in &config.hurst {
        for &a in &config.a {
            for &inv in &config.inv_sigma2 {
                let sim = config.cell_config(index, h, a, inv)?;
                let batch = first_passage_mc(&sim, config.boundary)?;
                out.push((
                    FptGridCell {
                        hurst: h,
                        a,
                        inv_sigma2: inv,
                        sigma: sim.params.sigma,
                        summary: batch.summary(),
                    },
                    batch,
                ));
                index += 1;
            }
        }
    }
    Ok(out)
}

/// A pair of adjacent Hurst values at one `(a, sigma)` where the mean did
/// not increase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderingViolation {
    pub a: f64,
    pub inv_sigma2: f64,
    pub hurst_low: f64,
    pub hurst_high: f64,
    pub mean_low: f64,
    pub mean_high: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FptGridAnalysis {
    /// Adjacent-H comparisons where both cells had a censored fraction
    /// below one half.
    pub comparisons: usize,
    pub skipped: usize,
    pub violations: Vec<OrderingViolation>,
    /// Correlations of the restricted mean with each factor; the permutation
    /// null shuffles a factor only within cells sharing the other two.
    pub spearman_hurst: PermutationTest,
    pub spearman_a: PermutationTest,
    pub spearman_sigma: PermutationTest,
}

pub fn analyze_fpt_grid(cells: &[FptGridCell], permutations: usize, seed: u64) -> FptGridAnalysis {
    let mut comparisons = 0;
    let mut skipped = 0;
    let mut violations = Vec::new();
    for lo in cells {
        let next = cells
            .iter()
            .filter(|c| c.a == lo.a && c.inv_sigma2 == lo.inv_sigma2 && c.hurst > lo.hurst)
            .min_by(|x, y| x.hurst.total_cmp(&y.hurst));
        let Some(hi) = next else { continue };
        if lo.summary.censored_fraction >= 0.5 || hi.summary.censored_fraction >= 0.5 {
            skipped += 1;
            continue;
        }
        comparisons += 1;
        if !(hi.summary.mean_uncensored > lo.summary.mean_uncensored) {
            violations.push(OrderingViolation {
                a: lo.a,
                inv_sigma2: lo.inv_sigma2,
                hurst_low: lo.hurst,
                hurst_high: hi.hurst,
                mean_low: lo.summary.mean_uncensored,
                mean_high: hi.summary.mean_uncensored,
            });
        }
    }

    let y: Vec<f64> = cells.iter().map(|c| c.summary.restricted_mean).collect();
    let stratum = |key: &dyn Fn(&FptGridCell) -> (u64, u64)| -> Vec<usize> {
        let mut labels: Vec<(u64, u64)> = Vec::new();
        cells
            .iter()
            .map(|c| {
                let k = key(c);
                match labels.iter().position(|l| *l == k) {
                    Some(i) => i,
                    None => {
                        labels.push(k);
                        labels.len() - 1
                    }
                }
            })
            .collect()
    };
    let h: Vec<f64> = cells.iter().map(|c| c.hurst).collect();
    let a: Vec<f64> = cells.iter().map(|c| c.a).collect();
    let s: Vec<f64> = cells.iter().map(|c| c.sigma).collect();
    let by_a_sigma = stratum(&|c| (c.a.to_bits(), c.inv_sigma2.to_bits()));
    let by_h_sigma = stratum(&|c| (c.hurst.to_bits(), c.inv_sigma2.to_bits()));
    let by_h_a = stratum(&|c| (c.hurst.to_bits(), c.a.to_bits()));
    FptGridAnalysis {
        comparisons,
        skipped,
        violations,
        spearman_hurst: spearman_permutation(&h, &y, &by_a_sigma, permutations, derive_seed(seed, 0)),
        spearman_a: spearman_permutation(&a, &y, &by_h_sigma, permutations, derive_seed(seed, 1)),
        spearman_sigma: spearman_permutation(&s, &y, &by_h_a, permutations, derive_seed(seed, 2)),
    }
}
