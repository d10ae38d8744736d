use std::io::Write;

use fsg_core::{build_components, FsInstance};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::balance::balance_arrangement;
use crate::packing::{find_packing, DEFAULT_NODE_BUDGET};
use crate::sample::{edge_uniforms, threshold_bipartite, threshold_gnp, trial_rng};
use crate::RandomError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Gnp,
    Bipartite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statistic {
    /// FS(X, Y) has an isolated vertex (X and Y pack).
    IsolatedVertex,
    /// FS(X, Y) has exactly one component (gnp) or exactly two (bipartite).
    ComponentCount,
    /// A random arrangement can be balanced avoiding a random label pair.
    BalanceSuccess,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: Model,
    /// Order of each graph for gnp; side size for bipartite (2n vertices).
    pub n: usize,
    pub p_grid: Vec<f64>,
    pub trials: usize,
    pub base_seed: u64,
    pub statistic: Statistic,
    /// Node budget for packing searches, or state budget for component counts.
    #[serde(default)]
    pub budget: Option<u64>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), RandomError> {
        if self.trials == 0 {
            return Err(RandomError::Config("trials must be at least 1".into()));
        }
        if let Some(&p) = self.p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(RandomError::Probability(p));
        }
        if self.statistic == Statistic::BalanceSuccess && self.model != Model::Bipartite {
            return Err(RandomError::Config("balance-success needs the bipartite model".into()));
        }
        let order = self.order();
        if order > 128 {
            return Err(RandomError::Config("at most 128 vertices".into()));
        }
        if self.statistic == Statistic::ComponentCount && order > 10 {
            return Err(RandomError::Config("component counts need at most 10 vertices".into()));
        }
        Ok(())
    }

    fn order(&self) -> usize {
        match self.model {
            Model::Gnp => self.n,
            Model::Bipartite => 2 * self.n,
        }
    }

    fn pair_count(&self) -> usize {
        match self.model {
            Model::Gnp => self.n * self.n.saturating_sub(1) / 2,
            Model::Bipartite => self.n * self.n,
        }
    }
}

/// Per-trial result at each grid point: `Some(success)` or `None` if censored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub trial: usize,
    pub results: Vec<Option<bool>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub model: Model,
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub successes: usize,
    pub estimate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub censored: usize,
}

/// Runs every trial. Trial `t` draws from ChaCha8 seeded with `base_seed` on
/// stream `t`: first one uniform per X pair, then one per Y pair, then (for
/// balance-success) a shuffle of the labels and a forbidden label pair. The
/// same draws are thresholded at every `p`, so the graphs grow with `p`.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<Vec<TrialOutcome>, RandomError> {
    cfg.validate()?;
    (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, t)).collect()
}

fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Result<TrialOutcome, RandomError> {
    let mut rng = trial_rng(cfg.base_seed, trial as u64);
    let ux = edge_uniforms(&mut rng, cfg.pair_count());
    let uy = edge_uniforms(&mut rng, cfg.pair_count());
    let order = cfg.order();
    let mut arrangement: Vec<usize> = (0..order).collect();
    arrangement.shuffle(&mut rng);
    let forbidden = if order >= 2 {
        let u0 = rng.gen_range(0..order);
        let v0 = (u0 + rng.gen_range(1..order)) % order;
        (u0, v0)
    } else {
        (0, 0)
    };
    let mut results = Vec::with_capacity(cfg.p_grid.len());
    for &p in &cfg.p_grid {
        let (x, y) = match cfg.model {
            Model::Gnp => (threshold_gnp(cfg.n, &ux, p), threshold_gnp(cfg.n, &uy, p)),
            Model::Bipartite => (threshold_bipartite(cfg.n, &ux, p), threshold_bipartite(cfg.n, &uy, p)),
        };
        let r = match cfg.statistic {
            Statistic::IsolatedVertex => match find_packing(&x, &y, cfg.budget.unwrap_or(DEFAULT_NODE_BUDGET)) {
                Ok(found) => Some(found.is_some()),
                Err(RandomError::NodeBudget(_)) => None,
                Err(e) => return Err(e),
            },
            Statistic::ComponentCount => {
                let inst = FsInstance::bijective(x, y).expect("equal orders");
                match build_components(&inst, cfg.budget.unwrap_or(fsg_core::DEFAULT_BUDGET)) {
                    Ok(r) => Some(r.component_count == if cfg.model == Model::Gnp { 1 } else { 2 }),
                    Err(fsg_core::FsError::BudgetExceeded { .. }) => None,
                    Err(e) => return Err(RandomError::Config(e.to_string())),
                }
            }
            Statistic::BalanceSuccess => match balance_arrangement(&x, &y, &arrangement, forbidden) {
                Ok(_) => Some(true),
                Err(RandomError::InsufficientMatching { .. }) => Some(false),
                Err(e) => return Err(e),
            },
        };
        results.push(r);
    }
    Ok(TrialOutcome { trial, results })
}

/// Wilson score interval for `successes` out of `total` at 95% coverage.
pub fn wilson_interval(successes: usize, total: usize) -> (f64, f64) {
    if total == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959964f64;
    let nf = total as f64;
    let phat = successes as f64 / nf;
    let denom = 1.0 + z * z / nf;
    let center = (phat + z * z / (2.0 * nf)) / denom;
    let half = z * (phat * (1.0 - phat) / nf + z * z / (4.0 * nf * nf)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Aggregated rows, one per grid point, sorted by `p`. Censored trials are
/// excluded from the estimate and counted separately.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<Vec<SweepRow>, RandomError> {
    let outcomes = run_trials(cfg)?;
    let mut rows: Vec<SweepRow> = cfg
        .p_grid
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let successes = outcomes.iter().filter(|o| o.results[i] == Some(true)).count();
            let censored = outcomes.iter().filter(|o| o.results[i].is_none()).count();
            let valid = cfg.trials - censored;
            let estimate = if valid == 0 { 0.0 } else { successes as f64 / valid as f64 };
            let (ci_lo, ci_hi) = wilson_interval(successes, valid);
            SweepRow { model: cfg.model, n: cfg.n, p, trials: cfg.trials, successes, estimate, ci_lo, ci_hi, censored }
        })
        .collect();
    rows.sort_by(|a, b| a.p.total_cmp(&b.p));
    Ok(rows)
}

/// Linear interpolation of the first `p` where the estimate crosses 1/2.
pub fn crossover(rows: &[SweepRow]) -> Option<f64> {
    rows.windows(2).find_map(|w| {
        let (a, b) = (&w[0], &w[1]);
        let (da, db) = (a.estimate - 0.5, b.estimate - 0.5);
        if da == 0.0 {
            Some(a.p)
        } else if da.signum() != db.signum() {
            Some(a.p + (b.p - a.p) * da / (da - db))
        } else {
            None
        }
    })
}

/// CSV with header `model,n,p,trials,successes,estimate,ci_lo,ci_hi,censored`.
pub fn write_csv(rows: &[SweepRow], out: impl Write) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
