//! Numerics for the local-lemma existence argument and a seeded harness
//! measuring `κ_Q` on uniform random graphs.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{write_graph6, Graph, VertexSet};
use crate::solvers::{kappa_q_with, SolverConfig};

/// `H(t) = -t log2 t - (1-t) log2 (1-t)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!(
            "entropy argument {t} is outside [0, 1]"
        )));
    }
    let term = |x: f64| if x == 0.0 { 0.0 } else { -x * x.log2() };
    Ok(term(t) + term(1.0 - t))
}

/// Slack allowed when checking `d <= 1 - c` on grid points.
const DOMAIN_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LLLParams {
    pub n: usize,
    pub c: f64,
    pub d: f64,
    pub r: f64,
}

impl LLLParams {
    pub fn new(n: usize, c: f64, d: f64, r: f64) -> Result<Self> {
        check_cd(c, d)?;
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if r.is_nan() || r < 2.0 {
            return Err(Error::InvalidParameter(format!("r = {r} must be at least 2")));
        }
        Ok(Self { n, c, d, r })
    }
}

fn check_cd(c: f64, d: f64) -> Result<()> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidParameter(format!("c = {c} must lie in (0, 1)")));
    }
    if !(d > 0.0 && d <= 1.0 - c + DOMAIN_EPS) {
        return Err(Error::InvalidParameter(format!("d = {d} must lie in (0, 1 - c]")));
    }
    Ok(())
}

/// `(1-d)[H(c/(1-d)) - 1] + H(d)`.
pub fn lll_asymptotic_condition(c: f64, d: f64) -> Result<f64> {
    check_cd(c, d)?;
    let ratio = (c / (1.0 - d)).min(1.0);
    Ok((1.0 - d) * (binary_entropy(ratio)? - 1.0) + binary_entropy(d)?)
}

/// The asymptotic expression plus `4(1-c)/r + log2(r)/n`. A value `<= 0`
/// means the weighted local-lemma inequality holds.
pub fn lll_condition(p: &LLLParams) -> Result<f64> {
    let base = lll_asymptotic_condition(p.c, p.d)?;
    Ok(base + 4.0 * (1.0 - p.c) / p.r + p.r.log2() / p.n as f64)
}

/// Smallest `c = i * grid_step` for which the asymptotic condition is
/// `<= 0` at every `d = j * grid_step` in `(0, 1-c]` and at `d = 1-c`.
pub fn min_feasible_c(grid_step: f64) -> Result<f64> {
    if !(grid_step > 0.0 && grid_step <= 1e-3) {
        return Err(Error::InvalidParameter(format!(
            "grid step {grid_step} must lie in (0, 1e-3]"
        )));
    }
    let steps = (1.0 / grid_step).round() as usize;
    for i in 1..steps {
        let c = i as f64 * grid_step;
        if feasible_on_grid(c, grid_step)? {
            return Ok(c);
        }
    }
    Err(Error::Precondition("no feasible c found on the grid".into()))
}

fn feasible_on_grid(c: f64, step: f64) -> Result<bool> {
    let top = 1.0 - c;
    let mut j = 1usize;
    loop {
        let d = j as f64 * step;
        if d >= top - DOMAIN_EPS {
            break;
        }
        if lll_asymptotic_condition(c, d)? > 0.0 {
            return Ok(false);
        }
        j += 1;
    }
    Ok(lll_asymptotic_condition(c, top)? <= 0.0)
}

/// `(1/4)^(2(1-c)n/r)` with `r = 4 ln2 (1-c) n^2`; equal to `exp(-1/n)`.
pub fn probability_lower_bound(n: usize, c: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidParameter(format!("c = {c} must lie in (0, 1)")));
    }
    let n = n as f64;
    let r = 4.0 * std::f64::consts::LN_2 * (1.0 - c) * n * n;
    Ok(0.25f64.powf(2.0 * (1.0 - c) * n / r))
}

/// SplitMix64 finaliser.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `i`: `splitmix64(base ^ splitmix64(i))`.
pub fn trial_seed(base_seed: u64, trial: u64) -> u64 {
    splitmix64(base_seed ^ splitmix64(trial))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialReport {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub graph6: String,
    pub kappa: usize,
    pub kappa_prime: usize,
    pub kappa_q: usize,
    pub ratio: f64,
    pub kappa_witness: VertexSet,
    pub kappa_prime_witness: VertexSet,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TrialReport {
    /// Rebuilds the graph from its seed and re-checks both witnesses.
    pub fn verify(&self) -> bool {
        let Ok(g) = Graph::random(self.n, self.seed) else {
            return false;
        };
        let odd_c = g.odd_neighborhood(self.kappa_witness) - self.kappa_witness;
        let d = self.kappa_prime_witness;
        let non_wod = d | g.odd_neighborhood(d);
        write_graph6(&g) == self.graph6
            && odd_c.len() == self.kappa
            && crate::wod::verify_wod_certificate(&g, odd_c, self.kappa_witness)
            && non_wod.len() == self.kappa_prime
            && crate::wod::verify_non_wod_certificate(&g, non_wod, d)
            && self.kappa_q == self.kappa.max(self.n - self.kappa_prime)
    }
}

pub fn sample_and_measure(n: usize, trials: usize, base_seed: u64, cfg: &SolverConfig) -> Result<Vec<TrialReport>> {
    cfg.check(n)?;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    // Trials run concurrently, so each solver call stays sequential.
    let inner = SolverConfig {
        parallel: false,
        ..*cfg
    };
    let run = |trial: usize| -> Result<TrialReport> {
        let seed = trial_seed(base_seed, trial as u64);
        let g = Graph::random(n, seed)?;
        let start = Instant::now();
        let q = kappa_q_with(&g, &inner)?;
        let elapsed = start.elapsed();
        Ok(TrialReport {
            trial,
            seed,
            n,
            graph6: write_graph6(&g),
            kappa: q.kappa.value,
            kappa_prime: q.kappa_prime.value,
            kappa_q: q.value,
            ratio: q.value as f64 / n as f64,
            kappa_witness: q.kappa.witness,
            kappa_prime_witness: q.kappa_prime.witness,
            elapsed,
        })
    };
    if cfg.parallel {
        (0..trials).into_par_iter().map(run).collect()
    } else {
        (0..trials).map(run).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub threshold: f64,
    pub below_threshold: usize,
    pub fraction_below: f64,
    pub min_ratio: Option<f64>,
    pub median_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
}

/// Counts trials with `κ_Q < threshold * n`; the median of an even count
/// is the mean of the two middle ratios.
pub fn summarize(reports: &[TrialReport], threshold: f64) -> TrialSummary {
    let below = reports
        .iter()
        .filter(|r| (r.kappa_q as f64) < threshold * r.n as f64)
        .count();
    let mut ratios: Vec<f64> = reports.iter().map(|r| r.ratio).collect();
    ratios.sort_by(f64::total_cmp);
    let median = match ratios.len() {
        0 => None,
        len if len % 2 == 1 => Some(ratios[len / 2]),
        len => Some((ratios[len / 2 - 1] + ratios[len / 2]) / 2.0),
    };
    TrialSummary {
        trials: reports.len(),
        threshold,
        below_threshold: below,
        fraction_below: if reports.is_empty() {
            0.0
        } else {
            below as f64 / reports.len() as f64
        },
        min_ratio: ratios.first().copied(),
        median_ratio: median,
        max_ratio: ratios.last().copied(),
    }
}
