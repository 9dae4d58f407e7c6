//! Monte Carlo verification of the boosted consistency bound.
//!
//! Each dataset gets its own stream seeded with `master ^ index`. A dataset
//! fails only when the whole two-sided Clopper-Pearson interval lies below
//! the bound `m^-alpha`.

use std::fmt;

use cliquedim_core::boosting::{self, BoostConfig, MuTilde, PatternSampler};
use cliquedim_core::rational::{self, Rational};
use cliquedim_core::{ConceptClass, ContradictionGraph, Dataset, Error, Limits};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::beta::beta_reg;

/// Quantile of `Beta(a, b)`: bisection on the regularized incomplete beta,
/// which is accurate where the library's own inverse is not.
fn beta_quantile(a: f64, b: f64, p: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if beta_reg(a, b, mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Exact two-sided interval for a binomial proportion at level `confidence`.
pub fn clopper_pearson(successes: u64, trials: u64, confidence: f64) -> (f64, f64) {
    assert!(trials > 0 && successes <= trials);
    let alpha = 1.0 - confidence;
    let (k, n) = (successes as f64, trials as f64);
    let lo = if successes == 0 {
        0.0
    } else {
        beta_quantile(k, n - k + 1.0, alpha / 2.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        beta_quantile(k + 1.0, n - k, 1.0 - alpha / 2.0)
    };
    (lo, hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McLine {
    pub dataset: String,
    pub successes: u64,
    pub trials: u64,
    pub ci: (f64, f64),
    pub bound: f64,
    pub verdict: Verdict,
}

impl McLine {
    pub fn estimate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

impl fmt::Display for McLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.verdict == Verdict::Skip {
            return write!(f, "S={} est=NA ci=[NA,NA] bound=NA SKIP", self.dataset);
        }
        write!(
            f,
            "S={} est={:.6} ci=[{:.6},{:.6}] bound={:.6e} {}",
            self.dataset,
            self.estimate(),
            self.ci.0,
            self.ci.1,
            self.bound,
            self.verdict
        )
    }
}

#[derive(Debug, Clone)]
pub struct McSettings {
    pub m: usize,
    /// Anchor length; `None` picks the smallest separating one up to `m0_max`.
    pub m0: Option<usize>,
    pub m0_max: usize,
    /// Margin; `None` means `epsilon / 4`.
    pub gamma: Option<Rational>,
    pub samples: u64,
    pub master_seed: u64,
    /// Enumerate every dataset when there are at most this many.
    pub enumerate_cap: usize,
    /// Otherwise test this many datasets drawn with the master seed.
    pub sampled_datasets: usize,
    pub confidence: f64,
}

impl Default for McSettings {
    fn default() -> Self {
        McSettings {
            m: 3,
            m0: None,
            m0_max: 3,
            gamma: None,
            samples: 100_000,
            master_seed: 0,
            enumerate_cap: 10_000,
            sampled_datasets: 100,
            confidence: 0.99,
        }
    }
}

#[derive(Debug, Clone)]
pub struct McReport {
    pub master_seed: u64,
    /// `None` when no anchor separates, and every line is a skip.
    pub config: Option<BoostConfig>,
    pub lines: Vec<McLine>,
}

impl McReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.verdict != Verdict::Fail)
    }

    pub fn skipped(&self) -> bool {
        self.config.is_none()
    }

    pub fn header(&self) -> String {
        match &self.config {
            Some(c) => format!(
                "# seed={} m={} m0={} epsilon={} gamma={} T={} alpha={:.6}",
                self.master_seed,
                c.m,
                c.m0,
                rational::to_fraction_string(&c.epsilon),
                rational::to_fraction_string(&c.gamma),
                c.rounds,
                c.alpha()
            ),
            None => format!("# seed={} no separating anchor", self.master_seed),
        }
    }
}

impl fmt::Display for McReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header())?;
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn anchor(
    class: &ConceptClass,
    settings: &McSettings,
    limits: &Limits,
) -> cliquedim_core::Result<MuTilde> {
    match settings.m0 {
        Some(m0) => boosting::mu_tilde(class, m0, limits),
        None => boosting::smallest_separating_m0(class, settings.m0_max, limits),
    }
}

/// The datasets to test: all of `G_m`, or a seeded sample when there are too many.
pub fn datasets_under_test(
    class: &ConceptClass,
    settings: &McSettings,
    limits: &Limits,
) -> cliquedim_core::Result<Vec<Dataset>> {
    let g = ContradictionGraph::build_with(class, settings.m, limits)?;
    let all = g.vertices();
    if all.len() <= settings.enumerate_cap {
        return Ok(all.to_vec());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(settings.master_seed);
    Ok((0..settings.sampled_datasets)
        .map(|_| all[rng.gen_range(0..all.len())].clone())
        .collect())
}

pub fn verify_sspfcd_bound(
    class: &ConceptClass,
    settings: &McSettings,
    limits: &Limits,
) -> cliquedim_core::Result<McReport> {
    let mu = match anchor(class, settings, limits) {
        Ok(mu) => mu,
        Err(Error::NoSeparation(_)) => {
            return Ok(McReport {
                master_seed: settings.master_seed,
                config: None,
                lines: vec![McLine {
                    dataset: "*".into(),
                    successes: 0,
                    trials: 0,
                    ci: (0.0, 0.0),
                    bound: 0.0,
                    verdict: Verdict::Skip,
                }],
            })
        }
        Err(e) => return Err(e),
    };
    let config = match &settings.gamma {
        Some(g) => BoostConfig::new(mu.m0, mu.epsilon.clone(), g.clone(), settings.m)?,
        None => BoostConfig::with_default_gamma(mu.m0, mu.epsilon.clone(), settings.m)?,
    };
    let sampler = PatternSampler::new(&mu.distribution)?;
    let bound = config.consistency_bound();
    let mut lines = Vec::new();
    for (index, s) in datasets_under_test(class, settings, limits)?
        .iter()
        .enumerate()
    {
        let mut rng = ChaCha8Rng::seed_from_u64(settings.master_seed ^ index as u64);
        let successes = (0..settings.samples)
            .filter(|_| {
                sampler
                    .sample_boosted(&mut rng, config.rounds)
                    .is_consistent(s)
            })
            .count() as u64;
        let ci = clopper_pearson(successes, settings.samples, settings.confidence);
        lines.push(McLine {
            dataset: s.render(),
            successes,
            trials: settings.samples,
            ci,
            bound,
            verdict: if ci.1 < bound {
                Verdict::Fail
            } else {
                Verdict::Pass
            },
        });
    }
    Ok(McReport {
        master_seed: settings.master_seed,
        config: Some(config),
        lines,
    })
}
