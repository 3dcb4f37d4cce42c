//! Types shared by the sampling estimators.

use std::time::Instant;

use serde::Serialize;

use crate::bounds::CompensatedSum;
use crate::error::{Error, Result};
use crate::reachability::VdBound;

/// Where sample endpoints are drawn from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingMode {
    /// Endpoints restricted to `RF(r)` / `RT(r)`.
    #[default]
    Restricted,
    /// Endpoints drawn from the whole vertex set, as unrestricted samplers do.
    Baseline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    /// Both deviation terms fell to `λ` or below.
    BoundsSatisfied,
    /// The fallback budget was exhausted.
    OmegaReached,
    /// The target vertex cannot score, so no sampling happened.
    DegenerateZero,
    /// A fixed number of samples was requested and drawn.
    FixedBudget,
}

/// Betweenness / coverage estimator settings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimatorConfig {
    pub lambda: f64,
    pub delta: f64,
    /// Universal constant in the fallback budget.
    pub c_constant: f64,
    pub seed: u64,
    pub mode: SamplingMode,
    /// Replaces the computed fallback budget.
    pub max_samples_override: Option<u64>,
    /// Draw exactly this many samples and skip the adaptive rule.
    pub fixed_samples: Option<u64>,
    pub vd_bound: VdBound,
}

impl EstimatorConfig {
    pub fn new(lambda: f64, delta: f64, seed: u64) -> Result<Self> {
        let cfg = EstimatorConfig {
            lambda,
            delta,
            c_constant: 0.5,
            seed,
            mode: SamplingMode::Restricted,
            max_samples_override: None,
            fixed_samples: None,
            vd_bound: VdBound::Domain,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        check_unit("lambda", self.lambda)?;
        check_unit("delta", self.delta)?;
        if !(self.c_constant > 0.0 && self.c_constant.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "constant C must be positive, got {}",
                self.c_constant
            )));
        }
        Ok(())
    }

    /// `δ₁ = δ/4`: budget of the lower deviation event.
    pub fn delta1(&self) -> f64 {
        self.delta / 4.0
    }

    /// `δ₂ = δ/4`: budget of the upper deviation event.
    pub fn delta2(&self) -> f64 {
        self.delta / 4.0
    }

    pub fn with_mode(mut self, mode: SamplingMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_fixed_samples(mut self, n: u64) -> Self {
        self.fixed_samples = Some(n);
        self
    }
}

pub(crate) fn check_unit(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must lie in (0, 1), got {x}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub samples: u64,
    pub omega: u64,
    pub alpha: f64,
    pub stop_reason: StopReason,
    pub lower_conf: f64,
    pub upper_conf: f64,
    pub seed: u64,
    pub wall_time: f64,
    /// Samples whose contribution was non-zero.
    pub hits: u64,
    /// Unbiased empirical variance of the per-sample contributions.
    pub sample_variance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_prime: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl Estimate {
    pub(crate) fn degenerate(seed: u64, started: Instant) -> Self {
        Estimate {
            value: 0.0,
            samples: 0,
            omega: 0,
            alpha: 0.0,
            stop_reason: StopReason::DegenerateZero,
            lower_conf: 0.0,
            upper_conf: 0.0,
            seed,
            wall_time: started.elapsed().as_secs_f64(),
            hits: 0,
            sample_variance: 0.0,
            alpha_prime: None,
            k: None,
        }
    }

    /// Standard error of the mean of the per-sample contributions.
    pub fn standard_error(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            (self.sample_variance / self.samples as f64).sqrt()
        }
    }
}

/// Running mean and second moment of per-sample contributions.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct RunningStats {
    sum: CompensatedSum,
    sum_sq: CompensatedSum,
    pub count: u64,
    pub hits: u64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.sum.add(x);
        self.sum_sq.add(x * x);
        self.count += 1;
        if x != 0.0 {
            self.hits += 1;
        }
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.sum.value() / self.count as f64
        }
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let n = self.count as f64;
        let mean = self.mean();
        ((self.sum_sq.value() - n * mean * mean) / (n - 1.0)).max(0.0)
    }
}

/// Drives a sampling loop: fixed count, or adaptive with a fallback budget.
pub(crate) enum Schedule {
    Fixed(u64),
    Adaptive { omega: u64 },
}

pub(crate) struct Outcome {
    pub stats: RunningStats,
    pub stop_reason: StopReason,
    /// Deviation terms at the final sample count (zero when no samples were drawn).
    pub terms: (f64, f64),
}

pub(crate) fn run_schedule(
    schedule: Schedule,
    lambda: f64,
    mut terms: impl FnMut(f64, u64) -> (f64, f64),
    mut sample: impl FnMut() -> Result<f64>,
) -> Result<Outcome> {
    let mut stats = RunningStats::default();
    let stop_reason = match schedule {
        Schedule::Fixed(n) => {
            for _ in 0..n {
                stats.push(sample()?);
            }
            StopReason::FixedBudget
        }
        Schedule::Adaptive { omega } => loop {
            if stats.count >= omega {
                break StopReason::OmegaReached;
            }
            if stats.count >= 1 {
                let (a, b) = terms(stats.mean(), stats.count);
                if a <= lambda && b <= lambda {
                    break StopReason::BoundsSatisfied;
                }
            }
            stats.push(sample()?);
        },
    };
    let final_terms = if stats.count >= 1 {
        terms(stats.mean(), stats.count)
    } else {
        (0.0, 0.0)
    };
    Ok(Outcome {
        stats,
        stop_reason,
        terms: final_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(EstimatorConfig::new(0.1, 0.1, 0).is_ok());
        for (l, d) in [(0.0, 0.1), (1.0, 0.1), (0.1, 0.0), (0.1, 1.5), (f64::NAN, 0.1)] {
            assert!(EstimatorConfig::new(l, d, 0).is_err(), "{l} {d}");
        }
        let cfg = EstimatorConfig::new(0.1, 0.2, 0).unwrap();
        assert!((cfg.delta1() + cfg.delta2() + cfg.delta / 2.0 - cfg.delta).abs() < 1e-15);
    }

    #[test]
    fn running_stats() {
        let mut s = RunningStats::default();
        for x in [0.0, 1.0, 0.0, 1.0] {
            s.push(x);
        }
        assert_eq!(s.mean(), 0.5);
        assert!((s.variance() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(s.hits, 2);
    }

    #[test]
    fn adaptive_schedule_respects_budget() {
        let out = run_schedule(Schedule::Adaptive { omega: 17 }, 0.1, |_, _| (1.0, 1.0), || Ok(0.5)).unwrap();
        assert_eq!(out.stats.count, 17);
        assert_eq!(out.stop_reason, StopReason::OmegaReached);
        let out = run_schedule(
            Schedule::Adaptive { omega: 1000 },
            0.1,
            |_, tau| (1.0 / tau as f64, 1.0 / tau as f64),
            || Ok(0.5),
        )
        .unwrap();
        assert_eq!(out.stats.count, 10);
        assert_eq!(out.stop_reason, StopReason::BoundsSatisfied);
    }
}
