use rand::Rng;
use rand_distr::{Binomial, Distribution};

use super::arrays::build_reference_state;
use super::budget::{classical_rare_plan, required_successes};
use crate::error::{Error, Result};
use crate::quantum::{
    prepare_uniform_superposition, ChannelEvent, Eigenvalue, PixelArray, ProjectionMeasurement,
    TransmissionDistribution,
};
use crate::scalar::Real;

/// Rare-pattern search parameters. The pattern `α⁰` is expected with prior
/// probability `prior_p`; the search must be right with probability `1 - δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RareSearchConfig<T> {
    pub prior_p: f64,
    pub delta: f64,
    pub pattern: PixelArray<T>,
}

impl<T: Real> RareSearchConfig<T> {
    pub fn new(prior_p: f64, delta: f64, pattern: PixelArray<T>) -> Result<Self> {
        let cfg = Self { prior_p, delta, pattern };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Probability ranges plus the regime guard `exp(-√N) ≤ δp/10`.
    pub fn validate(&self) -> Result<()> {
        if !(self.prior_p > 0.0 && self.prior_p < 1.0) {
            return Err(Error::param("prior_p", format!("{} not in (0, 1)", self.prior_p)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::param("delta", format!("{} not in (0, 1)", self.delta)));
        }
        let n = self.pattern.len() as f64;
        let tail = (-n.sqrt()).exp();
        let allowed = self.delta * self.prior_p / 10.0;
        if tail > allowed {
            return Err(Error::param(
                "prior_p",
                format!("regime guard violated: exp(-sqrt(N)) = {tail:.3e} > delta*p/10 = {allowed:.3e}"),
            ));
        }
        Ok(())
    }

    pub fn required_successes(&self) -> Result<u64> {
        required_successes(self.pattern.len(), self.delta, self.prior_p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    PatternPresent,
    PatternAbsent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RareSearchReport {
    pub verdict: Verdict,
    pub successes_observed: u64,
    pub photons_absorbed: u64,
    /// Quantum: rounds including absorbed ones. Classical: photons fired.
    pub rounds_used: u64,
}

/// Quantum rare-pattern search.
///
/// Rounds repeat until `x = required_successes` projections onto the pattern
/// state have succeeded (verdict present) or one has failed (verdict
/// absent). Absorbed rounds carry no information and are only counted.
pub fn quantum_rare_search<T: Real, R: Rng + ?Sized>(
    actual: &PixelArray<T>,
    config: &RareSearchConfig<T>,
    rng: &mut R,
) -> Result<RareSearchReport> {
    config.validate()?;
    let n = config.pattern.len();
    if actual.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: actual.len() });
    }
    let needed = config.required_successes()?;
    let pattern_state = build_reference_state(&config.pattern, &vec![true; n])?;
    let probe = prepare_uniform_superposition(n)?;
    let transmission = TransmissionDistribution::new(&probe, actual)?;
    let projection = match transmission.conditioned_state() {
        Some(state) => ProjectionMeasurement::new(state, &pattern_state)?,
        None => return Err(Error::Opaque),
    };

    let mut report = RareSearchReport {
        verdict: Verdict::PatternAbsent,
        successes_observed: 0,
        photons_absorbed: 0,
        rounds_used: 0,
    };
    loop {
        report.rounds_used += 1;
        match transmission.sample_event(rng) {
            ChannelEvent::Absorbed { .. } => report.photons_absorbed += 1,
            ChannelEvent::Transmitted => match projection.sample(rng) {
                Eigenvalue::One => {
                    report.successes_observed += 1;
                    if report.successes_observed >= needed {
                        report.verdict = Verdict::PatternPresent;
                        return Ok(report);
                    }
                }
                Eigenvalue::Zero => return Ok(report),
            },
        }
    }
}

/// Classical rare-pattern search with the shot count of
/// [`classical_rare_plan`].
pub fn classical_rare_search<T: Real, R: Rng + ?Sized>(
    actual: &PixelArray<T>,
    config: &RareSearchConfig<T>,
    rng: &mut R,
) -> Result<RareSearchReport> {
    config.validate()?;
    let plan = classical_rare_plan(config.pattern.len(), config.delta, config.prior_p)?;
    classical_rare_search_with_shots(actual, config, plan.shots_per_pixel, rng)
}

/// Estimates `|α_i|` on the first `r` pixels from `shots` photons each and
/// reports the pattern present iff every estimate lies within the plan's
/// tolerance of `|α⁰_i|`.
pub fn classical_rare_search_with_shots<T: Real, R: Rng + ?Sized>(
    actual: &PixelArray<T>,
    config: &RareSearchConfig<T>,
    shots: u64,
    rng: &mut R,
) -> Result<RareSearchReport> {
    config.validate()?;
    let n = config.pattern.len();
    if actual.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: actual.len() });
    }
    if shots == 0 {
        return Err(Error::param("shots", "must be at least 1"));
    }
    let plan = classical_rare_plan(n, config.delta, config.prior_p)?;
    let mut report = RareSearchReport {
        verdict: Verdict::PatternPresent,
        successes_observed: 0,
        photons_absorbed: 0,
        rounds_used: 0,
    };
    for i in 0..plan.pixels {
        let p = actual.transmission_probability(i).as_f64().clamp(0.0, 1.0);
        let transmitted = Binomial::new(shots, p)
            .map_err(|e| Error::param("transmission", e.to_string()))?
            .sample(rng);
        report.rounds_used += shots;
        report.photons_absorbed += shots - transmitted;
        let magnitude = (transmitted as f64 / shots as f64).sqrt();
        let target = config.pattern.transparencies()[i].norm().as_f64();
        if (magnitude - target).abs() < plan.tolerance {
            report.successes_observed += 1;
        } else {
            report.verdict = Verdict::PatternAbsent;
        }
    }
    Ok(report)
}
