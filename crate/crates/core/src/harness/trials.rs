use std::ops::Range;

use rand::Rng;
use rayon::prelude::*;

use super::stats::{TrialStats, TrialTally};
use super::streams::trial_stream;
use super::DEFAULT_CONFIDENCE;
use crate::error::{Error, Result};
use crate::protocols::{
    build_reference_state, classical_defect_test, classical_rare_search,
    classical_rare_search_with_shots, quantum_defect_test, quantum_rare_search, sample_random_array,
    DefectScenario, DefectTestConfig, RareSearchConfig, RoundKernel, RoundOutcome, Verdict,
};
use crate::quantum::{prepare_uniform_superposition, PixelArray};

/// Where the actual array of a rare-search trial comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum ArraySource {
    Fixed(PixelArray<f64>),
    /// A fresh uniform-disc array per trial, drawn from the trial's stream.
    UniformDisc,
}

/// A protocol invocation repeated by [`run_trials`]. The success indicator
/// of each variant is noted on it.
#[derive(Debug, Clone, PartialEq)]
pub enum Experiment {
    /// Success: `defect_found`.
    QuantumDefect { scenario: DefectScenario<f64>, config: DefectTestConfig },
    /// Success: any pixel flagged.
    ClassicalDefect { scenario: DefectScenario<f64>, config: DefectTestConfig },
    /// Success: verdict `PatternPresent`.
    QuantumRare { actual: ArraySource, config: RareSearchConfig<f64> },
    /// Success: verdict `PatternPresent`. `shots` overrides the planned
    /// per-pixel shot count.
    ClassicalRare { actual: ArraySource, config: RareSearchConfig<f64>, shots: Option<u64> },
    /// A single quantum interrogation round with a uniform probe over all
    /// pixels. Success: the photon was absorbed.
    Round { scenario: DefectScenario<f64> },
}

impl Experiment {
    pub fn validate(&self) -> Result<()> {
        match self {
            Experiment::QuantumDefect { scenario, config }
            | Experiment::ClassicalDefect { scenario, config } => scenario.validate(config),
            Experiment::QuantumRare { actual, config } | Experiment::ClassicalRare { actual, config, .. } => {
                config.validate()?;
                if let ArraySource::Fixed(a) = actual {
                    if a.len() != config.pattern.len() {
                        return Err(Error::DimensionMismatch { expected: config.pattern.len(), found: a.len() });
                    }
                }
                Ok(())
            }
            Experiment::Round { scenario } => {
                build_reference_state(&scenario.theoretical, &vec![true; scenario.len()]).map(|_| ())
            }
        }
    }
}

/// Outcome of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    pub success: bool,
    pub absorptions: u64,
    pub rounds: u64,
}

fn actual_array<R: Rng + ?Sized>(source: &ArraySource, n: usize, rng: &mut R) -> Result<PixelArray<f64>> {
    match source {
        ArraySource::Fixed(a) => Ok(a.clone()),
        ArraySource::UniformDisc => sample_random_array(n, rng),
    }
}

pub fn run_trial<R: Rng + ?Sized>(experiment: &Experiment, rng: &mut R) -> Result<TrialOutcome> {
    Ok(match experiment {
        Experiment::QuantumDefect { scenario, config } => {
            let r = quantum_defect_test(scenario, config, rng)?;
            TrialOutcome { success: r.defect_found, absorptions: r.photons_absorbed, rounds: r.rounds_used }
        }
        Experiment::ClassicalDefect { scenario, config } => {
            let r = classical_defect_test(scenario, config, rng)?;
            TrialOutcome { success: r.defect_found, absorptions: r.photons_absorbed, rounds: r.rounds_used }
        }
        Experiment::QuantumRare { actual, config } => {
            let a = actual_array(actual, config.pattern.len(), rng)?;
            let r = quantum_rare_search(&a, config, rng)?;
            TrialOutcome {
                success: r.verdict == Verdict::PatternPresent,
                absorptions: r.photons_absorbed,
                rounds: r.rounds_used,
            }
        }
        Experiment::ClassicalRare { actual, config, shots } => {
            let a = actual_array(actual, config.pattern.len(), rng)?;
            let r = match shots {
                Some(s) => classical_rare_search_with_shots(&a, config, *s, rng)?,
                None => classical_rare_search(&a, config, rng)?,
            };
            TrialOutcome {
                success: r.verdict == Verdict::PatternPresent,
                absorptions: r.photons_absorbed,
                rounds: r.rounds_used,
            }
        }
        Experiment::Round { scenario } => {
            let n = scenario.len();
            let probe = prepare_uniform_superposition(n)?;
            let reference = build_reference_state(&scenario.theoretical, &vec![true; n])?;
            let kernel = RoundKernel::new(&probe, &scenario.actual, &reference)?;
            let absorbed = matches!(kernel.sample(rng), RoundOutcome::Absorbed { .. });
            TrialOutcome { success: absorbed, absorptions: absorbed as u64, rounds: 1 }
        }
    })
}

/// Tally of the trials with indices in `trials`. Batches over disjoint
/// ranges merge to the same tally as one run over their union.
pub fn run_trial_batch(experiment: &Experiment, trials: Range<u64>, master_seed: u64) -> Result<TrialTally> {
    experiment.validate()?;
    let outcomes: Vec<TrialOutcome> = trials
        .into_par_iter()
        .map(|t| run_trial(experiment, &mut trial_stream(master_seed, t)))
        .collect::<Result<_>>()?;
    let mut tally = TrialTally::default();
    for o in outcomes {
        tally.record(o.success, o.absorptions, o.rounds);
    }
    Ok(tally)
}

/// Runs `trials` independent trials and summarizes them at
/// [`DEFAULT_CONFIDENCE`].
pub fn run_trials(experiment: &Experiment, trials: u64, master_seed: u64) -> Result<TrialStats> {
    if trials == 0 {
        return Err(Error::param("trials", "must be at least 1"));
    }
    run_trial_batch(experiment, 0..trials, master_seed)?.stats(DEFAULT_CONFIDENCE)
}
