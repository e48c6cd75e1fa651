use num_complex::Complex;

use super::streams::derive_seed;
use super::trials::{run_trials, Experiment};
use crate::error::{Error, Result};
use crate::protocols::{
    hoeffding_shots, intensity_margin, required_rounds_quantum, DefectScenario, DefectTestConfig,
};
use crate::quantum::PixelArray;

/// Defect scenario family indexed by `N`: every pixel has transparency
/// `base`, except pixel `⌈N/2⌉` (one-based) which has `defect`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepTemplate {
    pub base: Complex<f64>,
    pub defect: Complex<f64>,
}

impl SweepTemplate {
    /// Zero-based index of the planted defect.
    pub fn defect_index(n: usize) -> usize {
        n.div_ceil(2) - 1
    }

    pub fn scenario(&self, n: usize) -> Result<DefectScenario<f64>> {
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let theoretical = PixelArray::uniform(n, self.base)?;
        DefectScenario::planted(theoretical, &[(Self::defect_index(n), self.defect)])
    }
}

/// Mean absorptions of both defect tests at one array size.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub quantum_absorptions: f64,
    pub classical_absorptions: f64,
    /// `classical_absorptions / quantum_absorptions`: the absorption
    /// advantage of the quantum test.
    pub ratio: f64,
    /// Quantum round budget.
    pub rounds: u64,
    /// Classical photons per pixel.
    pub shots: u64,
}

/// Runs both defect tests for every `n` in `ns` (strictly increasing).
/// Each `(n, protocol)` pair gets its own master seed derived from
/// `master_seed`.
pub fn scaling_sweep(
    ns: &[usize],
    template: &SweepTemplate,
    config: &DefectTestConfig,
    trials: u64,
    master_seed: u64,
) -> Result<Vec<SweepRow>> {
    if ns.is_empty() {
        return Err(Error::param("ns", "no array sizes given"));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param("ns", "sizes must be strictly increasing"));
    }
    ns.iter()
        .map(|&n| {
            let scenario = template.scenario(n)?;
            let quantum = run_trials(
                &Experiment::QuantumDefect { scenario: scenario.clone(), config: config.clone() },
                trials,
                derive_seed(master_seed, 2 * n as u64),
            )?;
            let classical = run_trials(
                &Experiment::ClassicalDefect { scenario, config: config.clone() },
                trials,
                derive_seed(master_seed, 2 * n as u64 + 1),
            )?;
            let margin = intensity_margin(config.epsilon, template.base.norm());
            Ok(SweepRow {
                n,
                quantum_absorptions: quantum.mean_absorptions,
                classical_absorptions: classical.mean_absorptions,
                ratio: classical.mean_absorptions / quantum.mean_absorptions,
                rounds: required_rounds_quantum(n, config.epsilon, config.delta, config.round_constant)?,
                shots: hoeffding_shots(n, config.delta, margin / 2.0)?,
            })
        })
        .collect()
}
