use std::collections::BTreeSet;

use num_complex::Complex;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use super::arrays::build_reference_state;
use super::budget::{hoeffding_shots, intensity_margin, required_rounds_quantum};
use super::round::{RoundKernel, RoundOutcome};
use crate::error::{Error, Result};
use crate::quantum::{PhotonModeState, PixelArray};
use crate::scalar::Real;

/// Parameters shared by the quantum and classical defect tests.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectTestConfig {
    /// Minimum amplitude distance `|α'_i - α_i|` of a defect.
    pub epsilon: f64,
    /// Allowed failure probability.
    pub delta: f64,
    /// Upper bound `M` on the number of defective pixels.
    pub max_defects: usize,
    /// Constant `cq` in the round budget `cq · N · ε⁻² · ln(1/δ)`.
    pub round_constant: f64,
    /// Which-beam hits needed before a pixel is declared defective.
    pub id_confirmations: u32,
    /// Bound `ε'` on the error of the theoretical transparencies.
    pub calibration_error: f64,
}

impl DefectTestConfig {
    pub fn new(epsilon: f64, delta: f64, max_defects: usize) -> Self {
        Self {
            epsilon,
            delta,
            max_defects,
            round_constant: 4.0,
            id_confirmations: 1,
            calibration_error: 0.0,
        }
    }

    /// Checks ranges and, for `M ≥ 1`, the calibration admissibility bound
    /// `ε' ≤ M·ε / (10·N)`.
    pub fn validate(&self, n: usize) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon <= 2.0) {
            return Err(Error::param("epsilon", format!("{} not in (0, 2]", self.epsilon)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::param("delta", format!("{} not in (0, 1)", self.delta)));
        }
        if !(self.round_constant > 0.0 && self.round_constant.is_finite()) {
            return Err(Error::param("cq", format!("{} must be positive", self.round_constant)));
        }
        if self.id_confirmations == 0 {
            return Err(Error::param("id_confirmations", "must be at least 1"));
        }
        if !(self.calibration_error >= 0.0 && self.calibration_error.is_finite()) {
            return Err(Error::param(
                "calibration_error",
                format!("{} must be non-negative", self.calibration_error),
            ));
        }
        if self.max_defects >= 1 {
            let bound = self.max_defects as f64 * self.epsilon / (10.0 * n as f64);
            if self.calibration_error > bound {
                return Err(Error::param(
                    "calibration_error",
                    format!("{} exceeds M·ε/(10N) = {bound}", self.calibration_error),
                ));
            }
        }
        Ok(())
    }
}

/// Theoretical and actual transparencies plus the ground-truth defect set.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectScenario<T> {
    pub theoretical: PixelArray<T>,
    pub actual: PixelArray<T>,
    pub defect_indices: BTreeSet<usize>,
}

impl<T: Real> DefectScenario<T> {
    pub fn new(
        theoretical: PixelArray<T>,
        actual: PixelArray<T>,
        defect_indices: BTreeSet<usize>,
    ) -> Result<Self> {
        let n = theoretical.len();
        if actual.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: actual.len() });
        }
        if let Some(&index) = defect_indices.iter().find(|&&i| i >= n) {
            return Err(Error::PixelOutOfRange { index, n });
        }
        Ok(Self { theoretical, actual, defect_indices })
    }

    /// Defect-free scenario.
    pub fn clean(theoretical: PixelArray<T>) -> Self {
        Self { actual: theoretical.clone(), theoretical, defect_indices: BTreeSet::new() }
    }

    /// Replaces the listed pixels of `theoretical` and marks them defective.
    pub fn planted(theoretical: PixelArray<T>, defects: &[(usize, Complex<T>)]) -> Result<Self> {
        let mut actual = theoretical.clone();
        let mut indices = BTreeSet::new();
        for &(index, value) in defects {
            actual = actual.with_pixel(index, value)?;
            if !indices.insert(index) {
                return Err(Error::param("defects", format!("pixel {index} listed twice")));
            }
        }
        Self::new(theoretical, actual, indices)
    }

    pub fn len(&self) -> usize {
        self.theoretical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theoretical.is_empty()
    }

    /// Checks the scenario against the promise the tests rely on: at most `M`
    /// defects, each at amplitude distance `≥ ε`, every other pixel within
    /// `ε'` of its theoretical value.
    pub fn validate(&self, config: &DefectTestConfig) -> Result<()> {
        config.validate(self.len())?;
        if self.defect_indices.len() > config.max_defects {
            return Err(Error::param(
                "defects",
                format!("{} defects exceed max_defects = {}", self.defect_indices.len(), config.max_defects),
            ));
        }
        let tol = T::CONSTRUCTIVE_TOL;
        for (i, (a, b)) in self
            .theoretical
            .transparencies()
            .iter()
            .zip(self.actual.transparencies())
            .enumerate()
        {
            let distance = (b - a).norm().as_f64();
            if self.defect_indices.contains(&i) {
                if distance < config.epsilon - tol {
                    return Err(Error::param(
                        "defects",
                        format!("pixel {i}: distance {distance} below epsilon {}", config.epsilon),
                    ));
                }
            } else if distance > config.calibration_error + tol {
                return Err(Error::param(
                    "defects",
                    format!("pixel {i} differs by {distance} but is not marked defective"),
                ));
            }
        }
        Ok(())
    }

    /// Moves every non-defective actual transparency by a uniform draw from
    /// the disc of radius `calibration_error`, clipped to the unit disc.
    pub fn with_calibration_drift<R: Rng + ?Sized>(&self, calibration_error: f64, rng: &mut R) -> Result<Self> {
        let mut values = self.actual.transparencies().to_vec();
        for (i, v) in values.iter_mut().enumerate() {
            if self.defect_indices.contains(&i) {
                continue;
            }
            let r = calibration_error * rng.random::<f64>().sqrt();
            let phi = std::f64::consts::TAU * rng.random::<f64>();
            let mut moved = *v + Complex::from_polar(T::lit(r), T::lit(phi));
            let m = moved.norm();
            if m > T::one() {
                moved /= m;
            }
            *v = moved;
        }
        Self::new(self.theoretical.clone(), PixelArray::new(values)?, self.defect_indices.clone())
    }
}

/// Verdict and absorption accounting of one defect test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectTestReport {
    pub defect_found: bool,
    /// Zero-based, in order of identification.
    pub identified_pixels: Vec<usize>,
    /// Quantum: interrogation rounds. Classical: photons fired.
    pub rounds_used: u64,
    pub photons_absorbed: u64,
    pub per_pixel_absorptions: Vec<u64>,
}

impl DefectTestReport {
    fn empty(n: usize) -> Self {
        Self {
            defect_found: false,
            identified_pixels: Vec::new(),
            rounds_used: 0,
            photons_absorbed: 0,
            per_pixel_absorptions: vec![0; n],
        }
    }
}

fn quantum_kernel<T: Real>(scenario: &DefectScenario<T>, active: &[bool]) -> Result<RoundKernel<T>> {
    let probe = PhotonModeState::uniform_over(active)?;
    let reference = build_reference_state(&scenario.theoretical, active)?;
    RoundKernel::new(&probe, &scenario.actual, &reference)
}

/// Quantum defect test.
///
/// Runs up to `ceil(cq · N · ε⁻² · ln(1/δ))` rounds. Each round sends a
/// uniform superposition over the active pixels through the actual array,
/// and if the photon survives projects it onto the reference state built
/// from the theoretical transparencies of the active pixels. The first
/// eigenvalue-zero result sets `defect_found`; every eigenvalue-zero result
/// is followed by a which-beam measurement, and a pixel hit
/// `id_confirmations` times is identified and removed from the active set.
/// The remaining budget is spent on the reduced array. The test stops early
/// once `M` pixels are identified (for `M = 0`, at the first detection) or
/// when no active pixel is left.
pub fn quantum_defect_test<T: Real, R: Rng + ?Sized>(
    scenario: &DefectScenario<T>,
    config: &DefectTestConfig,
    rng: &mut R,
) -> Result<DefectTestReport> {
    config.validate(scenario.len())?;
    let n = scenario.len();
    let budget = required_rounds_quantum(n, config.epsilon, config.delta, config.round_constant)?;
    let mut report = DefectTestReport::empty(n);
    let mut active = vec![true; n];
    let mut hits = vec![0u32; n];
    let mut kernel = quantum_kernel(scenario, &active)?;

    while report.rounds_used < budget {
        report.rounds_used += 1;
        match kernel.sample(rng) {
            RoundOutcome::Absorbed { pixel } => {
                report.photons_absorbed += 1;
                report.per_pixel_absorptions[pixel] += 1;
            }
            RoundOutcome::Consistent => {}
            RoundOutcome::Inconsistent { beam } => {
                report.defect_found = true;
                if config.max_defects == 0 {
                    break;
                }
                hits[beam] += 1;
                if hits[beam] < config.id_confirmations {
                    continue;
                }
                active[beam] = false;
                report.identified_pixels.push(beam);
                if report.identified_pixels.len() >= config.max_defects {
                    break;
                }
                if !active.iter().any(|&a| a) {
                    break;
                }
                kernel = match quantum_kernel(scenario, &active) {
                    Ok(k) => k,
                    // the remaining pixels are all theoretically opaque
                    Err(Error::DegenerateReference) => break,
                    Err(e) => return Err(e),
                };
            }
        }
    }
    Ok(report)
}

/// Classical defect test: each pixel is probed on its own with a
/// Hoeffding-sized batch of photons and flagged when its transmitted
/// fraction deviates from `|α_i|²` by more than `ε_T/2`, where
/// `ε_T = ε · max(min_i |α_i|, ε/2)`.
///
/// The batch size `ceil(ln(2N/δ) / (2(ε_T/2)²))` bounds both the false-flag
/// and the missed-defect probability of each pixel by `δ/N`.
pub fn classical_defect_test<T: Real, R: Rng + ?Sized>(
    scenario: &DefectScenario<T>,
    config: &DefectTestConfig,
    rng: &mut R,
) -> Result<DefectTestReport> {
    config.validate(scenario.len())?;
    let n = scenario.len();
    let min_magnitude = scenario
        .theoretical
        .transparencies()
        .iter()
        .map(|a| a.norm().as_f64())
        .fold(f64::INFINITY, f64::min);
    let half_gap = intensity_margin(config.epsilon, min_magnitude) / 2.0;
    let shots = hoeffding_shots(n, config.delta, half_gap)?;

    let mut report = DefectTestReport::empty(n);
    for i in 0..n {
        let p = scenario.actual.transmission_probability(i).as_f64().clamp(0.0, 1.0);
        let transmitted = Binomial::new(shots, p)
            .map_err(|e| Error::param("transmission", e.to_string()))?
            .sample(rng);
        let absorbed = shots - transmitted;
        report.rounds_used += shots;
        report.photons_absorbed += absorbed;
        report.per_pixel_absorptions[i] = absorbed;

        let expected = scenario.theoretical.transmission_probability(i).as_f64();
        if (transmitted as f64 / shots as f64 - expected).abs() > half_gap {
            report.identified_pixels.push(i);
        }
    }
    report.defect_found = !report.identified_pixels.is_empty();
    Ok(report)
}
