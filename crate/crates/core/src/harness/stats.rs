use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

use crate::error::{Error, Result};

fn two_sided_z(confidence: f64) -> Result<f64> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::param("confidence", format!("{confidence} not in (0, 1)")));
    }
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    Ok(normal.inverse_cdf(0.5 + confidence / 2.0))
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, confidence: f64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::param("trials", "must be at least 1"));
    }
    if successes > trials {
        return Err(Error::param("successes", format!("{successes} exceeds {trials} trials")));
    }
    let z = two_sided_z(confidence)?;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let low = if successes == 0 { 0.0 } else { (center - half).clamp(0.0, p) };
    let high = if successes == trials { 1.0 } else { (center + half).clamp(p, 1.0) };
    Ok((low, high))
}

/// Integer accumulators of a batch of trials. Merging is exact, so any
/// partition of the trials yields the same totals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TrialTally {
    pub trials: u64,
    pub successes: u64,
    pub absorptions: u64,
    pub absorptions_sq: u128,
    pub rounds: u64,
}

impl TrialTally {
    pub fn record(&mut self, success: bool, absorptions: u64, rounds: u64) {
        self.trials += 1;
        self.successes += success as u64;
        self.absorptions += absorptions;
        self.absorptions_sq += absorptions as u128 * absorptions as u128;
        self.rounds += rounds;
    }

    pub fn merge(self, other: Self) -> Self {
        Self {
            trials: self.trials + other.trials,
            successes: self.successes + other.successes,
            absorptions: self.absorptions + other.absorptions,
            absorptions_sq: self.absorptions_sq + other.absorptions_sq,
            rounds: self.rounds + other.rounds,
        }
    }

    pub fn stats(&self, confidence: f64) -> Result<TrialStats> {
        let (ci_low, ci_high) = wilson_interval(self.successes, self.trials, confidence)?;
        let n = self.trials as f64;
        let mean = self.absorptions as f64 / n;
        let absorption_ci = if self.trials > 1 {
            let var = ((self.absorptions_sq as f64 - n * mean * mean) / (n - 1.0)).max(0.0);
            let half = two_sided_z(confidence)? * (var / n).sqrt();
            ((mean - half).max(0.0), mean + half)
        } else {
            (mean, mean)
        };
        Ok(TrialStats {
            trials: self.trials,
            successes: self.successes,
            point_estimate: self.successes as f64 / n,
            ci_low,
            ci_high,
            confidence,
            mean_absorptions: mean,
            absorption_ci,
            mean_rounds: self.rounds as f64 / n,
        })
    }
}

/// Success rate with its Wilson interval and mean absorptions per trial
/// with a normal-approximation interval.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialStats {
    pub trials: u64,
    pub successes: u64,
    pub point_estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence: f64,
    pub mean_absorptions: f64,
    pub absorption_ci: (f64, f64),
    pub mean_rounds: f64,
}

/// Ordinary least squares `y = intercept + slope·x`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    /// Two-sided Student-t interval on the slope.
    pub slope_ci: (f64, f64),
}

pub fn fit_line(xs: &[f64], ys: &[f64], confidence: f64) -> Result<LinearFit> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch { expected: xs.len(), found: ys.len() });
    }
    let n = xs.len();
    if n < 3 {
        return Err(Error::param("points", "a slope interval needs at least three points"));
    }
    two_sided_z(confidence)?;
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::param("xs", "abscissae are all equal"));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let slope_stderr = (sse / (nf - 2.0) / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, nf - 2.0)
        .map_err(|e| Error::param("points", e.to_string()))?
        .inverse_cdf(0.5 + confidence / 2.0);
    Ok(LinearFit {
        slope,
        intercept,
        slope_stderr,
        slope_ci: (slope - t * slope_stderr, slope + t * slope_stderr),
    })
}
