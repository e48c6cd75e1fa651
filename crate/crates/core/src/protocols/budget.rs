use crate::error::{Error, Result};

/// `ceil` that ignores floating-point overshoot below `1e-9`, so that exact
/// integer thresholds computed through logarithms are not bumped up by one.
pub(crate) fn ceil_tol(x: f64) -> u64 {
    (x - 1e-9).ceil().max(0.0) as u64
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 2.0 {
        Ok(())
    } else {
        Err(Error::param("epsilon", format!("{epsilon} not in (0, 2]")))
    }
}

fn check_probability(name: &'static str, p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("{p} not in (0, 1)")))
    }
}

/// Quantum round budget `ceil(cq · n · ε⁻² · ln(1/δ))`.
///
/// `delta = 1` is accepted as the boundary of the admissible range and
/// yields zero rounds.
pub fn required_rounds_quantum(n: usize, epsilon: f64, delta: f64, cq: f64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    check_epsilon(epsilon)?;
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::param("delta", format!("{delta} not in (0, 1)")));
    }
    if !(cq > 0.0 && cq.is_finite()) {
        return Err(Error::param("cq", format!("{cq} must be positive")));
    }
    Ok(ceil_tol(cq * n as f64 * (-delta.ln()) / (epsilon * epsilon)))
}

/// Hoeffding sample size `ceil(ln(2n/δ) / (2·margin²))`: with that many
/// Bernoulli shots per pixel, each of the `n` estimates deviates from its
/// mean by more than `margin` with probability at most `δ/n`.
pub fn hoeffding_shots(n: usize, delta: f64, margin: f64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    check_probability("delta", delta)?;
    if !(margin > 0.0 && margin.is_finite()) {
        return Err(Error::param("margin", format!("{margin} must be positive")));
    }
    Ok(ceil_tol((2.0 * n as f64 / delta).ln() / (2.0 * margin * margin)))
}

/// Intensity gap `ε_T = ε · max(min_i |α_i|, ε/2)` guaranteed by an
/// amplitude gap `ε` on a pixel whose magnitude changes.
pub fn intensity_margin(epsilon: f64, min_magnitude: f64) -> f64 {
    epsilon * min_magnitude.max(epsilon / 2.0)
}

/// Smallest `x ≥ 1` with `(1/√n)^x ≤ δp`.
pub fn required_successes(n: usize, delta: f64, prior_p: f64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    check_probability("delta", delta)?;
    check_probability("prior_p", prior_p)?;
    let target = delta * prior_p;
    if n == 1 {
        // a single pixel carries no information beyond survival
        return Err(Error::param("n", "rare-pattern search needs at least two pixels"));
    }
    if target >= 1.0 {
        return Ok(1);
    }
    let per_success = -0.5 * (n as f64).ln();
    Ok(ceil_tol(target.ln() / per_success).max(1))
}

/// Order-of-magnitude success count `max(-ln(δp)/ln n, 1)`, kept for
/// comparison with [`required_successes`], which uses the exact threshold.
pub fn asymptotic_successes(n: usize, delta: f64, prior_p: f64) -> f64 {
    (-(delta * prior_p).ln() / (n as f64).ln()).max(1.0)
}

/// Pixel count, amplitude tolerance and per-pixel shots of the classical
/// rare-pattern test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalRarePlan {
    pub pixels: usize,
    pub tolerance: f64,
    pub shots_per_pixel: u64,
}

/// Minimizes `r·ε⁻²` subject to `ε^r = δp`: the stationary point is
/// `ε = e^{-1/2}`, giving `r = ceil(-2 ln(δp))`. If that exceeds `n`, all
/// pixels are tested with the tighter tolerance `(δp)^{1/n}`.
pub fn classical_rare_plan(n: usize, delta: f64, prior_p: f64) -> Result<ClassicalRarePlan> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    check_probability("delta", delta)?;
    check_probability("prior_p", prior_p)?;
    let log_target = (delta * prior_p).ln();
    let tolerance = (-0.5f64).exp();
    let pixels = ceil_tol(log_target / tolerance.ln()).max(1) as usize;
    let (pixels, tolerance) = if pixels > n {
        (n, (log_target / n as f64).exp())
    } else {
        (pixels, tolerance)
    };
    Ok(ClassicalRarePlan {
        pixels,
        tolerance,
        shots_per_pixel: ceil_tol(1.0 / (tolerance * tolerance)).max(1),
    })
}
