//! Closed-form outcome probabilities of an interrogation round.
//!
//! These routines never sample a photon. They work on the unnormalized
//! transmitted vector `v_i = α'_i / √N` of a uniform probe and split its
//! squared norm into the part along the reference direction `α / |α|` and
//! the orthogonal residual. That route is separate from the normalize /
//! overlap / Gram–Schmidt chain in [`crate::quantum`], so each can check
//! the other.

use std::collections::BTreeSet;

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::protocols::sample_random_array;
use crate::quantum::PixelArray;
use crate::scalar::Real;

/// Exact outcome probabilities of one round with a uniform probe over all
/// `N` pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundDistribution<T> {
    /// Photon absorbed at pixel `i`.
    pub p_absorb: Vec<T>,
    /// Photon survived and projected onto the reference state.
    pub p_survive_proj1: T,
    /// Photon survived, failed the projection, and was found in beam `i`.
    pub p_survive_proj0_beam: Vec<T>,
}

impl<T: Real> RoundDistribution<T> {
    pub fn total(&self) -> T {
        self.p_absorb.iter().copied().fold(T::zero(), |a, b| a + b)
            + self.p_survive_proj1
            + self.p_survive_proj0()
    }

    pub fn p_survive(&self) -> T {
        self.p_survive_proj1 + self.p_survive_proj0()
    }

    /// Total eigenvalue-zero mass.
    pub fn p_survive_proj0(&self) -> T {
        self.p_survive_proj0_beam.iter().copied().fold(T::zero(), |a, b| a + b)
    }

    pub fn n(&self) -> usize {
        self.p_absorb.len()
    }

    /// All `2N + 1` outcome probabilities: absorptions, then the
    /// consistent outcome, then the beam outcomes.
    pub fn outcomes(&self) -> Vec<T> {
        let mut all = self.p_absorb.clone();
        all.push(self.p_survive_proj1);
        all.extend_from_slice(&self.p_survive_proj0_beam);
        all
    }
}

fn check_pair<T: Real>(theoretical: &PixelArray<T>, actual: &PixelArray<T>) -> Result<()> {
    if theoretical.len() != actual.len() {
        return Err(Error::DimensionMismatch { expected: theoretical.len(), found: actual.len() });
    }
    Ok(())
}

pub fn exact_round_distribution<T: Real>(
    theoretical: &PixelArray<T>,
    actual: &PixelArray<T>,
) -> Result<RoundDistribution<T>> {
    check_pair(theoretical, actual)?;
    let n = T::lit(theoretical.len() as f64);
    let inv_n = T::one() / n;
    let scale = inv_n.sqrt();

    let ref_norm = theoretical
        .transparencies()
        .iter()
        .fold(T::zero(), |acc, a| acc + a.norm_sqr())
        .sqrt();
    if ref_norm <= T::zero() {
        return Err(Error::DegenerateReference);
    }
    let direction: Vec<Complex<T>> =
        theoretical.transparencies().iter().map(|a| a / ref_norm).collect();
    let transmitted: Vec<Complex<T>> =
        actual.transparencies().iter().map(|a| a * scale).collect();

    // component of v along the reference direction
    let along = direction
        .iter()
        .zip(&transmitted)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (d, v)| acc + d.conj() * v);

    let p_absorb = (0..actual.len()).map(|i| actual.absorption_probability(i) * inv_n).collect();
    let p_survive_proj0_beam =
        transmitted.iter().zip(&direction).map(|(v, d)| (v - d * along).norm_sqr()).collect();
    Ok(RoundDistribution { p_absorb, p_survive_proj1: along.norm_sqr(), p_survive_proj0_beam })
}

/// `1 - (1/N) Σ |α'_i|²`.
pub fn exact_expected_absorptions_per_round<T: Real>(actual: &PixelArray<T>) -> T {
    let n = T::lit(actual.len() as f64);
    let transmitted = actual.transparencies().iter().fold(T::zero(), |acc, a| acc + a.norm_sqr());
    T::one() - transmitted / n
}

/// Probability that the which-beam result after an eigenvalue-zero outcome
/// points at a good pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct MisIdProfile<T> {
    pub n: usize,
    /// `(index, theoretical, actual)` for every defective pixel.
    pub defects: Vec<(usize, Complex<T>, Complex<T>)>,
    pub p_misid: T,
}

pub fn exact_misidentification_probability<T: Real>(
    theoretical: &PixelArray<T>,
    actual: &PixelArray<T>,
    defect_indices: &BTreeSet<usize>,
) -> Result<MisIdProfile<T>> {
    check_pair(theoretical, actual)?;
    let n = theoretical.len();
    if let Some(&index) = defect_indices.iter().find(|&&i| i >= n) {
        return Err(Error::PixelOutOfRange { index, n });
    }
    for (i, (a, b)) in theoretical.transparencies().iter().zip(actual.transparencies()).enumerate() {
        if defect_indices.contains(&i) == (a == b) {
            return Err(Error::param(
                "defect_indices",
                format!("pixel {i} does not match the declared defect set"),
            ));
        }
    }
    let dist = exact_round_distribution(theoretical, actual)?;
    let total = dist.p_survive_proj0();
    if total <= T::constructive_tol() {
        return Err(Error::UndefinedConditional);
    }
    let good = dist
        .p_survive_proj0_beam
        .iter()
        .enumerate()
        .filter(|(i, _)| !defect_indices.contains(i))
        .fold(T::zero(), |acc, (_, &p)| acc + p);
    let defects = defect_indices
        .iter()
        .map(|&i| (i, theoretical.transparencies()[i], actual.transparencies()[i]))
        .collect();
    Ok(MisIdProfile { n, defects, p_misid: (good / total).min(T::one()) })
}

/// Exact squared overlap between the conditioned output of a uniform probe
/// through `actual` and the pattern state, or `None` if `actual` is opaque.
pub fn exact_pattern_overlap<T: Real>(actual: &PixelArray<T>, pattern: &PixelArray<T>) -> Result<Option<T>> {
    check_pair(pattern, actual)?;
    let norm_a = actual.transparencies().iter().fold(T::zero(), |acc, a| acc + a.norm_sqr());
    let norm_p = pattern.transparencies().iter().fold(T::zero(), |acc, a| acc + a.norm_sqr());
    if norm_p <= T::zero() {
        return Err(Error::DegenerateReference);
    }
    if norm_a <= T::zero() {
        return Ok(None);
    }
    let inner = pattern
        .transparencies()
        .iter()
        .zip(actual.transparencies())
        .fold(Complex::new(T::zero(), T::zero()), |acc, (p, a)| acc + p.conj() * a);
    Ok(Some((inner.norm_sqr() / (norm_a * norm_p)).min(T::one())))
}

/// Probability that the quantum rare search accepts `actual`: absorbed
/// rounds are discarded, so it is `overlap^x`.
pub fn exact_false_accept_probability<T: Real>(
    actual: &PixelArray<T>,
    pattern: &PixelArray<T>,
    successes: u64,
) -> Result<T> {
    Ok(exact_pattern_overlap(actual, pattern)?
        .map_or(T::zero(), |q| q.powi(successes.min(i32::MAX as u64) as i32)))
}

/// Fraction of uniformly random arrays whose conditioned output state has
/// squared overlap strictly greater than `1/√n` with the pattern state.
/// Only the arrays are sampled; each overlap is exact.
pub fn exact_overlap_tail<T: Real, R: Rng + ?Sized>(
    n: usize,
    pattern: &PixelArray<T>,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    if pattern.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: pattern.len() });
    }
    if samples == 0 {
        return Err(Error::param("samples", "must be at least 1"));
    }
    let threshold = T::one() / T::lit(n as f64).sqrt();
    let mut exceed = 0usize;
    for _ in 0..samples {
        let array = sample_random_array::<T, R>(n, rng)?;
        if matches!(exact_pattern_overlap(&array, pattern)?, Some(q) if q > threshold) {
            exceed += 1;
        }
    }
    Ok(exceed as f64 / samples as f64)
}
