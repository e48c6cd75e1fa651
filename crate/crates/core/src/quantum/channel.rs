use num_complex::Complex;
use rand::Rng;

use super::array::PixelArray;
use super::sampling::Categorical;
use super::state::{check_dims, PhotonModeState};
use crate::error::Result;
use crate::scalar::Real;

/// Result of one photon passing the array.
#[derive(Debug, Clone, PartialEq)]
pub enum TransmissionOutcome<T> {
    /// The photon excited pixel `pixel`.
    Absorbed { pixel: usize },
    /// The photon emerged; the state is conditioned on survival.
    Transmitted(PhotonModeState<T>),
}

/// [`TransmissionOutcome`] without the conditioned state attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelEvent {
    Absorbed { pixel: usize },
    Transmitted,
}

/// Exact outcome distribution of a single pass through the array.
///
/// Outcome probabilities are `|a_i|²(1 - |α_i|²)` for absorption at pixel
/// `i` and `Σ|a_i α_i|²` for survival. The surviving photon is left in the
/// normalized state `∝ a_i α_i`.
#[derive(Debug, Clone)]
pub struct TransmissionDistribution<T> {
    p_absorb: Vec<T>,
    p_survive: T,
    conditioned: Option<PhotonModeState<T>>,
    // outcome 0 = transmitted, outcome i + 1 = absorbed at pixel i
    outcomes: Categorical<T>,
}

impl<T: Real> TransmissionDistribution<T> {
    pub fn new(state: &PhotonModeState<T>, array: &PixelArray<T>) -> Result<Self> {
        check_dims(array.len(), state.dim())?;
        let transmitted: Vec<Complex<T>> = state
            .amplitudes()
            .iter()
            .zip(array.transparencies())
            .map(|(a, alpha)| a * alpha)
            .collect();
        let p_absorb: Vec<T> = state
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(i, a)| a.norm_sqr() * array.absorption_probability(i))
            .collect();
        let p_survive = transmitted.iter().fold(T::zero(), |acc, t| acc + t.norm_sqr());
        let conditioned = if p_survive > T::zero() {
            Some(PhotonModeState::normalize(transmitted)?)
        } else {
            None
        };
        let outcomes =
            Categorical::new(std::iter::once(p_survive).chain(p_absorb.iter().copied()))?;
        Ok(Self { p_absorb, p_survive, conditioned, outcomes })
    }

    pub fn p_absorb(&self) -> &[T] {
        &self.p_absorb
    }

    pub fn p_survive(&self) -> T {
        self.p_survive
    }

    /// `None` exactly when `p_survive` is zero.
    pub fn conditioned_state(&self) -> Option<&PhotonModeState<T>> {
        self.conditioned.as_ref()
    }

    /// One categorical draw over the `N + 1` outcomes.
    pub fn sample_event<R: Rng + ?Sized>(&self, rng: &mut R) -> ChannelEvent {
        match self.outcomes.sample(rng) {
            0 => ChannelEvent::Transmitted,
            k => ChannelEvent::Absorbed { pixel: k - 1 },
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> TransmissionOutcome<T> {
        match self.sample_event(rng) {
            ChannelEvent::Absorbed { pixel } => TransmissionOutcome::Absorbed { pixel },
            ChannelEvent::Transmitted => TransmissionOutcome::Transmitted(
                self.conditioned.clone().expect("transmission sampled with zero survival"),
            ),
        }
    }
}

pub fn transmission_distribution<T: Real>(
    state: &PhotonModeState<T>,
    array: &PixelArray<T>,
) -> Result<TransmissionDistribution<T>> {
    TransmissionDistribution::new(state, array)
}

pub fn sample_transmission<T: Real, R: Rng + ?Sized>(
    state: &PhotonModeState<T>,
    array: &PixelArray<T>,
    rng: &mut R,
) -> Result<TransmissionOutcome<T>> {
    Ok(TransmissionDistribution::new(state, array)?.sample(rng))
}
