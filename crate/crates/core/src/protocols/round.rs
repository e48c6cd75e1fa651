use rand::Rng;

use crate::error::Result;
use crate::quantum::{
    measure_projection, measure_which_beam, sample_transmission, BeamDistribution, ChannelEvent,
    Eigenvalue, PhotonModeState, PixelArray, ProjectionMeasurement, TransmissionDistribution,
    TransmissionOutcome,
};
use crate::scalar::Real;

/// What one interrogation round reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RoundOutcome {
    /// Photon absorbed at `pixel`; nothing else is measured.
    Absorbed { pixel: usize },
    /// Photon survived and was found in the reference state.
    Consistent,
    /// Photon survived, failed the reference projection, and the which-beam
    /// measurement then found it in `beam`.
    Inconsistent { beam: usize },
}

/// Precomputed measurement chain for repeated rounds with a fixed probe,
/// actual array and reference state.
///
/// Sampling draws the same three uniforms, in the same order, as
/// [`interrogation_round`], so the two agree outcome for outcome on a shared
/// random stream.
#[derive(Debug, Clone)]
pub struct RoundKernel<T> {
    transmission: TransmissionDistribution<T>,
    projection: Option<ProjectionMeasurement<T>>,
    beams: Option<BeamDistribution<T>>,
}

impl<T: Real> RoundKernel<T> {
    pub fn new(
        probe: &PhotonModeState<T>,
        actual: &PixelArray<T>,
        reference: &PhotonModeState<T>,
    ) -> Result<Self> {
        let transmission = TransmissionDistribution::new(probe, actual)?;
        let projection = transmission
            .conditioned_state()
            .map(|s| ProjectionMeasurement::new(s, reference))
            .transpose()?;
        let beams = projection
            .as_ref()
            .and_then(|p| p.post_state(Eigenvalue::Zero))
            .map(BeamDistribution::new)
            .transpose()?;
        Ok(Self { transmission, projection, beams })
    }

    pub fn transmission(&self) -> &TransmissionDistribution<T> {
        &self.transmission
    }

    pub fn projection(&self) -> Option<&ProjectionMeasurement<T>> {
        self.projection.as_ref()
    }

    /// True when no round can ever end in [`RoundOutcome::Inconsistent`].
    pub fn is_sound(&self) -> bool {
        self.beams.is_none()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> RoundOutcome {
        match self.transmission.sample_event(rng) {
            ChannelEvent::Absorbed { pixel } => RoundOutcome::Absorbed { pixel },
            ChannelEvent::Transmitted => {
                let projection = self.projection.as_ref().expect("survival implies a projection");
                match projection.sample(rng) {
                    Eigenvalue::One => RoundOutcome::Consistent,
                    Eigenvalue::Zero => RoundOutcome::Inconsistent {
                        beam: self.beams.as_ref().expect("zero branch reachable").sample(rng),
                    },
                }
            }
        }
    }
}

/// One round built directly from the single-shot measurement functions.
pub fn interrogation_round<T: Real, R: Rng + ?Sized>(
    probe: &PhotonModeState<T>,
    actual: &PixelArray<T>,
    reference: &PhotonModeState<T>,
    rng: &mut R,
) -> Result<RoundOutcome> {
    let state = match sample_transmission(probe, actual, rng)? {
        TransmissionOutcome::Absorbed { pixel } => return Ok(RoundOutcome::Absorbed { pixel }),
        TransmissionOutcome::Transmitted(state) => state,
    };
    Ok(match measure_projection(&state, reference, rng)? {
        (Eigenvalue::One, _) => RoundOutcome::Consistent,
        (Eigenvalue::Zero, post) => RoundOutcome::Inconsistent { beam: measure_which_beam(&post, rng)? },
    })
}
