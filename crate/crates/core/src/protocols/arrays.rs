use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::quantum::{PhotonModeState, PixelArray};
use crate::scalar::Real;

/// Output state the array would produce if every active pixel had the
/// transparencies in `array`: amplitudes `∝ α_i` on active pixels, zero
/// elsewhere.
pub fn build_reference_state<T: Real>(
    array: &PixelArray<T>,
    active: &[bool],
) -> Result<PhotonModeState<T>> {
    if active.len() != array.len() {
        return Err(Error::DimensionMismatch { expected: array.len(), found: active.len() });
    }
    if !active.iter().any(|&a| a) {
        return Err(Error::InvalidDimension(0));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let amplitudes: Vec<_> = array
        .transparencies()
        .iter()
        .zip(active)
        .map(|(&alpha, &on)| if on { alpha } else { zero })
        .collect();
    PhotonModeState::normalize(amplitudes).map_err(|e| match e {
        Error::ZeroVector => Error::DegenerateReference,
        other => other,
    })
}

/// I.i.d. transparencies uniform on the closed unit disc: radius `√u`, angle
/// `2πv`.
pub fn sample_random_array<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PixelArray<T>> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let values = (0..n)
        .map(|_| {
            let radius = rng.random::<f64>().sqrt();
            let angle = std::f64::consts::TAU * rng.random::<f64>();
            Complex::from_polar(T::lit(radius), T::lit(angle))
        })
        .collect();
    PixelArray::new(values)
}
