use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Normalized amplitudes of one photon over `N` beam modes.
///
/// Mode `i` is the beam through (before the array) or behind (after it) pixel
/// `i`. Normalization constants are absorbed at construction, so every value
/// of this type has unit norm up to [`Real::NORM_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonModeState<T> {
    amplitudes: Vec<Complex<T>>,
}

fn norm_sqr<T: Real>(amplitudes: &[Complex<T>]) -> T {
    amplitudes.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr())
}

impl<T: Real> PhotonModeState<T> {
    /// Accepts amplitudes that are already normalized.
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        check_finite(&amplitudes)?;
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let n2 = norm_sqr(&amplitudes);
        if (n2 - T::one()).abs() > T::norm_tol() {
            return Err(Error::NotNormalized { norm_sqr: n2.as_f64() });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalize(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        check_finite(&amplitudes)?;
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let n2 = norm_sqr(&amplitudes);
        if n2 <= T::zero() {
            return Err(Error::ZeroVector);
        }
        // already unit norm: keep the bits so normalization is idempotent
        if (n2 - T::one()).abs() <= T::constructive_tol() {
            return Ok(Self { amplitudes });
        }
        let scale = T::one() / n2.sqrt();
        Ok(Self { amplitudes: amplitudes.into_iter().map(|a| a * scale).collect() })
    }

    /// Basis state `e_index`: the photon is definitely in beam `index`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if index >= n {
            return Err(Error::PixelOutOfRange { index, n });
        }
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); n];
        amplitudes[index] = Complex::new(T::one(), T::zero());
        Ok(Self { amplitudes })
    }

    /// Equal real amplitudes on the pixels where `active` is true, zero
    /// elsewhere.
    pub fn uniform_over(active: &[bool]) -> Result<Self> {
        let count = active.iter().filter(|&&a| a).count();
        if count == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let amp = T::one() / T::lit(count as f64).sqrt();
        let zero = Complex::new(T::zero(), T::zero());
        Ok(Self {
            amplitudes: active
                .iter()
                .map(|&a| if a { Complex::new(amp, T::zero()) } else { zero })
                .collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        norm_sqr(&self.amplitudes)
    }

    /// Born-rule weights `|a_i|²`.
    pub fn probabilities(&self) -> impl Iterator<Item = T> + '_ {
        self.amplitudes.iter().map(|a| a.norm_sqr())
    }

    /// `⟨self|other⟩ = Σ conj(self_i)·other_i`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b))
    }

    /// Multiplies every amplitude by `e^{iθ}`.
    pub fn with_global_phase(&self, theta: T) -> Self {
        let phase = Complex::from_polar(T::one(), theta);
        Self { amplitudes: self.amplitudes.iter().map(|a| a * phase).collect() }
    }
}

fn check_finite<T: Real>(amplitudes: &[Complex<T>]) -> Result<()> {
    match amplitudes.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Equal-weight superposition `N^{-1/2} Σ_i |γ_in^i⟩` over all `n` beams.
pub fn prepare_uniform_superposition<T: Real>(n: usize) -> Result<PhotonModeState<T>> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    PhotonModeState::uniform_over(&vec![true; n])
}

/// `|⟨reference|state⟩|²`, clamped to `[0, 1]`. Symmetric in its arguments.
pub fn overlap_probability<T: Real>(
    state: &PhotonModeState<T>,
    reference: &PhotonModeState<T>,
) -> Result<T> {
    let amp = reference.inner(state)?;
    Ok(amp.norm_sqr().max(T::zero()).min(T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn uniform_superposition_examples() {
        let s = prepare_uniform_superposition::<f64>(1).unwrap();
        assert_eq!(s.amplitudes(), &[c(1.0, 0.0)]);

        let s = prepare_uniform_superposition::<f64>(4).unwrap();
        for a in s.amplitudes() {
            assert_eq!(*a, c(0.5, 0.0));
        }

        let s = prepare_uniform_superposition::<f64>(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for a in s.amplitudes() {
            assert_abs_diff_eq!(a.re, h, epsilon = 1e-15);
            assert_eq!(a.im, 0.0);
        }
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-15);

        assert_eq!(prepare_uniform_superposition::<f64>(0), Err(Error::InvalidDimension(0)));
    }

    #[test]
    fn uniform_superposition_f32() {
        let s = prepare_uniform_superposition::<f32>(4).unwrap();
        assert!(s.amplitudes().iter().all(|a| (a.re - 0.5).abs() < 1e-7));
    }

    #[test]
    fn overlap_examples() {
        let r = prepare_uniform_superposition::<f64>(2).unwrap();
        assert_abs_diff_eq!(overlap_probability(&r, &r).unwrap(), 1.0, epsilon = 1e-15);

        let e1 = PhotonModeState::<f64>::basis(2, 0).unwrap();
        let e2 = PhotonModeState::<f64>::basis(2, 1).unwrap();
        assert_eq!(overlap_probability(&e1, &e2).unwrap(), 0.0);

        let s = PhotonModeState::normalize(vec![c(2.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(overlap_probability(&s, &r).unwrap(), 0.9, epsilon = 1e-15);
        assert_abs_diff_eq!(overlap_probability(&r, &s).unwrap(), 0.9, epsilon = 1e-15);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            PhotonModeState::new(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized { .. })
        ));
        assert_eq!(PhotonModeState::<f64>::normalize(vec![c(0.0, 0.0)]), Err(Error::ZeroVector));
        assert_eq!(PhotonModeState::<f64>::basis(4, 4), Err(Error::PixelOutOfRange { index: 4, n: 4 }));
        let a = PhotonModeState::<f64>::basis(2, 0).unwrap();
        let b = PhotonModeState::<f64>::basis(3, 0).unwrap();
        assert_eq!(
            overlap_probability(&a, &b),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn uniform_over_mask() {
        let s = PhotonModeState::<f64>::uniform_over(&[true, false, true, true]).unwrap();
        let p: Vec<f64> = s.probabilities().collect();
        assert_abs_diff_eq!(p[0], 1.0 / 3.0, epsilon = 1e-15);
        assert_eq!(p[1], 0.0);
        assert!(PhotonModeState::<f64>::uniform_over(&[false, false]).is_err());
    }
}
