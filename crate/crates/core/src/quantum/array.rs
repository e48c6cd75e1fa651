use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Complex per-pixel transparencies `α_i` of an `N`-pixel object.
///
/// A photon entering pixel `i` leaves with amplitude `α_i` and is absorbed
/// with probability `1 - |α_i|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct PixelArray<T> {
    transparencies: Vec<Complex<T>>,
}

impl<T: Real> PixelArray<T> {
    /// Validates `N ≥ 1`, finiteness and `|α_i| ≤ 1` (up to the constructive
    /// tolerance).
    pub fn new(transparencies: Vec<Complex<T>>) -> Result<Self> {
        if transparencies.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        for (index, a) in transparencies.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::NonFinite { index });
            }
            let magnitude = a.norm();
            if magnitude > T::one() + T::constructive_tol() {
                return Err(Error::TransparencyOutOfRange { index, magnitude: magnitude.as_f64() });
            }
        }
        Ok(Self { transparencies })
    }

    /// Every pixel set to the same transparency.
    pub fn uniform(n: usize, value: Complex<T>) -> Result<Self> {
        Self::new(vec![value; n])
    }

    /// Real, non-negative transparencies.
    pub fn from_real(values: &[T]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex::new(v, T::zero())).collect())
    }

    pub fn len(&self) -> usize {
        self.transparencies.len()
    }

    /// Always false: an array has at least one pixel.
    pub fn is_empty(&self) -> bool {
        self.transparencies.is_empty()
    }

    pub fn transparencies(&self) -> &[Complex<T>] {
        &self.transparencies
    }

    pub fn get(&self, index: usize) -> Option<Complex<T>> {
        self.transparencies.get(index).copied()
    }

    /// `|β_i|² = 1 - |α_i|²`, clamped at zero.
    pub fn absorption_probability(&self, index: usize) -> T {
        (T::one() - self.transparencies[index].norm_sqr()).max(T::zero())
    }

    /// `|α_i|²`.
    pub fn transmission_probability(&self, index: usize) -> T {
        self.transparencies[index].norm_sqr().min(T::one())
    }

    /// Copy of the array with pixel `index` replaced.
    pub fn with_pixel(&self, index: usize, value: Complex<T>) -> Result<Self> {
        if index >= self.len() {
            return Err(Error::PixelOutOfRange { index, n: self.len() });
        }
        let mut transparencies = self.transparencies.clone();
        transparencies[index] = value;
        Self::new(transparencies)
    }

    pub fn into_inner(self) -> Vec<Complex<T>> {
        self.transparencies
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_supraunitary() {
        assert_eq!(PixelArray::<f64>::new(vec![]), Err(Error::InvalidDimension(0)));
        let err = PixelArray::from_real(&[0.5, 1.01]).unwrap_err();
        assert!(matches!(err, Error::TransparencyOutOfRange { index: 1, .. }));
        // within tolerance
        assert!(PixelArray::from_real(&[1.0 + 1e-13]).is_ok());
        assert!(matches!(
            PixelArray::from_real(&[f64::NAN]),
            Err(Error::NonFinite { index: 0 })
        ));
    }

    #[test]
    fn absorption_complements_transmission() {
        let a: PixelArray<f64> = PixelArray::new(vec![Complex::new(0.6, 0.0), Complex::new(0.0, 0.8), Complex::new(0.3, 0.4)])
            .unwrap();
        for i in 0..a.len() {
            let total = a.absorption_probability(i) + a.transmission_probability(i);
            assert!((total - 1.0).abs() < 1e-15);
        }
        assert!((a.absorption_probability(2) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn with_pixel_checks_range() {
        let a = PixelArray::<f64>::from_real(&[1.0, 1.0]).unwrap();
        assert!(a.with_pixel(2, Complex::new(0.5, 0.0)).is_err());
        let b = a.with_pixel(1, Complex::new(0.5, 0.0)).unwrap();
        assert_eq!(b.get(1), Some(Complex::new(0.5, 0.0)));
    }
}
