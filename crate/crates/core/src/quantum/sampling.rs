use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Finite distribution sampled by inversion from one uniform draw.
///
/// Zero-weight outcomes are never returned.
#[derive(Debug, Clone, PartialEq)]
pub struct Categorical<T> {
    cumulative: Vec<T>,
    last_positive: usize,
}

impl<T: Real> Categorical<T> {
    /// Weights need not sum to one but must be non-negative with a positive
    /// total.
    pub fn new<I: IntoIterator<Item = T>>(weights: I) -> Result<Self> {
        let mut cumulative = Vec::new();
        let mut total = T::zero();
        let mut last_positive = None;
        for (i, w) in weights.into_iter().enumerate() {
            if !w.is_finite() || w < T::zero() {
                return Err(Error::param("weights", format!("weight {i} is {w}")));
            }
            if w > T::zero() {
                last_positive = Some(i);
            }
            total += w;
            cumulative.push(total);
        }
        match last_positive {
            Some(last_positive) => Ok(Self { cumulative, last_positive }),
            None => Err(Error::param("weights", "no outcome has positive weight")),
        }
    }

    pub fn len(&self) -> usize {
        self.cumulative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cumulative.is_empty()
    }

    pub fn total(&self) -> T {
        self.cumulative[self.cumulative.len() - 1]
    }

    /// Outcome for a uniform variate `u ∈ [0, 1)`.
    pub fn invert(&self, u: T) -> usize {
        let target = u * self.total();
        let idx = self.cumulative.partition_point(|&c| c <= target);
        idx.min(self.last_positive)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.invert(uniform(rng))
    }
}

/// One uniform draw on `[0, 1)` in the working precision.
pub(crate) fn uniform<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    let u = T::lit(rng.random::<f64>());
    // f32 rounding can land exactly on 1
    if u >= T::one() {
        T::one() - T::epsilon()
    } else {
        u
    }
}
