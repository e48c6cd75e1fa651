use num_complex::Complex;
use rand::Rng;

use super::sampling::{uniform, Categorical};
use super::state::{overlap_probability, PhotonModeState};
use crate::error::Result;
use crate::scalar::Real;

/// Outcome of the two-valued projective measurement `P_ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Eigenvalue {
    /// The photon was found in the reference state.
    One,
    /// The photon was found orthogonal to the reference state.
    Zero,
}

/// Projective measurement of a fixed state onto a reference state.
///
/// The eigenvalue-zero post-state is the Gram–Schmidt residual of the state
/// against the reference, renormalized. When the overlap is within the
/// constructive tolerance of one, or the residual norm falls below it, the
/// zero branch is unreachable and eigenvalue one is returned with certainty.
#[derive(Debug, Clone)]
pub struct ProjectionMeasurement<T> {
    p_one: T,
    reference: PhotonModeState<T>,
    complement: Option<PhotonModeState<T>>,
}

impl<T: Real> ProjectionMeasurement<T> {
    pub fn new(state: &PhotonModeState<T>, reference: &PhotonModeState<T>) -> Result<Self> {
        let p_one = overlap_probability(state, reference)?;
        let tol = T::constructive_tol();
        let complement = if p_one >= T::one() - tol {
            None
        } else {
            let coeff = reference.inner(state)?;
            let residual: Vec<Complex<T>> = state
                .amplitudes()
                .iter()
                .zip(reference.amplitudes())
                .map(|(s, r)| s - r * coeff)
                .collect();
            let norm = residual.iter().fold(T::zero(), |acc, x| acc + x.norm_sqr()).sqrt();
            if norm < tol {
                None
            } else {
                Some(PhotonModeState::normalize(residual)?)
            }
        };
        Ok(Self { p_one, reference: reference.clone(), complement })
    }

    /// Probability of eigenvalue one; exactly one if the zero branch is
    /// unreachable.
    pub fn p_one(&self) -> T {
        if self.complement.is_none() {
            T::one()
        } else {
            self.p_one
        }
    }

    pub fn is_certain(&self) -> bool {
        self.complement.is_none()
    }

    pub fn post_state(&self, eigenvalue: Eigenvalue) -> Option<&PhotonModeState<T>> {
        match eigenvalue {
            Eigenvalue::One => Some(&self.reference),
            Eigenvalue::Zero => self.complement.as_ref(),
        }
    }

    /// Consumes one uniform draw, even in the certain case.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Eigenvalue {
        let u: T = uniform(rng);
        if self.complement.is_none() || u < self.p_one {
            Eigenvalue::One
        } else {
            Eigenvalue::Zero
        }
    }
}

pub fn measure_projection<T: Real, R: Rng + ?Sized>(
    state: &PhotonModeState<T>,
    reference: &PhotonModeState<T>,
    rng: &mut R,
) -> Result<(Eigenvalue, PhotonModeState<T>)> {
    let m = ProjectionMeasurement::new(state, reference)?;
    let e = m.sample(rng);
    let post = m.post_state(e).expect("sampled branch has a post-state").clone();
    Ok((e, post))
}

/// Simultaneous measurement of the `N` beam-mode projectors.
#[derive(Debug, Clone)]
pub struct BeamDistribution<T> {
    beams: Categorical<T>,
}

impl<T: Real> BeamDistribution<T> {
    pub fn new(state: &PhotonModeState<T>) -> Result<Self> {
        Ok(Self { beams: Categorical::new(state.probabilities())? })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.beams.sample(rng)
    }
}

/// Beam index `i` with probability `|a_i|²`.
pub fn measure_which_beam<T: Real, R: Rng + ?Sized>(
    state: &PhotonModeState<T>,
    rng: &mut R,
) -> Result<usize> {
    Ok(BeamDistribution::new(state)?.sample(rng))
}
