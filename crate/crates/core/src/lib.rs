//! Simulation and statistical verification of quantum interrogation of
//! semi-transparent pixel arrays.
//!
//! A single photon in a uniform superposition over `N` beams crosses an
//! array of pixels with complex transparencies `α_i`. It is either absorbed
//! at one pixel or emerges in a state `∝ α_i`. Projecting the emerging
//! photon onto the state expected from known transparencies detects
//! deviations while absorbing fewer photons than estimating every pixel
//! separately.
//!
//! * [`quantum`]: states, the lossy channel and ideal measurements, generic
//!   over the [`Real`] scalar.
//! * [`protocols`]: quantum and classical defect tests and rare-pattern
//!   searches.
//! * [`oracle`]: closed-form round probabilities used as ground truth.
//! * [`harness`]: seeded Monte Carlo trials, Wilson intervals, the scaling
//!   sweep.
//! * [`io`] and [`cli`]: scenario files, CSV output, command-line entry
//!   point.

pub mod cli;
pub mod error;
pub mod harness;
pub mod io;
pub mod oracle;
pub mod protocols;
pub mod quantum;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type PixelArray64 = quantum::PixelArray<f64>;
pub type PhotonModeState64 = quantum::PhotonModeState<f64>;
pub type TransmissionOutcome64 = quantum::TransmissionOutcome<f64>;
pub type RoundDistribution64 = oracle::RoundDistribution<f64>;
pub type DefectScenario64 = protocols::DefectScenario<f64>;
pub type RareSearchConfig64 = protocols::RareSearchConfig<f64>;

pub type Complex32 = num_complex::Complex<f32>;
pub type PixelArray32 = quantum::PixelArray<f32>;
pub type PhotonModeState32 = quantum::PhotonModeState<f32>;
