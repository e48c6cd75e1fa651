//! Single-photon state vectors, the lossy pixel-array channel and the three
//! ideal measurements used by the interrogation protocols.
//!
//! Every measurement is available twice: as an exact distribution object
//! ([`TransmissionDistribution`], [`ProjectionMeasurement`],
//! [`BeamDistribution`]) that can be sampled repeatedly, and as a one-shot
//! free function. Both consume exactly one uniform draw per sample, so for a
//! fixed random stream they produce identical outcomes.
//!
//! Pixel and beam indices are zero-based throughout the library.

mod array;
mod channel;
mod measure;
mod sampling;
mod state;

pub use array::PixelArray;
pub use channel::{
    sample_transmission, transmission_distribution, ChannelEvent, TransmissionDistribution,
    TransmissionOutcome,
};
pub use measure::{
    measure_projection, measure_which_beam, BeamDistribution, Eigenvalue, ProjectionMeasurement,
};
pub use sampling::Categorical;
pub use state::{overlap_probability, prepare_uniform_superposition, PhotonModeState};

/// Complex amplitude of a transparency or a beam mode.
pub type ComplexAmplitude<T> = num_complex::Complex<T>;
