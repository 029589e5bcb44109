//! Long-wave reductions of the rotating Boussinesq system on a periodic box.

pub mod ansatz;
pub mod boussinesq;
pub mod cli;
pub mod error;
pub mod etd;
pub mod experiments;
pub mod fit;
pub mod regimes;
pub mod scalar;
pub mod snapshot;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
