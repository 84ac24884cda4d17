pub mod asymptotics;
pub mod engine;
pub mod error;
pub mod geometries;
pub mod model;
pub mod scattering;
pub mod specfun;
pub mod stability;
pub mod translation;

pub use error::{CasimirError, Result};
