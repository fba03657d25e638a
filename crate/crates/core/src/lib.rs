pub mod basis;
pub mod checks;
pub mod cli;
pub mod decomposition;
pub mod dirac;
pub mod elko;
pub mod error;
pub mod higher_spin;
pub mod kinematics;
pub mod linalg;
pub mod lorentz;

pub use error::{Error, Result};
