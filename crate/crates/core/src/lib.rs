pub mod checks;
pub mod cli;
pub mod datasets;
pub mod error;
pub mod fields3d;
pub mod moyal;
pub mod numerics;
pub mod schrodinger;
pub mod transform;
pub mod wavefields;
pub mod wigner;

pub use error::{Error, Result};
