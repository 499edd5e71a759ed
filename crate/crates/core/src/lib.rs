pub mod certificate;
pub mod cli;
pub mod error;
pub mod frontend;
pub mod nullstellensatz;
pub mod poly;
pub mod reduction;

pub use error::{Error, Result};
pub use nullstellensatz::{NotFound, Outcome};
