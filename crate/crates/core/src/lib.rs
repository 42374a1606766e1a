pub mod error;
pub mod exact;

pub use error::{Error, Result};
pub use exact::{PiValue, Rational};
pub mod eval;
pub mod series;
pub mod cyclotomic;
pub mod bell;
pub mod index;
pub mod oracle;
pub mod cli;
