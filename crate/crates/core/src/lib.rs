pub mod cli;
pub mod error;
pub mod formulas;
pub mod oracle;
pub mod qcalc;
pub mod series;

pub use error::{Error, Result};
