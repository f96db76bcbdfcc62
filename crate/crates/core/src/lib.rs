pub mod complex;
pub mod error;
pub mod precision;
pub mod quadrature;
pub mod report;
pub mod special;
pub mod sweep;
pub mod zeros;

pub use complex::{Complex, ComplexValue};
pub use error::{Error, Result};
pub use precision::PrecisionContext;
