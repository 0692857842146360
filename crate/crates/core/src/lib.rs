pub mod apolarity;
pub mod artinian;
pub mod betti;
pub mod checks;
pub mod error;
pub mod field;
pub mod linalg;
pub mod points;
pub mod reference;
pub mod ring;
pub mod rng;
pub mod strata;
pub mod tangent;
pub mod univariate;

pub use error::{Error, Result};
pub use field::PrimeField;
