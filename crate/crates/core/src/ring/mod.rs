//! Graded polynomial rings, forms, ideals and quotients.

pub mod form;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod quotient;

pub use form::{Form, Ring};
pub use ideal::{GradedIdeal, HilbertFunction};
pub use monomial::{monomial_basis, Monomial, MonomialBasis};
pub use parse::{parse_dual_coeffs, parse_form, parse_ideal};
pub use quotient::GradedQuotient;
