//! Kähler–Einstein and Bergman structures of Hartogs domains over the six families of
//! irreducible bounded symmetric domains.

// negated float comparisons are used on purpose so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod bergman;
pub mod domains;
pub mod exact;
pub mod exceptional;
pub mod kemetric;
pub mod numerics;
pub mod octonion;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{Rational, RationalPoly};
pub use octonion::ComplexOctonion;
pub use domains::{make_descriptor, DomainDescriptor, Family};
