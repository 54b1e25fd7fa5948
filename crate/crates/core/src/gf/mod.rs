//! Small finite fields `GF(p^m)` and towers `GF(q^k)` over them, with dense
//! polynomials on top.

mod field;
pub mod poly;

use thiserror::Error;

pub use field::{extend, make_field, FiniteField, GFElement, MAX_FIELD_SIZE, ZERO_LOG};
pub use poly::GFPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field of size {base}^{degree} exceeds the cap of {MAX_FIELD_SIZE} elements")]
    TooLarge { base: u64, degree: u32 },
    #[error("no irreducible polynomial of degree {0} found")]
    NoIrreducible(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
}
