//! Exact computer algebra over amalgamated ring constructions.
//!
//! The crate models rings as closed descriptor trees — integers,
//! rationals, polynomials, truncated series, `A + xK[[x]]` rings,
//! overrings, products, amalgamations `{(a, f(a)+j)}` and amalgamated
//! duplications — with exact elements, certified gcds witnessed by
//! re-checkable certificates, Hermite triangularization, Smith-style
//! diagonalization with componentwise / projection / denominator-clearing
//! transport, a theorem-case classifier over declared flags, and a
//! randomized falsifier that hunts for violations of those declarations.

pub mod amalgam;
pub mod arith;
pub mod certificate;
pub mod classify;
pub mod descriptor;
pub mod dplusm;
pub mod error;
pub mod euclid;
pub mod falsify;
pub mod gcd;
pub mod ideal;
pub mod matrix;
pub mod ops;
pub mod overring;
pub mod poly;
pub mod sample;
pub mod series;
pub mod suite;
pub mod value;

pub use certificate::{GcdCertificate, VerificationReport};
pub use classify::{Classification, Verdict};
pub use descriptor::{HomDescriptor, HomKind, IdealDescriptor, RingDescriptor, RingFlag, RingKind};
pub use error::{Result, RingError};
pub use matrix::{Matrix, SnfResult};
pub use series::SeriesValue;
pub use value::{EqOutcome, Payload, RingValue};
