//! Counting and sampling incidence matrices: zero-one matrices with no zero
//! row or column.
//!
//! * [`exact`] and [`stirling`]: big-integer primitives and Stirling tables
//! * [`enumeration`]: exact `m_kl(n)` and `F(n)` by several independent routes
//! * [`asymptotics`] and [`saddle`]: leading-order estimates in log space
//! * [`sampler`]: uniform random incidence matrices by preorder-pair rejection
//! * [`verify`]: the self-check run by `incmat verify`

pub mod asymptotics;
pub mod enumeration;
pub mod error;
pub mod exact;
pub mod matrix;
pub mod saddle;
pub mod sampler;
pub mod stirling;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::IncidenceMatrix;
pub use stirling::StirlingCache;

/// Arbitrary-precision nonnegative integer.
pub type Nat = num_bigint::BigUint;
/// Arbitrary-precision signed integer.
pub type Int = num_bigint::BigInt;
/// Exact rational in lowest terms.
pub type Rat = num_rational::BigRational;
