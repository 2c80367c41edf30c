//! Exact algebra for the Rodrigues-type family
//!
//! ```text
//! Θ_n(x) = α^{φ1(x)} dⁿ/dxⁿ ( ψ(x) β^{−φ2(x)} )
//! ```
//!
//! Every Θ_n shares the prefactor `α^{φ1} β^{−φ2}`, so the crate works with the
//! reduced kernel `q_n = Θ_n / (α^{φ1} β^{−φ2})`. With `ln α` and `ln β` kept as
//! independent ring symbols, generating functions, recurrences and annihilating
//! ODEs become identities between polynomials with rational coefficients that
//! can be checked exactly.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analytic;
pub mod bilateral;
pub mod error;
pub mod genfun;
pub mod kernel;
pub mod ode;
pub mod poly;
pub mod rational;
pub mod recurrence;
pub mod report;
pub mod ring;
pub mod series;
pub mod symcoeff;


pub use analytic::{AnalyticFunction, BuiltinKind, FamilySpec, Jet, Param};
pub use error::{Error, Result};
pub use kernel::{PolyFamily, ReducedKernel};

pub use poly::Poly;
pub use report::{Failure, Status, VerificationReport};
pub use rational::Rational;

pub use num_traits::{One, Zero};
pub use ring::Ring;
pub use series::{TruncatedSeries, Vars};
pub use symcoeff::{Monomial, SymCoeff};

/// Default truncation order for generating-function series.
pub const DEFAULT_ORDER: usize = 16;
