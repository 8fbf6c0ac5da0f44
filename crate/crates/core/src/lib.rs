//! Fiberwise computation of the Fourier-Mukai-type transform of Higgs
//! bundles on odd-degree hyperelliptic curves over prime fields.
//!
//! The pieces build on each other: exact arithmetic ([`arith`]), the curve
//! and its divisors ([`curve`]), the Jacobian ([`jacobian`]), Riemann-Roch
//! spaces ([`rrspace`]), Higgs bundles ([`higgs`]), hypercohomology of the
//! Higgs complex ([`hypercoh`]), transform fibers ([`transform`]),
//! chart-level reconstruction ([`reconstruct`]) and the Chow-ring
//! bookkeeping ([`chow`]).

pub mod arith;
pub mod chow;
pub mod config;
pub mod curve;
pub mod error;
pub mod higgs;
pub mod hypercoh;
pub mod jacobian;
pub mod reconstruct;
pub mod rrspace;
pub mod transform;

pub use curve::{Differential, Divisor, HyperellipticCurve, Place};
pub use error::{Error, Result};
