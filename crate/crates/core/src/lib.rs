//! Exact counting and certified lower bounds for irreducible characteristic
//! polynomials of bounded-height integer matrices.
//!
//! The library builds a lower Hessenberg matrix family and its companion
//! polynomial family, counts constrained irreducible polynomials over prime
//! fields, lifts mod-p irreducibility certificates to certified bounds, and
//! cross-checks everything against brute-force censuses.  All arithmetic is
//! exact: arbitrary-precision integers and rationals, no floating point.

pub mod bounds;
pub mod census;
pub mod ffpoly;
pub mod hessfam;
pub mod intpoly;
pub mod lifting;
pub mod primes;

use num_rational::BigRational;

/// Work ceiling applied when the caller does not supply one.  Large enough
/// for every shipped verification, small enough to fail fast on runaway
/// enumerations.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Canonical text form for exact rationals: always "numerator/denominator".
pub fn rat_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
