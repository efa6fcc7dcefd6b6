//! Weighted projective Reed-Muller codes on the weighted projective plane
//! `P(1,a,b)` over a finite field `F_q`.
//!
//! The crate builds the evaluation codes `C_d`, computes their parameters
//! `[n, k, dmin]` from closed formulas, and ships the brute-force oracles
//! (matrix rank, exhaustive weight enumeration, orbit reduction, shadow
//! counting) that those formulas are checked against.
//!
//! Module map:
//!
//! * [`gf`]: arithmetic in `F_q` with a canonical primitive modulus.
//! * [`plane`]: rational points of `P(1,a,b)(F_q)` and orbit equivalence.
//! * [`lattice`]: polygon combinatorics, the reduction `red(d)`, the
//!   dimension formula, denumerants and the regularity set.
//! * [`rewrite`]: the universal Groebner basis as a monomial rewriting system,
//!   footprints and shadows.
//! * [`evalcode`]: generator matrices, rank, weights, the exhaustive distance
//!   oracle, the line code on `x0 = 0` and explicit low-weight polynomials.
//! * [`bounds`]: the footprint function `L`, its minimum over `red(d)` and the
//!   minimum-distance formula.
//! * [`verify`]: the invariant suites used by the CLI `verify` command and the
//!   acceptance tests.

pub mod bounds;
pub mod error;
pub mod evalcode;
pub mod gf;
pub mod lattice;
pub mod plane;
pub mod rewrite;
pub mod verify;

pub use error::{Error, Result};

/// Largest degree accepted by the degree-indexed operations.
pub const MAX_DEGREE: u64 = 1_000_000;

/// Default cap on the number of messages enumerated by exhaustive searches.
pub const DEFAULT_SEARCH_CAP: u64 = 1 << 24;

pub(crate) fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        let r = x % y;
        x = y;
        y = r;
    }
    x
}

pub(crate) fn check_degree(d: u64) -> Result<()> {
    if d > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange(d));
    }
    Ok(())
}
