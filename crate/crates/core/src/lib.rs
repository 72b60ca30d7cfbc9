//! Exact computations with central hyperplane arrangements and their
//! Jacobian ideals.
//!
//! Everything is carried out over the rationals with arbitrary-precision
//! arithmetic; there is no floating point anywhere in this crate. The main
//! pieces:
//!
//! * [`qlinalg`]: rational matrices, row reduction, and linear flats.
//! * [`polyring`]: sparse multivariate polynomials with pluggable term
//!   orders.
//! * [`ideals`]: a Buchberger engine plus the homogeneous-ideal calculus
//!   built on it: elimination, intersection, quotients, saturation, radical
//!   membership, Hilbert series and polynomials.
//! * [`arrangement`]: hyperplane arrangements, defining polynomials,
//!   Jacobian ideals, and the intersection lattice with its Möbius function.
//! * [`reconstruct`]: recovery of an arrangement from its Jacobian ideal by
//!   slicing with candidate hyperplanes and reading off degrees.
//! * [`suites`]: seeded verification suites shared by the CLI and the
//!   acceptance tests.
//!
//! The `parallel` feature (on by default) runs candidate sweeps and
//! verification corpora on a rayon pool; without it the same code paths run
//! sequentially.

pub mod arrangement;
pub mod error;
pub mod ideals;
pub mod polyring;
pub mod qlinalg;
pub mod reconstruct;
pub mod suites;

mod par;

pub use error::{Error, Result};

/// Caps the worker pool used for candidate sweeps and suite corpora. Only
/// meaningful with the `parallel` feature; calling it twice, or after work
/// has already run, keeps the first configuration.
pub fn set_parallelism(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
    }
}
