//! Exact harmonic analysis on representation spaces of cyclic quivers and
//! related graded spaces over small finite fields.
//!
//! Everything is computed in exact arithmetic: character sums take values in
//! the cyclotomic field `Q(zeta_p)` (see [`cyclotomic`]), function tables are
//! dense vectors of such values (see [`transform`]), and all linear algebra
//! over the value field is fraction-exact. Floating point appears only in
//! archimedean bound checks (Weil/Deligne type inequalities).
//!
//! The main pipeline:
//! * [`finitefield`] — arithmetic in `F_q`, the absolute trace and the
//!   additive character `psi`.
//! * [`segments`] — multisegment combinatorics indexing nilpotent orbits,
//!   aperiodicity, the hat bijection and local-system rank bookkeeping.
//! * [`quiver`] — graded representation spaces `E^eps_V`, Krull–Schmidt
//!   orbit labels, antiorbital stratum labels and rational orbit enumeration.
//! * [`transform`] — the unnormalized Fourier transform with respect to the
//!   trace pairing, and generalized Kloosterman sums.
//! * [`invariants`] — orbit indicator bases, biorbital function spaces,
//!   parabolic induction/restriction at function level and flag counts.
//! * [`casestudies`] — the quadric, graded symplectic, symmetric-square and
//!   4x4 unipotent coadjoint examples, each verified exactly.
//! * [`accept`] — the end-to-end verification suite used by the CLI and the
//!   integration tests.

pub mod accept;
pub mod casestudies;
pub mod cyclotomic;
pub mod finitefield;
pub mod fqlinalg;
pub mod invariants;
pub mod quiver;
pub mod segments;
pub mod solve;
pub mod transform;

mod error;

pub use error::Error;

/// Shorthand result type used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on the number of points of any space that is enumerated or
/// tabulated densely. Overridable per call and via the CLI.
pub const DEFAULT_POINT_BUDGET: u64 = 20_000_000;

/// Library version embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
