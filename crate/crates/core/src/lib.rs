//! Exact computation and certification of Weingarten functions for the
//! unitary, orthogonal and symplectic groups.
//!
//! The crate is `no_std` (it needs `alloc`). It is organised bottom-up:
//!
//! * [`perm`], [`partition`], [`catalan`]: permutations, partitions,
//!   Catalan numbers and Moebius values.
//! * [`pairing`]: pair partitions of `[2n]`, the transposition action and
//!   coset types.
//! * [`graph`]: the unitary and orthogonal Weingarten graphs and exact path
//!   counts.
//! * [`exact`]: exact Weingarten values (Gram oracle, loop-equation
//!   recursion, closed forms, path series, the γ-norm).
//! * [`process`]: the Weingarten processes as seedable samplers and their
//!   Monte Carlo estimators.
//! * [`bounds`]: finite-instance certification of the quantitative bounds.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod catalan;
pub mod exact;
pub mod graph;
pub mod interval;
pub mod linalg;
pub mod pairing;
pub mod partition;
pub mod perm;
pub mod process;
pub mod rational;
pub mod rng;

mod error;

pub use catalan::{catalan, catalan_quotient_max, moebius, moebius_abs, CatalanTable};
pub use error::{ParseError, WgError};
pub use pairing::{CosetWalk, Pairing, SplitTarget};
pub use partition::Partition;
pub use perm::Permutation;
pub use rational::ExactRational;
