//! Noncrossing partitions of affine types Ã and C̃, computed exactly.
//!
//! Group elements are [`PeriodicPermutation`]s. Intervals below a Coxeter
//! element are decoded into block diagrams on an annulus (type Ã) or on a disk
//! with two orbifold points (type C̃), and all root-system arithmetic runs over
//! exact rationals.
//!
//! - [`perm`]: windows, cycles, the generators `T ∪ L`, lengths.
//! - [`notation`]: cycle-notation parsing and printing.
//! - [`coxeter`]: Coxeter elements, the forms `K` and `ω_c`, projections,
//!   horizontal reflections, translations and factorization schemes.
//! - [`interval`]: membership, order, covers, Kreweras complement, meet, join.
//! - [`diagram`]: block diagrams, curve sets, augmentation, SVG rendering.
//! - [`typec`]: type C̃ through folding.
//! - [`verify`]: seeded property suites shared by the CLI and the tests.

pub mod coxeter;
pub mod diagram;
pub mod interval;
pub mod notation;
pub mod perm;
pub mod typec;
pub mod verify;

pub use perm::{Generator, PeriodicPermutation};
pub use coxeter::CoxeterElement;
