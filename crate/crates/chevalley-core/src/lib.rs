//! Exact computation in adjoint Chevalley groups of type B_l over
//! commutative local rings with 1/2.
//!
//! The crate is split along the objects it manipulates:
//!
//! * [`ring`] — pluggable exact arithmetic for the supported local rings
//!   (prime fields, Z/p^k, Z localized at p, dual numbers, quadratic
//!   extensions), with unit/radical predicates and residue maps.
//! * [`roots`] — the B_l root system: enumeration in the fixed order,
//!   pairings, reflections, root strings and the gamma sequence.
//! * [`algebra`] — Chevalley basis of the Lie algebra, structure
//!   constants, and the integral adjoint representation matrices.
//! * [`group`] — the generators x_alpha(t), w_alpha(t), h_alpha(t),
//!   torus characters, and group-element arithmetic over a chosen ring.
//! * [`relations`] — executable verification of the group relations,
//!   including the rank-3 condition suite.
//! * [`bruhat`] — composing and reconstructing radical-congruent
//!   products lambda * torus * positive * negative unipotents.
//! * [`units`] — constructive generation of every matrix unit of
//!   M_n(R) from group elements.
//! * [`aut`] — standard automorphisms and the torus lift into a
//!   quadratic extension.
//!
//! Everything is exact; there is no floating point anywhere. The crate
//! is `no_std` (with `alloc`) so the kernels can be embedded; IO, JSON
//! formats and the command line live in the companion crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod aut;
pub mod bruhat;
pub mod group;
pub mod relations;
pub mod ring;
pub mod roots;
pub mod sample;
pub mod units;

mod error;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
