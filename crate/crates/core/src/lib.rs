//! Exact, finitely presented invariants of totally disconnected locally
//! compact groups and the complexes they act on.
//!
//! Everything here is exact: rational linear algebra over arbitrary
//! precision integers, combinatorial enumeration, and closed forms evaluated
//! in `Q`. The crate is `no_std` and only needs `alloc`; file formats and
//! the command line live in the `tdlc` companion crate.
//!
//! Module map:
//!
//! * [`ratlin`] sparse rational matrices, ranks, kernels, (co)homology dims.
//! * [`simplicial`] simplicial complexes, boundary and compactly supported
//!   coboundary matrices, relative cohomology, ball/frontier windows.
//! * [`serre_graphs`] graphs with edge inversion, the edge boundary map,
//!   rough Cayley graphs over group oracles.
//! * [`group`] finite groups given by multiplication tables.
//! * [`graphs_of_groups`] finite graphs of finite groups, fundamental group
//!   normal forms, Bass–Serre tree balls, Euler characteristics.
//! * [`coxeter`] Coxeter systems, Cartan matrices, length enumeration,
//!   Poincaré polynomials and exponents.
//! * [`davis`] Davis chambers and the rational duality verdict.
//! * [`euler`] Haar-valued Euler–Poincaré characteristics.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod coxeter;
pub mod davis;
pub mod euler;
pub mod graphs_of_groups;
pub mod group;
pub mod poly;
pub mod ratlin;
pub mod serre_graphs;
pub mod simplicial;

pub use ratlin::{Rational, RationalMatrix};
