//! Computational toolkit for Coxeter groups, Garside structures and
//! cell-Helly verification of Salvetti-type complexes.
//!
//! The crate is organized around four subsystems:
//!
//! * [`coxeter`] — finite Coxeter groups enumerated from labeled defining
//!   graphs: canonical reduced words, weak-order lattices, parabolic cosets,
//!   gates and the coset Helly property.
//! * [`garside`] — Garside monoids and groups built on a finite simples
//!   lattice: left-weighted normal forms, prefix/suffix lattice operations,
//!   interval cells and the constructive triple-cell-cover.
//! * [`complex`] — balls in the universal cover of the Salvetti complex of an
//!   FC-type defining graph, cells as intervals, and the cell-Helly
//!   verification pipeline.
//! * [`hellygraph`] — graph-level machinery: thickenings, maximal cliques,
//!   clique-Helly and ball-Helly checks.

pub mod complex;
pub mod coxeter;
pub mod garside;
pub mod hellygraph;

pub use coxeter::{CoxElt, CoxeterGroup, DefiningGraph, Side};
