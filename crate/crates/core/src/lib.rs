//! Triple-orientation systems: CC-systems, pre-CC-systems and uniform rank-3
//! chirotopes.
//!
//! A triple system is a (partially defined) boolean function on ordered
//! triples of points `0..n` with cyclic symmetry and antisymmetry built into
//! the representation. On top of that this crate provides:
//!
//! * [`axioms`] — interiority, transitivity, dual transitivity and the
//!   Grassmann-Plücker relations, with violation witnesses and class
//!   membership ([`axioms::classify`]);
//! * [`tournament`] — associated tournaments/digraphs of a system and vortex
//!   detection (the 4-vertex obstructions to transitivity);
//! * [`solver`] — CNF encoding and a complete DPLL search deciding whether a
//!   partial system extends to a pre-CC-system/chirotope or a CC-system,
//!   with verified witnesses and DIMACS export;
//! * [`reduction`] — the digraph ↔ apex-partial-system correspondence and
//!   the lift of a vortex-free tournament to a CC-system;
//! * [`enumeration`] — exhaustive small-`n` generation, class censuses, and
//!   the brute-force oracles the solver is validated against;
//! * [`geometry`] — realization of systems from planar point sets, where
//!   `true` means counterclockwise.

pub mod axioms;
pub mod enumeration;
pub mod error;
pub mod geometry;
pub mod reduction;
pub mod solver;
pub mod system;
pub mod tournament;

pub use error::{Error, Result};
pub use geometry::from_points;
pub use solver::Target;
pub use system::{
    canonicalize, parse_system, serialize_system, CanonicalTriple, CompletionStatus,
    OrientedTriple, Parity, PartialTripleSystem, Point, PointSet,
};

/// Integer coordinates, evaluated exactly.
pub type IntPoint = (i64, i64);
/// Floating-point coordinates, evaluated with strict determinant signs.
pub type FloatPoint = (f64, f64);
