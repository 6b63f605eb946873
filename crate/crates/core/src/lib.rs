//! Combinatorial model of the d-cluster tilting categories `M_{n,d}` of the higher Auslander
//! algebras of type A.
//!
//! * [`tuples`]: increasing tuples, admissible sets, `E_Hom` / `E_Ext` and interlacing.
//! * [`quiver`]: the quivers `Q^{n,m}` with their relations, DOT and JSON export.
//! * [`reps`]: the modules `M_x` as explicit representations, canonical morphisms,
//!   extension sequences and resolutions.
//! * [`homology`]: Hom and Ext computed by linear algebra over a prime field.
//! * [`classify`]: non-interlacing collections, wide closure, recognition, counting and
//!   enumeration of wide subcategories.
//! * [`cli`]: the command-line front end.

pub mod classify;
pub mod cli;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod par;
pub mod quiver;
pub mod reps;
pub mod tuples;
pub mod verify;

pub use error::{Error, Result};
