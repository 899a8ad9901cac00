//! Finite-group cohomology toolkit: multiplication-table groups, H²(G;T) over
//! residue rings, dual cocycles on abelian groups and the extension pipeline
//! they feed, exact group-algebra tensors, character tables, fusion rings and
//! amenability diagnostics.
//!
//! Parallel loops go through [`par`]; disable the default `parallel` feature
//! for a purely sequential build with identical results.

pub mod abelian;
pub mod algebra;
pub mod cohomology;
pub mod error;
pub mod fusion;
pub mod group;
pub mod par;
pub mod zmod;

pub use error::{Error, Result};
