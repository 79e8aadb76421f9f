//! Bi-Cohen-Macaulay graphs.
//!
//! A finite simple graph `G` is bi-Cohen-Macaulay (bi-CM) when both its edge
//! ideal `I_G` and the Alexander dual `I_G^∨` are Cohen-Macaulay. This crate
//! certifies the property with exact homological computations, recognizes the
//! bipartite and chordal bi-CM families, builds the generic bi-CM graph `G_T`
//! attached to a tree `T`, decides inseparability and constructs inseparable
//! models.
//!
//! Vertices are 1-based in every public API and in all I/O; internally a
//! graph on `n ≤ 64` vertices is stored as `n` adjacency bit masks.
//!
//! With the default `parallel` feature the Hochster subset sweep and the
//! enumeration audit run on rayon; every parallel entry point also takes an
//! [`Execution`] argument so both paths can be compared at runtime.

pub mod audit;
pub mod bicm;
pub mod classify;
pub mod enumerate;
mod error;
pub mod generic;
pub mod graphs;
pub mod ideals;
mod par;
pub mod resolutions;
pub mod separation;


pub use bicm::{certify_bicm, quick_reject, BiCmCertificate, RejectReason};
pub use error::{Error, Result};
pub use graphs::{Graph, Tree, VertexSet};
pub use ideals::{SquarefreeIdeal, VariableUniverse};
pub use par::Execution;
pub use resolutions::{BettiTable, FieldSpec, SimplicialComplex};
