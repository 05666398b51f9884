//! Paramodification of Steiner 2-designs.
//!
//! A Steiner 2-(n,k,1) design is a set of `k`-point blocks on `n` points in
//! which every pair of points lies on exactly one block. Fix a block `b`;
//! the blocks meeting it form its pencil. Recoloring the pencil by a proper
//! coloring of its line graph and swapping each member's anchor point for
//! its color yields another design on the same points. This crate builds the
//! classical designs, enumerates those colorings, applies the transform,
//! decides isomorphism and explores the graph the transform induces.
//!
//! ```
//! use paramod::canon::are_isomorphic;
//! use paramod::coloring::{anchor_assignment, coloring_from_resolution, enumerate_resolutions};
//! use paramod::generators::affine_plane;
//! use paramod::paramodify;
//!
//! let ag = affine_plane(3).unwrap();
//! let ds = ag.derived_system(0).unwrap();
//! let resolutions = enumerate_resolutions(&ds);
//! assert_eq!(resolutions.len(), 2);
//! for r in &resolutions {
//!     let a = anchor_assignment(&ds.pencil, r);
//!     let c = coloring_from_resolution(&ds.pencil, r, &a).unwrap();
//!     let next = paramodify(&ag, 0, &c).unwrap();
//!     assert!(are_isomorphic(&ag, &next));
//! }
//! ```

pub mod bitset;
pub mod canon;
pub mod coloring;
pub mod design;
pub mod error;
pub mod explore;
pub mod field;
pub mod generators;
pub mod io;
pub mod paramod;

pub use canon::{canonical_certificate, canonical_form, isomorphism, CanonicalCertificate};
pub use coloring::{BlockColoring, Resolution};
pub use design::{Design, ValidationReport};
pub use error::{Error, Result};
pub use io::{parse_design, write_design};
pub use paramod::paramodify;

/// The guide's chapters, compiled so their snippets run as doc tests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/designs.md")]
    pub mod designs {}
    #[doc = include_str!("../../../book/src/colorings.md")]
    pub mod colorings {}
    #[doc = include_str!("../../../book/src/paramodification.md")]
    pub mod paramodification {}
    #[doc = include_str!("../../../book/src/switchings.md")]
    pub mod switchings {}
    #[doc = include_str!("../../../book/src/isomorphism.md")]
    pub mod isomorphism {}
    #[doc = include_str!("../../../book/src/exploration.md")]
    pub mod exploration {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
