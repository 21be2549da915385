//! Finite MVW-rigs: MV-algebras with a product that sub-distributes over `⊕`
//! and super-distributes over `⊖`.
//!
//! A structure is stored as total operation tables over the indices
//! `0..size`, with index 0 as zero. From these the crate derives the order
//! and lattice operations, checks every axiom exhaustively, and computes
//! ideals, quotients, the prime spectrum and the frame of P-filters.
//!
//! ```
//! use mvw::builders::build_zn;
//! use mvw::axioms::check_all;
//!
//! let z3 = build_zn(3).unwrap();
//! assert!(check_all(&z3).passed());
//! assert_eq!(z3.unit(), Some(1));
//! assert_eq!(z3.top(), 3);
//! ```

pub mod axioms;
pub mod builders;
pub mod catalog;
pub mod elemset;
pub mod error;
pub mod ideals;
pub mod laws;
pub mod locale;
pub mod rig;
pub mod spectrum;
pub mod suites;

pub use elemset::ElemSet;
pub use error::{DeriveError, Error};
pub use rig::{Carrier, Elem, Flags, Limits, MvAlgebra, MvwRig, Structure};
