//! Exact-arithmetic engine for Reynolds Lie algebras carrying a derivation.
//!
//! Everything here runs over arbitrary-precision rationals: there is no
//! floating point anywhere in the crate, so every validator verdict, every
//! cohomology dimension and every witness is exact and reproducible.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactlin`] — rational scalars, dense matrices, rank / kernel / solve;
//! * [`lie`] — Lie algebras by structure constants, Reynolds operators,
//!   derivations, induced brackets, semidirect and bowtie products;
//! * [`rep`] — representations and their Reynolds / derivation compatible
//!   enrichments, plus the induced representation on the descendent algebra;
//! * [`cochain`] — alternating cochains, the four coboundary-style operators,
//!   the assembled complexes and their cohomology;
//! * [`deform`] — formal deformations truncated at a finite order, their
//!   coefficient equations and order-one equivalence transport;
//! * [`ext`] — abelian extensions, central extensions and the obstruction
//!   theory for extending a couple of derivations;
//! * [`search`] — small brute-force and linear-solve searches used to
//!   manufacture valid instances (primarily a test oracle);
//! * [`io`] — the JSON envelope shared with the command-line front end.

pub mod check;
pub mod cochain;
pub mod deform;
pub mod error;
pub mod exactlin;
pub mod ext;
pub mod io;
pub mod lie;
pub mod rep;
pub mod search;

pub use check::{CheckReport, Violation};
pub use error::Error;
pub use exactlin::{Matrix, Scalar};

/// Selects between the default form of an identity and a strict-literal
/// variant kept around for auditing disputed formulations.
///
/// `Standard` is what the engine believes to be the coherent axiom; `Literal`
/// re-evaluates the alternative transcription so fixtures can be audited
/// against both readings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Standard,
    Literal,
}
