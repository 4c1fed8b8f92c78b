//! Bordered fatgraphs, Whitehead moves, and groupoid lifts of the Nielsen,
//! Magnus and symplectic representations of the mapping class group of a
//! surface with one boundary component.
//!
//! The crate is organized by layer:
//!
//! * [`fatgraph`]: combinatorial maps with a tail, boundary traversal,
//!   Whitehead moves and their six-way classification;
//! * [`freegroup`]: reduced words, endomorphisms, the integral group ring,
//!   Fox derivatives and abelianization;
//! * [`marking`]: abstract markings by the free group or by `H = Z^{2g}`;
//! * [`nielsen`]: greedy trees, canonical generators, and the automorphism
//!   attached to a Whitehead move;
//! * [`magnus`]: Fox Jacobians of those automorphisms;
//! * [`chorddiag`]: linear chord diagrams, branch reduction and chord slides;
//! * [`symplectic`]: geometric bases, integral symplectic matrices and the
//!   identity extensions;
//! * [`selfcheck`]: seeded random walks over the groupoid relations.

pub mod chorddiag;
pub mod fatgraph;
pub mod freegroup;
pub mod magnus;
pub mod marking;
pub mod nielsen;
pub mod selfcheck;
pub mod symplectic;

#[doc(hidden)]
pub mod cli;

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    FatGraph(#[from] fatgraph::FatGraphError),
    #[error(transparent)]
    FreeGroup(#[from] freegroup::FreeGroupError),
    #[error(transparent)]
    Marking(#[from] marking::MarkingError),
    #[error(transparent)]
    Magnus(#[from] magnus::MagnusError),
    #[error(transparent)]
    Chord(#[from] chorddiag::ChordError),
    #[error(transparent)]
    Symplectic(#[from] symplectic::SymplecticError),
}

pub type Result<T> = std::result::Result<T, Error>;
