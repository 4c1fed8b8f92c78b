#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ptolemy_core::chorddiag::symplectic_diagram;
use ptolemy_core::fatgraph::{FatGraph, MoveSequence};
use ptolemy_core::selfcheck::random_walk;

/// A seeded walk of `len` moves from the symplectic chord diagram.
pub fn walk(genus: usize, len: usize, seed: u64) -> MoveSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_walk(&symplectic_diagram(genus).unwrap(), len, &mut rng)
}

/// The end of a seeded walk.
pub fn graph(genus: usize, len: usize, seed: u64) -> FatGraph {
    walk(genus, len, seed).end().clone()
}

/// A seeded walk of `len` moves from `g`.
pub fn walk_from(g: &FatGraph, len: usize, seed: u64) -> MoveSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_walk(g, len, &mut rng)
}
