//! Branch reduction: type 1 and 2 moves that straighten the greedy tree
//! into a line segment.

use crate::fatgraph::{FatGraph, MoveSequence};
use crate::nielsen::greedy;

use super::ChordError;

/// Moves `g` to its chord diagram.
///
/// Let `S` be the tree edges that precede every generator along the
/// boundary, an initial segment of the tree. While the tree is larger, the
/// move on the first (in boundary order) tree edge outside `S` that leaves
/// a vertex of `S` extends `S` by one edge and fixes every generator.
pub fn branch_reduce(g: &FatGraph) -> Result<MoveSequence, ChordError> {
    g.require_trivalent_bordered()?;
    let mut seq = MoveSequence::new(g.clone());
    loop {
        let h = seq.end();
        let tree = greedy(h)?;
        let first_gen = tree.generators().iter().map(|&d| h.position(d)).min().unwrap_or(usize::MAX);
        let mut in_segment = vec![false; h.num_vertices()];
        in_segment[h.vertex(h.inv(h.tail()))] = true;
        let mut outside = Vec::new();
        for &e in tree.tree_edges() {
            if h.position(e) < first_gen {
                in_segment[h.vertex(e)] = true;
            } else {
                outside.push(e);
            }
        }
        let Some(&e) = outside.iter().find(|&&e| in_segment[h.vertex(h.inv(e))]) else {
            return Ok(seq);
        };
        seq.push(e)?;
    }
}
