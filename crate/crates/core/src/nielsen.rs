//! Greedy maximal trees, canonical generators and the extended Nielsen
//! representation of Whitehead moves.
//!
//! For a Whitehead move `W: G -> G'` the automorphism `N(W)` sends the
//! standard letter `x_i` to the `i`-th generator of `G'` written in the
//! generators of `G`. It is computed by transporting the canonical marking
//! of `G` across the move; the six closed forms of [`closed_form`] are an
//! independent cross-check.

use std::collections::VecDeque;

use crate::fatgraph::{Dart, FatGraph, FatGraphError, MoveSequence};
use crate::freegroup::{EndoMap, Word};
use crate::marking::{MarkingValue, Pi1Marking};

mod cases;

pub use cases::{closed_form, ClosedForm, ClosedFormError};

/// Greedy maximal tree of a bordered fatgraph and its complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyTree {
    in_tree: Vec<bool>,
    tree_edges: Vec<Dart>,
    generators: Vec<Dart>,
}

impl GreedyTree {
    /// Whether the edge of `d` belongs to the tree.
    pub fn contains(&self, d: Dart) -> bool {
        self.in_tree[d.index()]
    }

    /// Preferred darts of the tree edges, in boundary order.
    pub fn tree_edges(&self) -> &[Dart] {
        &self.tree_edges
    }

    /// Preferred darts of the non-tree edges, in boundary order.
    pub fn generators(&self) -> &[Dart] {
        &self.generators
    }

    /// 1-based index of `d` among the generators, signed by orientation.
    pub fn letter_of(&self, g: &FatGraph, d: Dart) -> Option<i32> {
        let p = g.preferred(d);
        let i = self.generators.iter().position(|&x| x == p)? as i32 + 1;
        Some(if p == d { i } else { -i })
    }
}

/// An edge is in the tree iff its preferred dart comes first, along the
/// boundary, among all darts pointing to the same vertex.
pub fn greedy(g: &FatGraph) -> Result<GreedyTree, FatGraphError> {
    g.require_bordered()?;
    let mut first_in = vec![usize::MAX; g.num_vertices()];
    for d in g.darts() {
        let v = g.vertex(d);
        first_in[v] = first_in[v].min(g.position(d));
    }
    let mut in_tree = vec![false; g.num_darts()];
    let mut tree_edges = Vec::new();
    let mut generators = Vec::new();
    for e in g.preferred_darts() {
        if g.position(e) == first_in[g.vertex(e)] {
            in_tree[e.index()] = true;
            in_tree[g.inv(e).index()] = true;
            tree_edges.push(e);
        } else {
            generators.push(e);
        }
    }
    Ok(GreedyTree { in_tree, tree_edges, generators })
}

/// The abstract free-group marking assigning the letter `x_i` to the `i`-th
/// generator and solving the vertex conditions from the leaves of the tree
/// inward.
pub fn canonical_marking(g: &FatGraph, tree: &GreedyTree) -> Pi1Marking {
    let n = g.num_darts();
    let mut values: Vec<Option<Word>> = vec![None; n];
    for (i, &x) in tree.generators().iter().enumerate() {
        let w = Word::letter(i as i32 + 1);
        values[g.inv(x).index()] = Some(w.inverse());
        values[x.index()] = Some(w);
    }
    let tail_vertex = g.vertex(g.inv(g.tail()));
    let cycles: Vec<Vec<Dart>> = g.vertex_cycles().collect();
    let mut unknown: Vec<usize> =
        cycles.iter().map(|c| c.iter().filter(|d| values[d.index()].is_none()).count()).collect();
    let mut queue: VecDeque<usize> = (0..cycles.len()).filter(|&v| unknown[v] == 1 && v != tail_vertex).collect();
    while let Some(v) = queue.pop_front() {
        if unknown[v] != 1 {
            continue;
        }
        let cyc = &cycles[v];
        let k = cyc.iter().position(|d| values[d.index()].is_none()).expect("one unknown dart");
        // x * rest = 1 where rest is the product of the darts following x
        let mut rest = Word::identity();
        for j in 1..cyc.len() {
            let d = cyc[(k + j) % cyc.len()];
            rest = rest.mul(values[d.index()].as_ref().expect("known"));
        }
        let x = cyc[k];
        let xb = g.inv(x);
        values[x.index()] = Some(rest.inverse());
        values[xb.index()] = Some(rest);
        unknown[v] = 0;
        let u = g.vertex(xb);
        unknown[u] -= 1;
        if unknown[u] == 1 && u != tail_vertex {
            queue.push_back(u);
        }
    }
    Pi1Marking::new(values.into_iter().map(|v| v.expect("tree solves every dart")).collect())
}

/// Value of `d` under the canonical marking, as a word in the generators.
pub fn express(g: &FatGraph, tree: &GreedyTree, d: Dart) -> Word {
    canonical_marking(g, tree).value(d).clone()
}

/// Value of the tail dart `t` in the generators: the class of the boundary.
pub fn boundary_word(g: &FatGraph) -> Result<Word, FatGraphError> {
    let tree = greedy(g)?;
    Ok(express(g, &tree, g.tail()))
}

/// Generators of `g` read off an arbitrary marking.
pub fn generator_values<K: MarkingValue>(
    g: &FatGraph,
    m: &crate::marking::Marking<K>,
) -> Result<Vec<K>, FatGraphError> {
    let tree = greedy(g)?;
    Ok(tree.generators().iter().map(|&x| m.value(x).clone()).collect())
}

/// `N(W)` for the Whitehead move on the edge of `d`.
pub fn nielsen_of_move(g: &FatGraph, d: Dart) -> Result<EndoMap, FatGraphError> {
    let tree = greedy(g)?;
    let m = canonical_marking(g, &tree);
    let h = g.whitehead_move(d)?;
    let moved = m.transport(g, d).map_err(|e| match e {
        crate::marking::MarkingError::Graph(e) => e,
        other => FatGraphError::Malformed(other.to_string()),
    })?;
    Ok(EndoMap::new(generator_values(&h, &moved)?))
}

/// `N` of a whole sequence: the generators of the last graph written in the
/// generators of the first, composed from the per-move automorphisms.
pub fn nielsen_of_sequence(s: &MoveSequence) -> Result<EndoMap, FatGraphError> {
    let rank = 2 * s.start().genus()?;
    let mut acc = EndoMap::identity(rank);
    for (k, step) in s.steps().iter().enumerate() {
        let n = nielsen_of_move(s.source(k), step.dart)?;
        acc = acc.then(&n).map_err(|_| FatGraphError::NonComposable(k))?;
    }
    Ok(acc)
}

/// The same automorphism obtained by carrying one marking along the whole
/// sequence; used as an oracle for [`nielsen_of_sequence`].
pub fn nielsen_by_transport(s: &MoveSequence) -> Result<EndoMap, FatGraphError> {
    let tree = greedy(s.start())?;
    let mut m = canonical_marking(s.start(), &tree);
    for (k, step) in s.steps().iter().enumerate() {
        m = m.transport(s.source(k), step.dart).map_err(|e| FatGraphError::Malformed(e.to_string()))?;
    }
    Ok(EndoMap::new(generator_values(s.end(), &m)?))
}
