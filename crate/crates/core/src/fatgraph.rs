//! Once-bordered fatgraphs as combinatorial maps.
//!
//! A fatgraph is stored as two permutations on darts (oriented edges):
//! the fixed-point-free edge involution and the vertex rotation, whose
//! cycles list, counterclockwise, the darts pointing toward each vertex.
//! The boundary successor of a dart `d` is `inv(rot(d))`: the next dart in
//! the cyclic order at the vertex `d` points to, reversed so that it points
//! away from that vertex.
//!
//! Darts are numbered from 0 internally and from 1 in every textual format.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

mod classify;
mod io;

pub use classify::{classify_move, Direction, MoveType, SectorPattern};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FatGraphError {
    #[error("malformed fatgraph: {0}")]
    Malformed(String),
    #[error("edge involution fixes dart {0}")]
    InvolutionFixedPoint(Dart),
    #[error("fatgraph is disconnected")]
    Disconnected,
    #[error("tail dart {0} does not leave a univalent vertex")]
    MissingTail(Dart),
    #[error("fatgraph has {0} boundary cycles, expected exactly one")]
    NotBordered(usize),
    #[error("fatgraph is not trivalent away from the tail")]
    NotTrivalent,
    #[error("the tail edge admits no Whitehead move")]
    TailMove,
    #[error("dart {0} does not exist")]
    NoSuchDart(Dart),
    #[error("move sequence is not composable at step {0}")]
    NonComposable(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// An oriented edge.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Dart(pub u32);

impl Dart {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// 1-based id used in text formats.
    pub fn id(self) -> u32 {
        self.0 + 1
    }

    pub fn from_id(id: u32) -> Dart {
        Dart(id - 1)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// Result of [`FatGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub darts: usize,
    pub edges: usize,
    pub vertices: usize,
    pub boundary_cycles: usize,
    /// Only reported for graphs with exactly one boundary cycle.
    pub genus: Option<usize>,
    /// Vertices other than the tail vertex whose valence is not 3, as
    /// `(smallest inbound dart, valence)`.
    pub valence_violations: Vec<(Dart, usize)>,
    /// Number of univalent vertices.
    pub univalent: usize,
}

impl ValidationReport {
    pub fn is_bordered(&self) -> bool {
        self.boundary_cycles == 1
    }

    pub fn is_trivalent_bordered(&self) -> bool {
        self.is_bordered() && self.valence_violations.is_empty() && self.univalent == 1
    }
}

/// Canonical form of a bordered fatgraph: the edge involution after
/// renumbering darts by their position along the boundary cycle.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalCode(pub Vec<u32>);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FatGraph {
    inv: Vec<u32>,
    rot: Vec<u32>,
    tail: u32,
    vertex_of: Vec<u32>,
    vertices: Vec<Vec<u32>>,
    faces: Vec<Vec<u32>>,
    /// Position along the boundary cycle starting at the tail; only
    /// meaningful when there is a single face.
    pos: Vec<u32>,
}

impl FatGraph {
    /// Builds a fatgraph from its edge involution, vertex rotation and the
    /// tail dart `t` (pointing away from the univalent vertex).
    pub fn new(inv: Vec<u32>, rot: Vec<u32>, tail: Dart) -> Result<FatGraph, FatGraphError> {
        let n = inv.len();
        if n == 0 || !n.is_multiple_of(2) || rot.len() != n {
            return Err(FatGraphError::Malformed(format!(
                "{} involution entries and {} rotation entries",
                n,
                rot.len()
            )));
        }
        check_permutation(&inv, "edge involution")?;
        check_permutation(&rot, "vertex rotation")?;
        for d in 0..n {
            if inv[d] as usize == d {
                return Err(FatGraphError::InvolutionFixedPoint(Dart(d as u32)));
            }
            if inv[inv[d] as usize] as usize != d {
                return Err(FatGraphError::Malformed("edge map is not an involution".into()));
            }
        }
        if tail.index() >= n {
            return Err(FatGraphError::NoSuchDart(tail));
        }
        let tbar = inv[tail.index()];
        if rot[tbar as usize] != tbar {
            return Err(FatGraphError::MissingTail(tail));
        }

        let vertices = cycles(&rot);
        let mut vertex_of = vec![0u32; n];
        for (vi, cyc) in vertices.iter().enumerate() {
            for &d in cyc {
                vertex_of[d as usize] = vi as u32;
            }
        }

        // connectivity over the darts, generated by inv and rot
        let mut seen = vec![false; n];
        let mut stack = vec![tail.0];
        seen[tail.index()] = true;
        while let Some(d) = stack.pop() {
            for e in [inv[d as usize], rot[d as usize]] {
                if !seen[e as usize] {
                    seen[e as usize] = true;
                    stack.push(e);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(FatGraphError::Disconnected);
        }

        let next: Vec<u32> = (0..n).map(|d| inv[rot[d] as usize]).collect();
        let mut faces = Vec::new();
        let mut in_face = vec![false; n];
        for start in std::iter::once(tail.0).chain(0..n as u32) {
            if in_face[start as usize] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !in_face[d as usize] {
                in_face[d as usize] = true;
                face.push(d);
                d = next[d as usize];
            }
            faces.push(face);
        }
        let mut pos = vec![0u32; n];
        for (k, &d) in faces[0].iter().enumerate() {
            pos[d as usize] = k as u32;
        }

        Ok(FatGraph { inv, rot, tail: tail.0, vertex_of, vertices, faces, pos })
    }

    pub fn num_darts(&self) -> usize {
        self.inv.len()
    }

    pub fn num_edges(&self) -> usize {
        self.inv.len() / 2
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.inv.len() as u32).map(Dart)
    }

    pub fn tail(&self) -> Dart {
        Dart(self.tail)
    }

    pub fn inv(&self, d: Dart) -> Dart {
        Dart(self.inv[d.index()])
    }

    /// Next dart counterclockwise at the vertex `d` points to.
    pub fn rot(&self, d: Dart) -> Dart {
        Dart(self.rot[d.index()])
    }

    /// Boundary successor `inv(rot(d))`.
    pub fn next(&self, d: Dart) -> Dart {
        self.inv(self.rot(d))
    }

    pub fn vertex(&self, d: Dart) -> usize {
        self.vertex_of[d.index()] as usize
    }

    pub fn valence(&self, d: Dart) -> usize {
        self.vertices[self.vertex(d)].len()
    }

    /// Inbound darts at each vertex, in counterclockwise order.
    pub fn vertex_cycles(&self) -> impl Iterator<Item = Vec<Dart>> + '_ {
        self.vertices.iter().map(|c| c.iter().map(|&d| Dart(d)).collect())
    }

    /// Inbound darts at the vertex `d` points to, starting with `d`.
    pub fn vertex_cycle_from(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut e = self.rot(d);
        while e != d {
            out.push(e);
            e = self.rot(e);
        }
        out
    }

    pub fn boundary_cycles(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> impl Iterator<Item = Vec<Dart>> + '_ {
        self.faces.iter().map(|c| c.iter().map(|&d| Dart(d)).collect())
    }

    pub fn validate(&self) -> ValidationReport {
        let e = self.num_edges();
        let v = self.num_vertices();
        let n = self.boundary_cycles();
        let chi = v as i64 - e as i64;
        let genus = if n == 1 {
            let twice = 2 - n as i64 - chi;
            (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as usize)
        } else {
            None
        };
        let tail_vertex = self.vertex(self.inv(self.tail()));
        let mut valence_violations = Vec::new();
        let mut univalent = 0;
        for (vi, cyc) in self.vertices.iter().enumerate() {
            if cyc.len() == 1 {
                univalent += 1;
            }
            if vi != tail_vertex && cyc.len() != 3 {
                let min = *cyc.iter().min().expect("nonempty vertex");
                valence_violations.push((Dart(min), cyc.len()));
            }
        }
        valence_violations.sort();
        ValidationReport {
            darts: self.num_darts(),
            edges: e,
            vertices: v,
            boundary_cycles: n,
            genus,
            valence_violations,
            univalent,
        }
    }

    pub fn require_bordered(&self) -> Result<(), FatGraphError> {
        match self.boundary_cycles() {
            1 => Ok(()),
            k => Err(FatGraphError::NotBordered(k)),
        }
    }

    pub fn require_trivalent_bordered(&self) -> Result<(), FatGraphError> {
        self.require_bordered()?;
        if self.validate().is_trivalent_bordered() {
            Ok(())
        } else {
            Err(FatGraphError::NotTrivalent)
        }
    }

    /// Genus of a bordered fatgraph.
    pub fn genus(&self) -> Result<usize, FatGraphError> {
        self.require_bordered()?;
        self.validate().genus.ok_or_else(|| FatGraphError::Malformed("odd Euler characteristic".into()))
    }

    /// Darts in order of traversal of the boundary cycle, starting at the tail.
    pub fn boundary_order(&self) -> Result<Vec<Dart>, FatGraphError> {
        self.require_bordered()?;
        Ok(self.faces[0].iter().map(|&d| Dart(d)).collect())
    }

    /// Position of `d` along the boundary cycle (the tail is at 0).
    ///
    /// Only meaningful for bordered graphs.
    pub fn position(&self, d: Dart) -> usize {
        self.pos[d.index()] as usize
    }

    /// The preferred orientation of the edge containing `d`.
    pub fn preferred(&self, d: Dart) -> Dart {
        let e = self.inv(d);
        if self.position(d) < self.position(e) {
            d
        } else {
            e
        }
    }

    pub fn is_preferred(&self, d: Dart) -> bool {
        self.preferred(d) == d
    }

    /// Preferred darts of all edges, in boundary order.
    pub fn preferred_darts(&self) -> Vec<Dart> {
        let mut out: Vec<Dart> = self.darts().filter(|&d| self.is_preferred(d)).collect();
        out.sort_by_key(|&d| self.position(d));
        out
    }

    pub fn is_tail_edge(&self, d: Dart) -> bool {
        d.0 == self.tail || self.inv[d.index()] == self.tail
    }

    pub fn check_dart(&self, d: Dart) -> Result<(), FatGraphError> {
        if d.index() < self.num_darts() {
            Ok(())
        } else {
            Err(FatGraphError::NoSuchDart(d))
        }
    }

    /// Whitehead move on the edge containing `d`.
    ///
    /// With `d` pointing to the vertex `(d, a1, a2)` and its reverse to
    /// `(d', b1, b2)`, the result has vertices `(d', a2, b1)` and
    /// `(d, b2, a1)`. Every dart keeps its id. Moving twice on the same
    /// edge gives back the original graph with the two darts of the edge
    /// exchanged, which is the same fatgraph up to its unique isomorphism.
    pub fn whitehead_move(&self, d: Dart) -> Result<FatGraph, FatGraphError> {
        self.check_dart(d)?;
        if self.is_tail_edge(d) {
            return Err(FatGraphError::TailMove);
        }
        let db = self.inv(d);
        if self.valence(d) != 3 || self.valence(db) != 3 || self.vertex(d) == self.vertex(db) {
            return Err(FatGraphError::NotTrivalent);
        }
        let a1 = self.rot(d);
        let a2 = self.rot(a1);
        let b1 = self.rot(db);
        let b2 = self.rot(b1);
        let mut rot = self.rot.clone();
        let mut set = |x: Dart, y: Dart| rot[x.index()] = y.0;
        set(db, a2);
        set(a2, b1);
        set(b1, db);
        set(d, b2);
        set(b2, a1);
        set(a1, d);
        FatGraph::new(self.inv.clone(), rot, self.tail())
    }

    /// Renumbers darts by boundary position.
    pub fn canonical_code(&self) -> Result<CanonicalCode, FatGraphError> {
        self.require_bordered()?;
        let order = &self.faces[0];
        Ok(CanonicalCode(order.iter().map(|&d| self.pos[self.inv[d as usize] as usize]).collect()))
    }

    /// Isomorphic copy with darts renumbered by boundary position, so the
    /// tail is dart 0 and its reverse is the last dart.
    pub fn canonical(&self) -> Result<FatGraph, FatGraphError> {
        let code = self.canonical_code()?;
        FatGraph::from_canonical_code(&code)
    }

    /// Rebuilds the bordered fatgraph with the given canonical code.
    pub fn from_canonical_code(code: &CanonicalCode) -> Result<FatGraph, FatGraphError> {
        let n = code.0.len();
        if n == 0 {
            return Err(FatGraphError::Malformed("empty code".into()));
        }
        let inv = code.0.clone();
        check_permutation(&inv, "canonical code")?;
        // boundary successor is d -> d+1, so rot = inv o next
        let rot: Vec<u32> = (0..n).map(|d| inv[(d + 1) % n]).collect();
        let g = FatGraph::new(inv, rot, Dart(0))?;
        g.require_bordered()?;
        Ok(g)
    }

    /// Edges as `(smaller dart, larger dart)`, sorted.
    pub fn edges(&self) -> Vec<(Dart, Dart)> {
        self.darts().filter(|d| d.0 < self.inv[d.index()]).map(|d| (d, self.inv(d))).collect()
    }

    pub fn inv_slice(&self) -> &[u32] {
        &self.inv
    }

    pub fn rot_slice(&self) -> &[u32] {
        &self.rot
    }
}

impl fmt::Display for FatGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&io::write_fat(self))
    }
}

impl FromStr for FatGraph {
    type Err = FatGraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        io::parse_fat(s)
    }
}

fn check_permutation(p: &[u32], what: &str) -> Result<(), FatGraphError> {
    let mut seen = vec![false; p.len()];
    for &x in p {
        let x = x as usize;
        if x >= p.len() || seen[x] {
            return Err(FatGraphError::Malformed(format!("{what} is not a permutation")));
        }
        seen[x] = true;
    }
    Ok(())
}

fn cycles(p: &[u32]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut d = s;
        while !seen[d] {
            seen[d] = true;
            c.push(d as u32);
            d = p[d] as usize;
        }
        out.push(c);
    }
    out
}

/// One Whitehead move inside a [`MoveSequence`].
#[derive(Clone, Debug)]
pub struct MoveStep {
    /// A dart of the edge the move was performed on, in the source graph.
    pub dart: Dart,
    pub result: FatGraph,
    pub kind: MoveType,
}

/// A composable list of Whitehead moves.
#[derive(Clone, Debug)]
pub struct MoveSequence {
    start: FatGraph,
    steps: Vec<MoveStep>,
}

impl MoveSequence {
    pub fn new(start: FatGraph) -> Self {
        MoveSequence { start, steps: Vec::new() }
    }

    pub fn start(&self) -> &FatGraph {
        &self.start
    }

    pub fn end(&self) -> &FatGraph {
        self.steps.last().map(|s| &s.result).unwrap_or(&self.start)
    }

    pub fn steps(&self) -> &[MoveStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Performs a move on the current end graph and records it.
    pub fn push(&mut self, d: Dart) -> Result<&FatGraph, FatGraphError> {
        let g = self.end();
        let kind = classify_move(g, d)?;
        let result = g.whitehead_move(d)?;
        self.steps.push(MoveStep { dart: d, result, kind });
        Ok(self.end())
    }

    /// Appends `other`, which must start at a graph identical to our end.
    pub fn extend(&mut self, other: &MoveSequence) -> Result<(), FatGraphError> {
        if other.start != *self.end() {
            return Err(FatGraphError::NonComposable(self.steps.len()));
        }
        self.steps.extend(other.steps.iter().cloned());
        Ok(())
    }

    /// Source graph of step `k`.
    pub fn source(&self, k: usize) -> &FatGraph {
        if k == 0 {
            &self.start
        } else {
            &self.steps[k - 1].result
        }
    }

    /// The reversed path. Each move is undone by moving again on the same
    /// edge, which returns the source graph up to exchanging the two darts
    /// of that edge; the reversed sequence therefore ends at a relabeled
    /// copy of the original start.
    pub fn inverse(&self) -> Result<MoveSequence, FatGraphError> {
        let mut out = MoveSequence::new(self.end().clone());
        for step in self.steps.iter().rev() {
            out.push(step.dart)?;
        }
        Ok(out)
    }

    /// The same moves replayed on a graph isomorphic to our start, through
    /// the isomorphism matching boundary positions.
    pub fn transfer(&self, onto: &FatGraph) -> Result<MoveSequence, FatGraphError> {
        if self.start.canonical_code()? != onto.canonical_code()? {
            return Err(FatGraphError::NonComposable(0));
        }
        let order = onto.boundary_order()?;
        let map = |d: Dart| order[self.start.position(d)];
        let mut out = MoveSequence::new(onto.clone());
        for step in &self.steps {
            out.push(map(step.dart))?;
        }
        Ok(out)
    }

    /// Appends `other` after transferring it onto our end.
    pub fn extend_up_to_isomorphism(&mut self, other: &MoveSequence) -> Result<(), FatGraphError> {
        let moved = other.transfer(self.end())?;
        self.steps.extend(moved.steps);
        Ok(())
    }

    /// Checks that every step's result is the move of its source.
    pub fn check(&self) -> Result<(), FatGraphError> {
        for (k, step) in self.steps.iter().enumerate() {
            let expect = self.source(k).whitehead_move(step.dart)?;
            if expect != step.result {
                return Err(FatGraphError::NonComposable(k));
            }
        }
        Ok(())
    }

    /// Move counts per `(kind, direction)`.
    pub fn kind_histogram(&self) -> BTreeMap<MoveType, usize> {
        let mut h = BTreeMap::new();
        for s in &self.steps {
            *h.entry(s.kind).or_insert(0) += 1;
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chorddiag::fatgraph_from_word;
    use crate::freegroup::Word;

    fn s1() -> FatGraph {
        fatgraph_from_word(&"2 -1 -2 1".parse::<Word>().unwrap()).unwrap()
    }

    #[test]
    fn symplectic_genus_one_validates() {
        let g = s1();
        let r = g.validate();
        assert_eq!(r.boundary_cycles, 1);
        assert_eq!(r.genus, Some(1));
        assert_eq!(r.edges, 5);
        assert!(r.is_trivalent_bordered());
    }

    #[test]
    fn boundary_order_starts_at_tail() {
        let g = s1();
        let order = g.boundary_order().unwrap();
        assert_eq!(order.len(), 10);
        assert_eq!(order[0], g.tail());
        assert_eq!(*order.last().unwrap(), g.inv(g.tail()));
        // hand traversal: next(d) = inv(rot(d)) visits every dart once
        let mut d = g.tail();
        for expected in &order {
            assert_eq!(d, *expected);
            d = g.next(d);
        }
        assert_eq!(d, g.tail());
    }

    #[test]
    fn fixed_point_rejected() {
        let err = FatGraph::new(vec![0, 1], vec![0, 1], Dart(0)).unwrap_err();
        assert_eq!(err, FatGraphError::InvolutionFixedPoint(Dart(0)));
    }

    #[test]
    fn missing_tail_rejected() {
        // a single edge whose reverse sits at a bivalent vertex
        let err = FatGraph::new(vec![1, 0, 3, 2], vec![3, 2, 1, 0], Dart(0)).unwrap_err();
        assert!(matches!(err, FatGraphError::MissingTail(_)));
    }

    #[test]
    fn disconnected_rejected() {
        let err = FatGraph::new(vec![1, 0, 3, 2], vec![0, 1, 2, 3], Dart(0)).unwrap_err();
        assert_eq!(err, FatGraphError::Disconnected);
    }

    #[test]
    fn tail_move_rejected() {
        let g = s1();
        assert_eq!(g.whitehead_move(g.tail()).unwrap_err(), FatGraphError::TailMove);
    }

    #[test]
    fn move_twice_is_identity_up_to_relabeling() {
        let g = s1();
        for (d, _) in g.edges() {
            if g.is_tail_edge(d) {
                continue;
            }
            let h = g.whitehead_move(d).unwrap();
            assert_eq!(h.validate().genus, Some(1));
            assert!(h.validate().is_trivalent_bordered());
            let back = h.whitehead_move(d).unwrap();
            assert_eq!(back.canonical_code().unwrap(), g.canonical_code().unwrap());
        }
    }

    #[test]
    fn canonical_round_trip() {
        let g = s1();
        let c = g.canonical().unwrap();
        assert_eq!(c.tail(), Dart(0));
        assert_eq!(c.canonical_code().unwrap(), g.canonical_code().unwrap());
        let order = c.boundary_order().unwrap();
        assert!(order.iter().enumerate().all(|(k, d)| d.index() == k));
    }
}
