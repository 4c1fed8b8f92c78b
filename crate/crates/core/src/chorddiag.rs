//! Linear chord diagrams: fatgraphs whose greedy tree is an initial segment
//! of the boundary cycle.
//!
//! The core runs left to right from the tail, chords are drawn above it,
//! and the last core vertex carries two chord ends. Core points are
//! numbered `0..4g` from the left; points `4g-2` and `4g-1` share the last
//! vertex. The boundary word of a diagram lists, left to right, the letter
//! `x_i` at the point the `i`-th generator leaves and `x_i^-1` where it
//! arrives; it is the class of the tail.

use std::fmt;

use thiserror::Error;

use crate::fatgraph::{Dart, FatGraph, FatGraphError, MoveSequence};
use crate::freegroup::Word;
use crate::nielsen::{greedy, GreedyTree};

mod reduce;
mod slide;

pub use reduce::branch_reduce;
pub use slide::{
    chord_slide, is_symplectic, slide_normal_form, slide_pairing, symplectic_diagram, symplectic_word, SlideDirection,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChordError {
    #[error(transparent)]
    Graph(#[from] FatGraphError),
    #[error("word is not reduced")]
    NotReduced,
    #[error("letter {0} does not occur exactly once with each sign")]
    LetterMultiplicity(u32),
    #[error("fatgraph is not a linear chord diagram")]
    NotChordDiagram,
    #[error("core point {0} has no neighbor in that direction")]
    NoNeighbor(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Checks that `w` uses each of `x_1..x_r` exactly once with each sign,
/// for an even `r`, and is reduced; returns `r`.
pub fn check_word(w: &[i32]) -> Result<usize, ChordError> {
    let rank = w.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0) as usize;
    let mut pos = vec![0u8; rank + 1];
    let mut neg = vec![0u8; rank + 1];
    for &l in w {
        if l > 0 {
            pos[l as usize] += 1;
        } else {
            neg[(-l) as usize] += 1;
        }
    }
    for i in 1..=rank {
        if pos[i] != 1 || neg[i] != 1 {
            return Err(ChordError::LetterMultiplicity(i as u32));
        }
    }
    if rank == 0 || !rank.is_multiple_of(2) {
        return Err(ChordError::LetterMultiplicity(rank as u32 + 1));
    }
    if w.windows(2).any(|p| p[0] == -p[1]) {
        return Err(ChordError::NotReduced);
    }
    Ok(rank)
}

/// Builds the chord diagram whose points read `w` left to right, with the
/// chord of `x_i` oriented from the point of `x_i` to the point of its
/// inverse. The result may have several boundary cycles.
///
/// Dart layout: the tail is dart 0 and its reverse dart 1; core edge `k`
/// (between the vertices of points `k-1` and `k`) has rightward dart `2k`;
/// the chord of `x_i` has dart `2(4g-1) + 2(i-1)` pointing toward the
/// point of the inverse letter.
pub fn build_graph(w: &[i32]) -> Result<FatGraph, ChordError> {
    let rank = check_word(w)?;
    let points = w.len();
    let last = points - 2;
    let n = 2 * (points - 1) + 2 * rank;
    let chord_base = 2 * (points - 1);
    let mut inv = vec![0u32; n];
    for d in 0..n / 2 {
        inv[2 * d] = (2 * d + 1) as u32;
        inv[2 * d + 1] = (2 * d) as u32;
    }
    // inbound chord dart at each point
    let inbound: Vec<u32> = w
        .iter()
        .map(|&l| {
            let i = l.unsigned_abs() as usize - 1;
            let x = (chord_base + 2 * i) as u32;
            if l < 0 {
                x
            } else {
                x + 1
            }
        })
        .collect();
    let mut rot = vec![0u32; n];
    rot[1] = 1;
    for k in 0..last {
        let west = (2 * k) as u32;
        let east = (2 * (k + 1) + 1) as u32;
        rot[west as usize] = east;
        rot[east as usize] = inbound[k];
        rot[inbound[k] as usize] = west;
    }
    let west = (2 * last) as u32;
    rot[west as usize] = inbound[last + 1];
    rot[inbound[last + 1] as usize] = inbound[last];
    rot[inbound[last] as usize] = west;
    Ok(FatGraph::new(inv, rot, Dart(0))?)
}

/// [`build_graph`], additionally requiring a single boundary cycle.
pub fn fatgraph_from_word(w: &Word) -> Result<FatGraph, ChordError> {
    let g = build_graph(w.letters())?;
    g.require_bordered()?;
    Ok(g)
}

/// A bordered fatgraph viewed as a linear chord diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDiagram {
    graph: FatGraph,
    tree: GreedyTree,
    /// Core darts pointing right, starting with the tail.
    core: Vec<Dart>,
    /// Chord dart pointing into each core point.
    points: Vec<Dart>,
}

impl ChordDiagram {
    /// Recognizes `g` as a chord diagram: every tree dart must precede
    /// every generator along the boundary.
    pub fn from_fatgraph(g: &FatGraph) -> Result<ChordDiagram, ChordError> {
        g.require_trivalent_bordered()?;
        let tree = greedy(g)?;
        let last_tree = tree.tree_edges().iter().map(|&d| g.position(d)).max().unwrap_or(0);
        let first_gen = tree.generators().iter().map(|&d| g.position(d)).min().unwrap_or(usize::MAX);
        if last_tree > first_gen {
            return Err(ChordError::NotChordDiagram);
        }
        // the tree is the initial boundary walk t, next(t), ...
        let core: Vec<Dart> = g.boundary_order()?[..tree.tree_edges().len()].to_vec();
        debug_assert_eq!(core, tree.tree_edges());
        let mut points = Vec::with_capacity(2 * tree.generators().len());
        let (&last, body) = core.split_last().expect("nonempty core");
        for &w in body {
            points.push(g.rot(g.rot(w)));
        }
        points.push(g.rot(g.rot(last)));
        points.push(g.rot(last));
        Ok(ChordDiagram { graph: g.clone(), tree, core, points })
    }

    pub fn from_word(w: &Word) -> Result<ChordDiagram, ChordError> {
        ChordDiagram::from_fatgraph(&fatgraph_from_word(w)?)
    }

    pub fn graph(&self) -> &FatGraph {
        &self.graph
    }

    pub fn into_graph(self) -> FatGraph {
        self.graph
    }

    pub fn tree(&self) -> &GreedyTree {
        &self.tree
    }

    pub fn genus(&self) -> usize {
        self.points.len() / 4
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// Inbound chord dart at each core point, left to right.
    pub fn points(&self) -> &[Dart] {
        &self.points
    }

    /// Rightward core darts, starting with the tail.
    pub fn core(&self) -> &[Dart] {
        &self.core
    }

    /// Core dart between points `p` and `p+1`, if they are on distinct
    /// vertices.
    pub fn core_edge_after(&self, p: usize) -> Option<Dart> {
        (p + 1 < self.core.len()).then(|| self.core[p + 1])
    }

    /// Signed generator letter at point `p`: `x_i` where generator `i`
    /// leaves, `x_i^-1` where it arrives.
    pub fn letter(&self, p: usize) -> i32 {
        -self.tree.letter_of(&self.graph, self.points[p]).expect("chord darts are generators")
    }

    /// The other end of the chord at point `p`.
    pub fn partner(&self, p: usize) -> usize {
        let l = self.letter(p);
        (0..self.points.len()).find(|&q| self.letter(q) == -l).expect("chords have two ends")
    }

    /// Boundary word, read left to right.
    pub fn read_word(&self) -> Word {
        Word::from_reduced((0..self.points.len()).map(|p| self.letter(p)).collect())
            .expect("boundary words of chord diagrams are reduced")
    }
}

/// Outcome of [`diagram_from_word`].
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum RealizationResult {
    /// The word is realized. `generator_of[i-1]` is the signed generator
    /// letter (of the diagram) carrying the input letter `x_i`; a negative
    /// entry records the replacement `x_i -> x_i^-1`.
    Accepted { diagram: ChordDiagram, generator_of: Vec<i32> },
    /// The attached diagram has this (odd) number of boundary cycles.
    Rejected { boundary_cycles: usize },
}

impl RealizationResult {
    pub fn is_accepted(&self) -> bool {
        matches!(self, RealizationResult::Accepted { .. })
    }

    /// The flipped input letters (1-based).
    pub fn replacements(&self) -> Vec<u32> {
        match self {
            RealizationResult::Accepted { generator_of, .. } => {
                generator_of.iter().enumerate().filter(|(_, &s)| s < 0).map(|(i, _)| i as u32 + 1).collect()
            }
            RealizationResult::Rejected { .. } => Vec::new(),
        }
    }
}

/// Decides whether a set of free generators with boundary word `w` arises,
/// up to inverting some generators, as the greedy generators of a bordered
/// fatgraph.
pub fn diagram_from_word(w: &Word) -> Result<RealizationResult, ChordError> {
    let g = build_graph(w.letters())?;
    let cycles = g.boundary_cycles();
    if cycles != 1 {
        return Ok(RealizationResult::Rejected { boundary_cycles: cycles });
    }
    let diagram = ChordDiagram::from_fatgraph(&g)?;
    let rank = w.max_index();
    let chord_base = g.num_darts() - 2 * rank;
    let generator_of = (0..rank)
        .map(|i| diagram.tree.letter_of(&g, Dart((chord_base + 2 * i) as u32)).expect("chords are generators"))
        .collect();
    Ok(RealizationResult::Accepted { diagram, generator_of })
}

/// Text form: `core: k`, then `chord i: p q s` for each generator `i`
/// with end points `p < q` (1-based) and `s` `+` when the generator runs
/// from `p` to `q`.
impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "core: {}", self.points.len())?;
        let rank = self.points.len() / 2;
        for i in 1..=rank as i32 {
            let p = (0..self.points.len()).find(|&p| self.letter(p).abs() == i).expect("letter present");
            let q = self.partner(p);
            let sign = if self.letter(p) > 0 { '+' } else { '-' };
            writeln!(f, "chord {}: {} {} {}", i, p + 1, q + 1, sign)?;
        }
        Ok(())
    }
}

/// Parses the text form written by the [`fmt::Display`] impl.
pub fn parse_diagram(s: &str) -> Result<ChordDiagram, ChordError> {
    let mut size = None;
    let mut letters: Vec<i32> = Vec::new();
    for (lineno, raw) in s.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| ChordError::Parse { line: lineno + 1, msg: msg.to_string() };
        let (head, rest) = line.split_once(':').ok_or_else(|| err("missing ':'"))?;
        let head: Vec<&str> = head.split_whitespace().collect();
        let fields: Vec<&str> = rest.split_whitespace().collect();
        match head.as_slice() {
            ["core"] => {
                let k: usize = fields.first().and_then(|x| x.parse().ok()).ok_or_else(|| err("bad point count"))?;
                size = Some(k);
                letters = vec![0; k];
            }
            ["chord", i] => {
                let k = size.ok_or_else(|| err("chord before core"))?;
                let i: i32 = i.parse().map_err(|_| err("bad chord index"))?;
                if fields.len() != 3 {
                    return Err(err("expected `p q +/-`"));
                }
                let p: usize = fields[0].parse().map_err(|_| err("bad point"))?;
                let q: usize = fields[1].parse().map_err(|_| err("bad point"))?;
                let sign = match fields[2] {
                    "+" => 1,
                    "-" => -1,
                    _ => return Err(err("orientation must be + or -")),
                };
                if p == 0 || q == 0 || p > k || q > k || p == q {
                    return Err(err("point out of range"));
                }
                if letters[p - 1] != 0 || letters[q - 1] != 0 {
                    return Err(err("point used twice"));
                }
                letters[p - 1] = sign * i;
                letters[q - 1] = -sign * i;
            }
            _ => return Err(err("unknown line")),
        }
    }
    if letters.is_empty() || letters.contains(&0) {
        return Err(ChordError::Parse { line: 0, msg: "some core point has no chord".into() });
    }
    ChordDiagram::from_word(&Word::from_reduced(letters).ok_or(ChordError::NotReduced)?)
}

/// The diagram of `g` after branch reduction, with the reducing moves.
pub fn chord_diagram_of(g: &FatGraph) -> Result<(MoveSequence, ChordDiagram), ChordError> {
    let s = branch_reduce(g)?;
    let c = ChordDiagram::from_fatgraph(s.end())?;
    Ok((s, c))
}
