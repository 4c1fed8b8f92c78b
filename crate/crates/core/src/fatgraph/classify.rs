//! Six-way classification of Whitehead moves by the order in which the
//! boundary cycle traverses the four sectors around the move edge.

use std::fmt;

use super::{Dart, FatGraph, FatGraphError};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MoveType {
    /// 1 through 6.
    pub kind: u8,
    pub direction: Direction,
}

impl fmt::Display for MoveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.direction {
            Direction::Forward => write!(f, "{}", self.kind),
            Direction::Inverse => write!(f, "{}-inv", self.kind),
        }
    }
}

/// Traversal order of the four sectors around a move edge.
///
/// With the move edge `d` pointing to the vertex `(d, a1, a2)` and its
/// reverse to `(d', b1, b2)`, collapsing the edge leaves a four-valent
/// vertex with stubs `a1, a2, b1, b2` in counterclockwise order; sector `k`
/// lies between stub `k` and stub `k+1`, and is entered through the
/// inbound dart of stub `k`. `order[r]` is the `r`-th sector visited
/// from the tail. The same edge seen from its other dart relabels the
/// sectors by `k -> k + 2`; patterns are normalized so that the first
/// visited sector is 0 or 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SectorPattern(pub [u8; 4]);

impl SectorPattern {
    pub fn of(g: &FatGraph, d: Dart) -> Result<(SectorPattern, [Dart; 4]), FatGraphError> {
        g.check_dart(d)?;
        g.require_bordered()?;
        if g.is_tail_edge(d) {
            return Err(FatGraphError::TailMove);
        }
        let db = g.inv(d);
        if g.valence(d) != 3 || g.valence(db) != 3 {
            return Err(FatGraphError::NotTrivalent);
        }
        let (mut d, mut db) = (d, db);
        let mut stubs = stubs_of(g, d);
        let mut order = visit_order(g, &stubs);
        if order[0] >= 2 {
            std::mem::swap(&mut d, &mut db);
            stubs = stubs_of(g, d);
            order = visit_order(g, &stubs);
        }
        debug_assert!(order[0] < 2);
        Ok((SectorPattern(order), stubs))
    }

    /// Pattern of the same sectors after the move: the stubs rotate by one.
    pub fn after_move(self) -> SectorPattern {
        let mut o = self.0.map(|k| (k + 3) % 4);
        if o[0] >= 2 {
            o = o.map(|k| (k + 2) % 4);
        }
        SectorPattern(o)
    }
}

fn stubs_of(g: &FatGraph, d: Dart) -> [Dart; 4] {
    let a1 = g.rot(d);
    let a2 = g.rot(a1);
    let db = g.inv(d);
    let b1 = g.rot(db);
    let b2 = g.rot(b1);
    [a1, a2, b1, b2]
}

fn visit_order(g: &FatGraph, stubs: &[Dart; 4]) -> [u8; 4] {
    let mut idx = [0u8, 1, 2, 3];
    idx.sort_by_key(|&k| g.position(stubs[k as usize]));
    idx
}

/// Classifies the Whitehead move on the edge of `d`.
pub fn classify_move(g: &FatGraph, d: Dart) -> Result<MoveType, FatGraphError> {
    let (pattern, _) = SectorPattern::of(g, d)?;
    Ok(type_of_pattern(pattern))
}

/// Pattern table. Each type `k` occupies two patterns exchanged by the
/// move itself: the forward pattern `p` and the inverse `p.after_move()`.
/// Forward patterns are exactly those that visit sector 1 first.
pub fn type_of_pattern(p: SectorPattern) -> MoveType {
    for &(kind, fwd) in PATTERNS.iter() {
        if p.0 == fwd {
            return MoveType { kind, direction: Direction::Forward };
        }
        if p == SectorPattern(fwd).after_move() {
            return MoveType { kind, direction: Direction::Inverse };
        }
    }
    unreachable!("every sector pattern is classified: {p:?}")
}

/// Forward patterns of the six types. In the forward direction the stubs
/// play these parts (see `nielsen::closed_form`):
///
/// * type 2: stub 0 is always a generator;
/// * types 3 and 4: stub 0 is the generator `c` that changes, stub 3 the
///   edge `b` (inbound along `b` in type 3, against it in type 4);
/// * types 5 and 6: stub 3 is the generator `b` that disappears and
///   stub 0 the edge `c`, inbound against its preferred orientation.
const PATTERNS: [(u8, [u8; 4]); 6] =
    [(1, [1, 2, 3, 0]), (2, [1, 2, 0, 3]), (3, [1, 0, 3, 2]), (4, [1, 0, 2, 3]), (5, [1, 3, 2, 0]), (6, [1, 3, 0, 2])];
