//! Chord slide macros realizing the elementary symplectic moves, and the
//! procedure putting a primitive vector on the leftmost chord.
//!
//! Every macro starts and ends at the symplectic chord diagram. The slide
//! lists are recorded once on `S_g`, relative to the first point of the
//! block they act on, and replayed on any marked symplectic diagram
//! through the isomorphism matching boundary positions. Pair `i` occupies
//! the block starting at point `4(g - i)`.

use std::collections::HashMap;

use crate::chorddiag::{chord_slide, is_symplectic, symplectic_diagram, ChordDiagram, SlideDirection};
use crate::fatgraph::{FatGraph, MoveSequence};
use crate::freegroup::HVector;
use crate::marking::{HMarking, VerifyLevel};

use super::{chord_basis, lattice, standard_marking, transport_along, IntMatrix, SymplecticError};

use SlideDirection::{Left as L, Right as R};

/// The elementary moves. Pair indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Elementary {
    /// `A_i -> A_i + B_i`
    IPlus(usize),
    /// `A_i -> A_i - B_i`
    IMinus(usize),
    /// `B_i -> B_i + A_i`
    IIPlus(usize),
    /// `B_i -> B_i - A_i`
    IIMinus(usize),
    /// `A_i -> B_i -> -A_i`
    III(usize),
    /// `A_i -> -B_i -> -A_i`
    IIIInverse(usize),
    /// Swaps pairs `i` and `j`.
    IV(usize, usize),
    /// `A_i -> A_i + A_{i+1}`, `B_{i+1} -> B_{i+1} - B_i`
    VPlus(usize),
    /// `A_i -> A_i - A_{i+1}`, `B_{i+1} -> B_{i+1} + B_i`
    VMinus(usize),
}

impl Elementary {
    fn check(&self, genus: usize) -> Result<(), SymplecticError> {
        let bad = |index| Err(SymplecticError::IndexOutOfRange { index, genus });
        match *self {
            Elementary::IV(i, j) => {
                for k in [i, j] {
                    if k == 0 || k > genus {
                        return bad(k);
                    }
                }
                if i == j {
                    return bad(j);
                }
                Ok(())
            }
            Elementary::VPlus(i) | Elementary::VMinus(i) if i == 0 || i >= genus => bad(i),
            Elementary::IPlus(i)
            | Elementary::IMinus(i)
            | Elementary::IIPlus(i)
            | Elementary::IIMinus(i)
            | Elementary::III(i)
            | Elementary::IIIInverse(i)
                if i == 0 || i > genus =>
            {
                bad(i)
            }
            _ => Ok(()),
        }
    }

    /// Columns are the new basis vectors in the old basis.
    pub fn matrix(&self, genus: usize) -> Result<IntMatrix, SymplecticError> {
        self.check(genus)?;
        let mut m = lattice::identity(2 * genus);
        let a = |i: usize| 2 * i - 2;
        let b = |i: usize| 2 * i - 1;
        match *self {
            Elementary::IPlus(i) | Elementary::IMinus(i) => {
                let s = if matches!(self, Elementary::IPlus(_)) { 1 } else { -1 };
                m[b(i)][a(i)] = s;
            }
            Elementary::IIPlus(i) | Elementary::IIMinus(i) => {
                let s = if matches!(self, Elementary::IIPlus(_)) { 1 } else { -1 };
                m[a(i)][b(i)] = s;
            }
            Elementary::III(i) | Elementary::IIIInverse(i) => {
                let s = if matches!(self, Elementary::III(_)) { 1 } else { -1 };
                m[a(i)][a(i)] = 0;
                m[b(i)][b(i)] = 0;
                m[b(i)][a(i)] = s;
                m[a(i)][b(i)] = -s;
            }
            Elementary::IV(i, j) => {
                for (x, y) in [(a(i), a(j)), (b(i), b(j))] {
                    m[x][x] = 0;
                    m[y][y] = 0;
                    m[x][y] = 1;
                    m[y][x] = 1;
                }
            }
            Elementary::VPlus(i) | Elementary::VMinus(i) => {
                let s = if matches!(self, Elementary::VPlus(_)) { 1 } else { -1 };
                m[a(i + 1)][a(i)] = s;
                m[b(i)][b(i + 1)] = -s;
            }
        }
        Ok(m)
    }

    pub fn inverse(&self) -> Elementary {
        match *self {
            Elementary::IPlus(i) => Elementary::IMinus(i),
            Elementary::IMinus(i) => Elementary::IPlus(i),
            Elementary::IIPlus(i) => Elementary::IIMinus(i),
            Elementary::IIMinus(i) => Elementary::IIPlus(i),
            Elementary::III(i) => Elementary::IIIInverse(i),
            Elementary::IIIInverse(i) => Elementary::III(i),
            Elementary::IV(i, j) => Elementary::IV(i, j),
            Elementary::VPlus(i) => Elementary::VMinus(i),
            Elementary::VMinus(i) => Elementary::VPlus(i),
        }
    }

    /// Decomposition into macros with recorded slide lists.
    fn atoms(&self) -> Vec<Elementary> {
        use Elementary::*;
        match *self {
            IV(i, j) if i > j => IV(j, i).atoms(),
            IV(i, j) if j == i + 1 => {
                vec![VPlus(i), IIIInverse(i), III(j), VMinus(i), III(j), III(i), VMinus(i)]
            }
            IV(i, j) => {
                let mut out = Vec::new();
                for k in (i..j).chain((i..j - 1).rev()) {
                    out.extend(IV(k, k + 1).atoms());
                }
                out
            }
            e => vec![e],
        }
    }
}

/// Shears changing `A_k` by `+-A_j` or `+-B_j` (for `j = k - 1`) and
/// keeping `B_k`; the pair `j` absorbs the compensating change.
#[derive(Clone, Copy, Debug)]
enum Shear {
    /// `A_k += s A_j`, `B_j -= s B_k`
    A(usize, i64),
    /// `A_k += s B_j`, `A_j += s B_k`
    B(usize, i64),
}

impl Shear {
    fn atoms(&self) -> Vec<Elementary> {
        use Elementary::*;
        match *self {
            Shear::A(j, s) => {
                let k = j + 1;
                let (v1, v2) = if s > 0 { (VPlus(j), VMinus(j)) } else { (VMinus(j), VPlus(j)) };
                vec![IMinus(j), IIPlus(j), IPlus(k), v1, IMinus(k), v2, III(j)]
            }
            Shear::B(j, s) => {
                let k = j + 1;
                let (v1, v2) = if s > 0 { (VPlus(j), VMinus(j)) } else { (VMinus(j), VPlus(j)) };
                vec![IPlus(j), IPlus(k), v1, IMinus(k), v2]
            }
        }
    }
}

/// A symplectic chord diagram with an `H`-marking.
#[derive(Clone, Debug)]
pub struct MarkedSymplectic {
    diagram: ChordDiagram,
    marking: HMarking,
}

impl MarkedSymplectic {
    pub fn new(diagram: ChordDiagram, marking: HMarking) -> Result<MarkedSymplectic, SymplecticError> {
        if !is_symplectic(&diagram) {
            return Err(SymplecticError::NotNormalForm);
        }
        if !marking.verify(diagram.graph(), VerifyLevel::HGeometric)?.passed() {
            return Err(SymplecticError::MarkingInvalid);
        }
        Ok(MarkedSymplectic { diagram, marking })
    }

    /// `S_g` with chords marked `{-A_i, B_i}`.
    pub fn basepoint(genus: usize) -> Result<MarkedSymplectic, SymplecticError> {
        let g = symplectic_diagram(genus)?;
        let marking = standard_marking(&g)?;
        Ok(MarkedSymplectic { diagram: ChordDiagram::from_fatgraph(&g)?, marking })
    }

    pub fn diagram(&self) -> &ChordDiagram {
        &self.diagram
    }

    pub fn marking(&self) -> &HMarking {
        &self.marking
    }

    pub fn genus(&self) -> usize {
        self.diagram.genus()
    }

    /// The symplectic basis `(A_1, B_1, ..., A_g, B_g)` as columns.
    pub fn basis(&self) -> IntMatrix {
        chord_basis(&self.diagram, &self.marking).expect("normal form")
    }

    /// Marking of the leftmost chord, `B_g`.
    pub fn leftmost(&self) -> HVector {
        let k = 2 * self.genus() - 1;
        HVector::new(self.basis().iter().map(|r| r[k]).collect())
    }

    /// Coordinates of `v` in [`basis`](Self::basis).
    pub fn coordinates(&self, v: &HVector) -> Vec<i64> {
        lattice::solve_unimodular(&self.basis(), v.coords()).expect("symplectic basis is unimodular")
    }

    /// Replays `path`, recorded on an isomorphic diagram, here.
    fn run(&self, path: &MoveSequence) -> Result<(MoveSequence, MarkedSymplectic), SymplecticError> {
        let s = path.transfer(self.diagram.graph())?;
        let marking = transport_along(&self.marking, &s)?;
        let diagram = ChordDiagram::from_fatgraph(s.end())?;
        debug_assert!(is_symplectic(&diagram));
        Ok((s, MarkedSymplectic { diagram, marking }))
    }
}

/// Slide paths of the macros, recorded on `S_g` and built on demand.
pub(super) struct MacroBook {
    genus: usize,
    base: FatGraph,
    paths: HashMap<Elementary, MoveSequence>,
}

impl MacroBook {
    pub(super) fn new(genus: usize) -> Result<MacroBook, SymplecticError> {
        Ok(MacroBook { genus, base: symplectic_diagram(genus)?, paths: HashMap::new() })
    }

    fn slides(&self, start: usize, list: &[(usize, SlideDirection)]) -> Result<MoveSequence, SymplecticError> {
        let mut c = ChordDiagram::from_fatgraph(&self.base)?;
        let mut s = MoveSequence::new(self.base.clone());
        for &(offset, dir) in list {
            let (step, next) = chord_slide(&c, start + offset, dir)?;
            s.extend(&step)?;
            c = next;
        }
        if !is_symplectic(&c) {
            return Err(SymplecticError::NotNormalForm);
        }
        Ok(s)
    }

    /// The path of `e` run backwards, moved back onto `S_g`.
    fn reversed(&mut self, e: Elementary) -> Result<MoveSequence, SymplecticError> {
        Ok(self.path(e)?.inverse()?.transfer(&self.base)?)
    }

    fn path(&mut self, e: Elementary) -> Result<MoveSequence, SymplecticError> {
        if let Some(p) = self.paths.get(&e) {
            return Ok(p.clone());
        }
        let block = |i: usize| 4 * (self.genus - i);
        let p = match e {
            Elementary::IPlus(i) => self.slides(block(i), &[(2, R)])?,
            Elementary::IIPlus(i) => self.slides(block(i), &[(1, L)])?,
            Elementary::IIMinus(i) => self.slides(block(i), &[(1, R)])?,
            Elementary::III(i) => self.slides(block(i), &[(1, R), (3, L)])?,
            Elementary::VPlus(i) => self.slides(block(i + 1), &[(3, R), (6, R), (6, L), (2, R), (1, R)])?,
            Elementary::IMinus(i) => self.reversed(Elementary::IPlus(i))?,
            Elementary::IIIInverse(i) => self.reversed(Elementary::III(i))?,
            Elementary::VMinus(i) => self.reversed(Elementary::VPlus(i))?,
            Elementary::IV(..) => unreachable!("composite"),
        };
        self.paths.insert(e, p.clone());
        Ok(p)
    }
}

/// Applies macros to a marked symplectic diagram, accumulating the path.
pub(super) struct Driver {
    book: MacroBook,
    state: MarkedSymplectic,
    seq: MoveSequence,
}

impl Driver {
    pub(super) fn new(state: MarkedSymplectic) -> Result<Driver, SymplecticError> {
        Ok(Driver {
            book: MacroBook::new(state.genus())?,
            seq: MoveSequence::new(state.diagram.graph().clone()),
            state,
        })
    }

    pub(super) fn state(&self) -> &MarkedSymplectic {
        &self.state
    }

    pub(super) fn finish(self) -> (MoveSequence, MarkedSymplectic) {
        (self.seq, self.state)
    }

    pub(super) fn apply(&mut self, e: Elementary) -> Result<(), SymplecticError> {
        e.check(self.state.genus())?;
        for atom in e.atoms() {
            self.run_atom(atom)?;
        }
        Ok(())
    }

    fn run_atom(&mut self, atom: Elementary) -> Result<(), SymplecticError> {
        let path = self.book.path(atom)?;
        let (s, next) = self.state.run(&path)?;
        self.seq.extend(&s)?;
        self.state = next;
        Ok(())
    }

    /// `A_k += s X_j` with `X` the `A` or `B` of pair `j < k`, keeping `B_k`
    /// and every pair other than `j` and `k`.
    pub(super) fn shear(&mut self, j: usize, k: usize, on_b: bool, s: i64) -> Result<(), SymplecticError> {
        let swap = j + 1 != k;
        if swap {
            self.apply(Elementary::IV(j, k - 1))?;
        }
        let sh = if on_b { Shear::B(k - 1, s.signum()) } else { Shear::A(k - 1, s.signum()) };
        for _ in 0..s.unsigned_abs() {
            for atom in sh.atoms() {
                self.run_atom(atom)?;
            }
        }
        if swap {
            self.apply(Elementary::IV(j, k - 1))?;
        }
        Ok(())
    }

    /// Moves the primitive vector `v`, which must lie in the span of pairs
    /// `1..=k`, onto `B_k` using only moves on those pairs.
    pub(super) fn point(&mut self, v: &HVector, k: usize) -> Result<(), SymplecticError> {
        use Elementary::*;
        let genus = self.state.genus();
        if v.rank() != 2 * genus || v.gcd() != 1 {
            return Err(SymplecticError::NotPrimitive);
        }
        let mut t = self.state.coordinates(v);
        if t[2 * k..].iter().any(|&x| x != 0) {
            return Err(SymplecticError::NotPrimitive);
        }
        // each pair into the closed first quadrant, then onto B_i
        for i in 1..=k {
            let (a, b) = (2 * i - 2, 2 * i - 1);
            while t[a] < 0 || t[b] < 0 {
                self.apply(III(i))?;
                t = self.state.coordinates(v);
            }
            while t[a] > 0 && t[b] > 0 {
                self.apply(if t[b] >= t[a] { IPlus(i) } else { IIPlus(i) })?;
                t = self.state.coordinates(v);
            }
            if t[a] > 0 {
                self.apply(IIIInverse(i))?;
                t = self.state.coordinates(v);
            }
        }
        // division across pairs, pushing everything to pair k
        for i in 1..k {
            let (d, e) = (2 * i - 1, 2 * i + 1);
            while t[d] > 0 {
                self.apply(if t[e] == 0 || t[e] > t[d] { IV(i, i + 1) } else { VMinus(i) })?;
                t = self.state.coordinates(v);
            }
        }
        let mut want = vec![0; 2 * genus];
        want[2 * k - 1] = 1;
        if t != want {
            return Err(SymplecticError::NotPrimitive);
        }
        Ok(())
    }
}

/// Runs the macro of `kind` on `s`.
pub fn sp_elementary(
    s: &MarkedSymplectic,
    kind: Elementary,
) -> Result<(MoveSequence, MarkedSymplectic), SymplecticError> {
    let mut d = Driver::new(s.clone())?;
    d.apply(kind)?;
    Ok(d.finish())
}

/// Slides after which the leftmost chord is marked by the primitive
/// vector `v`.
pub fn point_basis(s: &MarkedSymplectic, v: &HVector) -> Result<(MoveSequence, MarkedSymplectic), SymplecticError> {
    let mut d = Driver::new(s.clone())?;
    d.point(v, s.genus())?;
    Ok(d.finish())
}
