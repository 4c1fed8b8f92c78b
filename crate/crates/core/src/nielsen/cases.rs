//! The six closed forms of the extended Nielsen representation.
//!
//! For a forward move with stubs `s0..s3` (as returned by
//! [`SectorPattern::of`]), with `x_i` the letters of `G`:
//!
//! * types 1, 2: the identity;
//! * type 3: `c = s0` is `x_i`, `b = s3` is a generator `x_j`, and
//!   `x_i -> x_j x_i`;
//! * type 4: `c = s0` is `x_i`, `b` runs against `s3`, and `x_i -> b^-1 x_i`;
//! * type 5: `b = s3` is `x_i`, `c` runs against `s0`, the new generator
//!   (the move edge) has index `j` in `G'`, and `x_k -> x_{k+1}` for
//!   `i <= k < j`, `x_j -> c x_i^-1`;
//! * type 6: as type 5 with `x_j -> x_i c^-1`.
//!
//! A move in the inverse direction gets the inverse of the closed form of
//! the move back.

use thiserror::Error;

use crate::fatgraph::{classify_move, Dart, Direction, FatGraph, FatGraphError, SectorPattern};
use crate::freegroup::{EndoMap, Word};

use super::{canonical_marking, greedy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error(transparent)]
    Graph(#[from] FatGraphError),
    /// A local edge expected to be a generator is not one.
    #[error("type {kind} move: expected {what} to be a generator")]
    NotGenerator { kind: u8, what: &'static str },
    /// The shape needed for a closed-form inverse does not hold.
    #[error("type {kind} move: {what}")]
    Shape { kind: u8, what: &'static str },
}

/// The closed form of a move, with the data it was assembled from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub kind: u8,
    pub direction: Direction,
    /// 1-based index of the generator that changes (types 3, 4) or
    /// disappears (types 5, 6), in the letters of the forward source.
    pub i: Option<usize>,
    /// Index of the new generator in the forward target (types 5, 6).
    pub j: Option<usize>,
    /// The word `b` (types 3, 4) or `c` (types 5, 6).
    pub word: Option<Word>,
    pub map: EndoMap,
}

/// Closed form of the Whitehead move on the edge of `d`.
pub fn closed_form(g: &FatGraph, d: Dart) -> Result<ClosedForm, ClosedFormError> {
    let t = classify_move(g, d)?;
    match t.direction {
        Direction::Forward => forward(g, d),
        Direction::Inverse => {
            let h = g.whitehead_move(d)?;
            let mut f = forward(&h, d)?;
            f.map = invert(&f)?;
            f.direction = Direction::Inverse;
            Ok(f)
        }
    }
}

fn forward(g: &FatGraph, d: Dart) -> Result<ClosedForm, ClosedFormError> {
    let t = classify_move(g, d)?;
    debug_assert_eq!(t.direction, Direction::Forward);
    let kind = t.kind;
    let rank = 2 * g.genus()?;
    let tree = greedy(g)?;
    let (_, stubs) = SectorPattern::of(g, d)?;
    let mut out =
        ClosedForm { kind, direction: Direction::Forward, i: None, j: None, word: None, map: EndoMap::identity(rank) };
    if kind <= 2 {
        return Ok(out);
    }
    let m = canonical_marking(g, &tree);
    let mut images: Vec<Word> = (1..=rank as i32).map(Word::letter).collect();
    match kind {
        3 | 4 => {
            let i = tree
                .letter_of(g, stubs[0])
                .filter(|&l| l > 0)
                .ok_or(ClosedFormError::NotGenerator { kind, what: "c" })? as usize;
            let b = if kind == 3 {
                let j = tree
                    .letter_of(g, stubs[3])
                    .filter(|&l| l > 0)
                    .ok_or(ClosedFormError::NotGenerator { kind, what: "b" })?;
                Word::letter(j)
            } else {
                m.value(g.inv(stubs[3])).clone()
            };
            let u = if kind == 3 { b.clone() } else { b.inverse() };
            images[i - 1] = u.mul(&Word::letter(i as i32));
            out.i = Some(i);
            out.word = Some(b);
        }
        _ => {
            let i = tree
                .letter_of(g, stubs[3])
                .filter(|&l| l > 0)
                .ok_or(ClosedFormError::NotGenerator { kind, what: "b" })? as usize;
            let c = m.value(g.inv(stubs[0])).clone();
            let h = g.whitehead_move(d)?;
            let j = greedy(&h)?
                .letter_of(&h, d)
                .ok_or(ClosedFormError::NotGenerator { kind, what: "the new edge" })?
                .unsigned_abs() as usize;
            if j < i {
                return Err(ClosedFormError::Shape { kind, what: "new generator precedes the old one" });
            }
            for k in i..j {
                images[k - 1] = Word::letter(k as i32 + 1);
            }
            let xi = Word::letter(i as i32);
            images[j - 1] = if kind == 5 { c.mul(&xi.inverse()) } else { xi.mul(&c.inverse()) };
            out.i = Some(i);
            out.j = Some(j);
            out.word = Some(c);
        }
    }
    out.map = EndoMap::new(images);
    Ok(out)
}

/// Inverse of a forward closed form, written out by hand for each shape.
fn invert(f: &ClosedForm) -> Result<EndoMap, ClosedFormError> {
    let rank = f.map.rank();
    let kind = f.kind;
    let mut images: Vec<Word> = (1..=rank as i32).map(Word::letter).collect();
    match kind {
        1 | 2 => {}
        3 | 4 => {
            let i = f.i.expect("index recorded");
            let b = f.word.as_ref().expect("word recorded");
            if b.letters().iter().any(|l| l.unsigned_abs() as usize == i) {
                return Err(ClosedFormError::Shape { kind, what: "b involves the changing generator" });
            }
            let u = if kind == 3 { b.inverse() } else { b.clone() };
            images[i - 1] = u.mul(&Word::letter(i as i32));
        }
        _ => {
            let (i, j) = (f.i.expect("index recorded"), f.j.expect("index recorded"));
            let c = f.word.as_ref().expect("word recorded");
            if c.letters().iter().any(|l| l.unsigned_abs() as usize == i) {
                return Err(ClosedFormError::Shape { kind, what: "c involves the disappearing generator" });
            }
            // letters x_{i+1}..x_j of the old graph are x_i..x_{j-1} of the new
            let shift: Vec<Word> = (1..=rank)
                .map(|m| if m > i && m <= j { Word::letter(m as i32 - 1) } else { Word::letter(m as i32) })
                .collect();
            let c_new = c.substitute(&shift);
            for m in i + 1..=j {
                images[m - 1] = Word::letter(m as i32 - 1);
            }
            let xj = Word::letter(j as i32);
            // type 5: x_i = x_j^-1 c; type 6: x_i = x_j c
            images[i - 1] = if kind == 5 { xj.inverse().mul(&c_new) } else { xj.mul(&c_new) };
        }
    }
    Ok(EndoMap::new(images))
}
