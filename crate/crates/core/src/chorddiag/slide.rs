//! Chord slides and the chord slide algorithm.

use crate::fatgraph::{FatGraph, MoveSequence};
use crate::freegroup::Word;

use super::{fatgraph_from_word, ChordDiagram, ChordError};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SlideDirection {
    Left,
    Right,
}

/// Slides the chord end at point `p` along the chord whose end is the
/// neighboring point `q` in `direction`: a move on the core edge between
/// the two points followed by a move on that chord. When `p` and `q` share
/// the last vertex the first move is already made. Branch reduction then
/// returns to a chord diagram.
///
/// The end at `p` lands next to the other end `q'` of the chord at `q`:
/// immediately right of `q'` for a right slide, left for a left slide,
/// except when `q'` is the last point, where branch reduction reorders
/// the core (see [`slide_pairing`]).
pub fn chord_slide(
    c: &ChordDiagram,
    p: usize,
    direction: SlideDirection,
) -> Result<(MoveSequence, ChordDiagram), ChordError> {
    let n = c.num_points();
    let q = match direction {
        SlideDirection::Right if p + 1 < n => p + 1,
        SlideDirection::Left if p > 0 => p - 1,
        _ => return Err(ChordError::NoNeighbor(p)),
    };
    let mut s = MoveSequence::new(c.graph().clone());
    if p.max(q) + 1 < n {
        let e = c.core_edge_after(p.min(q)).ok_or(ChordError::NoNeighbor(p))?;
        s.push(e)?;
    }
    s.push(c.points()[q])?;
    let tail = super::branch_reduce(s.end())?;
    s.extend(&tail)?;
    let out = ChordDiagram::from_fatgraph(s.end())?;
    Ok((s, out))
}

/// `prod_{i=g}^{1} [x_{2i}, x_{2i-1}^-1]`.
pub fn symplectic_word(genus: usize) -> Word {
    let mut letters = Vec::with_capacity(4 * genus);
    for i in (1..=genus as i32).rev() {
        letters.extend([2 * i, -(2 * i - 1), -2 * i, 2 * i - 1]);
    }
    Word::from_reduced(letters).expect("reduced")
}

pub fn symplectic_diagram(genus: usize) -> Result<FatGraph, ChordError> {
    fatgraph_from_word(&symplectic_word(genus))
}

/// Whether `c` is the symplectic chord diagram.
pub fn is_symplectic(c: &ChordDiagram) -> bool {
    c.read_word() == symplectic_word(c.genus())
}

/// Effect of a slide on the chord pairing: the new pairing and the new
/// position of every old point. `None` when there is no neighbor, or when
/// the slide runs along the chord through the last point, whose outcome
/// depends on more than the pairing.
pub fn slide_pairing(pairing: &[usize], p: usize, direction: SlideDirection) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = pairing.len();
    let q = match direction {
        SlideDirection::Right if p + 1 < n => p + 1,
        SlideDirection::Left if p > 0 => p - 1,
        _ => return None,
    };
    let target = pairing[q];
    if target + 1 == n || target == p {
        return None;
    }
    let mut order: Vec<usize> = (0..n).filter(|&x| x != p).collect();
    let k = order.iter().position(|&x| x == target).expect("target present");
    order.insert(if direction == SlideDirection::Right { k + 1 } else { k }, p);
    let mut moved = vec![0; n];
    for (k, &x) in order.iter().enumerate() {
        moved[x] = k;
    }
    let next = order.iter().map(|&x| moved[pairing[x]]).collect();
    Some((next, moved))
}

fn pairing_of(c: &ChordDiagram) -> Vec<usize> {
    (0..c.num_points()).map(|p| c.partner(p)).collect()
}

/// The block chords at `s`: the right end of `b`, and both ends of `a`.
fn block(pairing: &[usize], s: usize) -> Option<(usize, usize, usize)> {
    let b1 = pairing[s];
    let a0 = (s + 1..b1).find(|&p| pairing[p] > b1)?;
    Some((b1, a0, pairing[a0]))
}

/// Shortest slide sequence, touching nothing left of `s`, after which the
/// block chords at `s` avoid the last point.
fn free_last_point(pairing: &[usize], s: usize) -> Option<Vec<(usize, SlideDirection)>> {
    let n = pairing.len();
    let good = |pt: &[usize]| block(pt, s).is_some_and(|(b1, _, a1)| b1 + 1 < n && a1 + 1 < n);
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    seen.insert(pairing.to_vec());
    queue.push_back((pairing.to_vec(), Vec::new()));
    while let Some((pt, path)) = queue.pop_front() {
        if good(&pt) {
            return Some(path);
        }
        for p in s..n {
            for dir in [SlideDirection::Left, SlideDirection::Right] {
                let Some((next, moved)) = slide_pairing(&pt, p, dir) else { continue };
                if moved[p] < s || !seen.insert(next.clone()) {
                    continue;
                }
                let mut longer = path.clone();
                longer.push((p, dir));
                queue.push_back((next, longer));
            }
        }
    }
    None
}

/// Chord slides from `c` to the symplectic chord diagram.
///
/// Blocks of four points are completed from the left. With `b` the chord
/// at the first free point `s` and `a` the crossing chord with the leftmost
/// end, every other end between `s` and the right end of `a` is slid right
/// along `a` or `b` until it leaves the block. A short search first makes
/// sure neither `a` nor `b` runs through the last point, which cannot be
/// slid past.
pub fn slide_normal_form(c: &ChordDiagram) -> Result<(MoveSequence, ChordDiagram), ChordError> {
    let n = c.num_points();
    let mut seq = MoveSequence::new(c.graph().clone());
    let mut cur = c.clone();
    let mut s = 0;
    let mut apply = |cur: &mut ChordDiagram, p: usize, dir: SlideDirection| -> Result<(), ChordError> {
        let (step, next) = chord_slide(cur, p, dir)?;
        seq.extend(&step)?;
        *cur = next;
        Ok(())
    };
    while s + 4 < n {
        let pt = pairing_of(&cur);
        for (p, dir) in free_last_point(&pt, s).ok_or(ChordError::NotChordDiagram)? {
            apply(&mut cur, p, dir)?;
        }
        let mut pt = pairing_of(&cur);
        let (mut b1, mut a0, mut a1) = block(&pt, s).ok_or(ChordError::NotChordDiagram)?;
        while (a0, b1, a1) != (s + 1, s + 2, s + 3) {
            let own = |p: usize| p == s || p == a0 || p == b1 || p == a1;
            let z = (s + 1..a1).find(|&p| !own(p) && own(p + 1)).ok_or(ChordError::NotChordDiagram)?;
            let (next, moved) = slide_pairing(&pt, z, SlideDirection::Right).ok_or(ChordError::NotChordDiagram)?;
            apply(&mut cur, z, SlideDirection::Right)?;
            pt = next;
            (b1, a0, a1) = (moved[b1], moved[a0], moved[a1]);
            debug_assert_eq!(pt, pairing_of(&cur));
        }
        s += 4;
    }
    debug_assert!(is_symplectic(&cur));
    Ok((seq, cur))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn symplectic_words() {
        assert_eq!(symplectic_word(1).to_string(), "2 -1 -2 1");
        assert_eq!(symplectic_word(2).letters(), &[4, -3, -4, 3, 2, -1, -2, 1]);
        let c = ChordDiagram::from_fatgraph(&symplectic_diagram(3).unwrap()).unwrap();
        assert!(is_symplectic(&c));
        assert!(slide_normal_form(&c).unwrap().0.is_empty());
    }

    #[test]
    fn no_neighbor() {
        let c = ChordDiagram::from_fatgraph(&symplectic_diagram(1).unwrap()).unwrap();
        assert_eq!(chord_slide(&c, 0, SlideDirection::Left).unwrap_err(), ChordError::NoNeighbor(0));
        assert_eq!(chord_slide(&c, 3, SlideDirection::Right).unwrap_err(), ChordError::NoNeighbor(3));
    }

    #[test]
    fn pairing_prediction_matches_the_moves() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let mut checked = 0;
        for genus in 2..=3 {
            let mut c = ChordDiagram::from_fatgraph(&symplectic_diagram(genus).unwrap()).unwrap();
            for _ in 0..150 {
                let p = rng.gen_range(0..c.num_points());
                let dir = if rng.gen() { SlideDirection::Left } else { SlideDirection::Right };
                let Ok((_, next)) = chord_slide(&c, p, dir) else { continue };
                if let Some((pt, _)) = slide_pairing(&pairing_of(&c), p, dir) {
                    assert_eq!(pt, pairing_of(&next));
                    checked += 1;
                }
                c = next;
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn genus_two_example_normalizes() {
        let c = ChordDiagram::from_word(&"3 -2 -3 4 2 -1 -4 1".parse().unwrap()).unwrap();
        let (s, out) = slide_normal_form(&c).unwrap();
        assert!(is_symplectic(&out));
        assert_eq!(s.end(), out.graph());
    }
}
