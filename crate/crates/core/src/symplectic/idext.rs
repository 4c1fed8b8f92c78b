//! Extensions of the identity homomorphisms of the mapping class group,
//! the Torelli group and the stabilizer of a Lagrangian to the Ptolemy
//! groupoid.
//!
//! Both ends of a move sequence are driven to a basepoint: the symplectic
//! chord diagram, with a prescribed symplectic basis (Torelli) or with the
//! `B`-chords spanning the Lagrangian. The Nielsen automorphism of the
//! closed comparison path is the extension's value.

use crate::fatgraph::{FatGraph, MoveSequence};
use crate::freegroup::{EndoMap, HVector};
use crate::marking::HMarking;
use crate::nielsen::{greedy, nielsen_of_sequence};

use super::macros::{Driver, Elementary, MarkedSymplectic};
use super::{
    integral_columns, lattice, normalize, rational_symplectic, reference_marking, transport_along, GeometricBasis,
    IntMatrix, Lagrangian, SymplecticError,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityMode {
    Mc,
    Torelli(GeometricBasis),
    Lagrangian(Lagrangian),
}

/// Value of an identity extension.
#[derive(Clone, Debug)]
pub struct IdentityExtension {
    /// Generators of the normalized end in those of the normalized start.
    pub map: EndoMap,
    /// The closed comparison path.
    pub path: MoveSequence,
    /// `H`-values of the generators of the normalized start.
    pub frame: Vec<HVector>,
}

impl IdentityExtension {
    /// Action of `map` on `H` in the standard coordinates: the matrix
    /// sending the value of each start generator to the value of its image.
    pub fn h_action(&self) -> IntMatrix {
        let f = lattice::from_columns(&self.frame);
        let finv = lattice::unimodular_inverse(&f).expect("frame is a basis");
        let ab = lattice::transpose(&self.map.abelianization());
        lattice::mul(&f, &lattice::mul(&ab, &finv))
    }
}

fn column(m: &IntMatrix, k: usize) -> HVector {
    HVector::new(m.iter().map(|r| r[k]).collect())
}

/// The symplectic basis the Torelli basepoint carries: the rational
/// algorithm on `b`, negated so that the basis read off a marked `S_g`
/// reproduces its own generator values.
fn torelli_target(b: &GeometricBasis) -> Result<IntMatrix, SymplecticError> {
    let cols = rational_symplectic(b.vectors())?;
    let m = integral_columns(&cols).ok_or(SymplecticError::BasisNotGeometric)?;
    Ok(m.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect())
}

fn drive_torelli(d: &mut Driver, target: &IntMatrix) -> Result<(), SymplecticError> {
    let genus = d.state().genus();
    for k in (1..=genus).rev() {
        d.point(&column(target, 2 * k - 1), k)?;
        let want = column(target, 2 * k - 2);
        let delta = |d: &Driver| {
            let a = column(&d.state().basis(), 2 * k - 2);
            d.state().coordinates(&want.sub(&a))
        };
        for j in 1..k {
            let u = delta(d);
            if u[2 * j - 2] != 0 {
                d.shear(j, k, false, u[2 * j - 2])?;
            }
            let u = delta(d);
            if u[2 * j - 1] != 0 {
                d.shear(j, k, true, u[2 * j - 1])?;
            }
        }
        let beta = delta(d)[2 * k - 1];
        let step = if beta > 0 { Elementary::IPlus(k) } else { Elementary::IMinus(k) };
        for _ in 0..beta.unsigned_abs() {
            d.apply(step)?;
        }
        if delta(d).iter().any(|&x| x != 0) {
            return Err(SymplecticError::BasisNotGeometric);
        }
    }
    Ok(())
}

/// The primitive generator of the first nonzero term of the filtration of
/// `lambda` by the spans of the leading basis vectors, in the current
/// basis coordinates.
fn filtration_vector(state: &MarkedSymplectic, lambda: &Lagrangian) -> HVector {
    let coords: IntMatrix = lambda
        .basis()
        .iter()
        .map(|v| {
            let mut c = state.coordinates(v);
            c.reverse();
            c
        })
        .collect();
    let (e, _) = lattice::echelon_with_transform(&coords);
    let row = e.iter().rev().find(|r| r.iter().any(|&x| x != 0)).expect("Lagrangian is nonzero");
    let mut c: Vec<i64> = row.iter().rev().map(|&x| x as i64).collect();
    let g = HVector::new(c.clone()).gcd();
    let last = c.iter().rposition(|&x| x != 0).expect("nonzero");
    let sign = c[last].signum();
    for x in c.iter_mut() {
        *x = *x / g * sign;
    }
    HVector::new(lattice::mul_vec(&state.basis(), &c))
}

fn drive_lagrangian(d: &mut Driver, lambda: &Lagrangian) -> Result<(), SymplecticError> {
    for k in (1..=d.state().genus()).rev() {
        let v = filtration_vector(d.state(), lambda);
        d.point(&v, k)?;
    }
    Ok(())
}

enum Target {
    Mc,
    Torelli(IntMatrix),
    Lagrangian(Lagrangian),
}

/// Path from `g` to the basepoint of `target`, with the marking there.
fn to_basepoint(
    g: &FatGraph,
    m: &HMarking,
    target: &Target,
) -> Result<(MoveSequence, MarkedSymplectic), SymplecticError> {
    let (mut s, c) = normalize(g)?;
    let state = MarkedSymplectic::new(c, transport_along(m, &s)?)?;
    let mut d = Driver::new(state)?;
    match target {
        Target::Mc => {}
        Target::Torelli(t) => drive_torelli(&mut d, t)?,
        Target::Lagrangian(l) => drive_lagrangian(&mut d, l)?,
    }
    let (tail, state) = d.finish();
    s.extend(&tail)?;
    Ok((s, state))
}

/// The identity extension of `mode` on `seq`, whose start carries the
/// reference `H`-marking.
pub fn identity_extension(seq: &MoveSequence, mode: &IdentityMode) -> Result<IdentityExtension, SymplecticError> {
    seq.check()?;
    let genus = seq.start().genus()?;
    let target = match mode {
        IdentityMode::Mc => Target::Mc,
        IdentityMode::Torelli(b) => {
            if b.vectors().len() != 2 * genus {
                return Err(SymplecticError::BasisNotGeometric);
            }
            Target::Torelli(torelli_target(b)?)
        }
        IdentityMode::Lagrangian(l) => {
            if l.basis().len() != genus {
                return Err(SymplecticError::NotLagrangian);
            }
            Target::Lagrangian(l.clone())
        }
    };
    let m = reference_marking(seq.start())?;
    let (p0, s0) = to_basepoint(seq.start(), &m, &target)?;
    let (p1, _) = to_basepoint(seq.end(), &transport_along(&m, seq)?, &target)?;
    let mut path = p0.inverse()?;
    path.extend_up_to_isomorphism(seq)?;
    path.extend_up_to_isomorphism(&p1)?;
    let map = nielsen_of_sequence(&path)?;
    let gens = greedy(s0.diagram().graph())?;
    let frame = gens.generators().iter().map(|&x| s0.marking().value(x).clone()).collect();
    Ok(IdentityExtension { map, path, frame })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chorddiag::symplectic_diagram;
    use crate::symplectic::{h_basis, standard_marking};

    fn walk(g: &FatGraph, darts: &[usize]) -> MoveSequence {
        let mut s = MoveSequence::new(g.clone());
        for &k in darts {
            let e: Vec<_> = s.end().edges().into_iter().map(|(d, _)| d).filter(|&d| !s.end().is_tail_edge(d)).collect();
            s.push(e[k % e.len()]).unwrap();
        }
        s
    }

    #[test]
    fn empty_sequence_gives_identity() {
        let g = symplectic_diagram(2).unwrap();
        let s = MoveSequence::new(g.clone());
        let b = h_basis(&g, &standard_marking(&g).unwrap()).unwrap();
        let l = Lagrangian::new(vec![HVector::unit(4, 1), HVector::unit(4, 3)]).unwrap();
        for mode in [IdentityMode::Mc, IdentityMode::Torelli(b), IdentityMode::Lagrangian(l)] {
            assert!(identity_extension(&s, &mode).unwrap().map.is_identity(), "{mode:?}");
        }
    }

    #[test]
    fn five_left_slides_close_up() {
        use crate::chorddiag::{chord_slide, SlideDirection};
        // five left slides of the last point of S_1 compose to the slide
        // A -> -B, B -> A + B
        let s = MarkedSymplectic::basepoint(1).unwrap();
        let mut c = s.diagram().clone();
        let mut seq = MoveSequence::new(c.graph().clone());
        for _ in 0..5 {
            let (step, next) = chord_slide(&c, 3, SlideDirection::Left).unwrap();
            seq.extend(&step).unwrap();
            c = next;
        }
        let f = vec![vec![0, 1], vec![-1, 1]];
        assert_eq!(crate::symplectic::sp_of_sequence(&seq, s.marking()).unwrap().matrix(), &f);
        let ext = identity_extension(&seq, &IdentityMode::Mc).unwrap();
        assert_eq!(lattice::mul(&ext.h_action(), &s.basis()), lattice::mul(&s.basis(), &f));
    }

    #[test]
    fn torelli_and_lagrangian_certificates() {
        let g = symplectic_diagram(2).unwrap();
        let b = h_basis(&g, &standard_marking(&g).unwrap()).unwrap();
        let l = Lagrangian::new(vec![HVector::new(vec![1, 0, 1, 0]), HVector::new(vec![0, 1, 0, -1])]).unwrap();
        for darts in [vec![0, 3], vec![5, 1, 2], vec![7, 7, 2, 4]] {
            let s = walk(&g, &darts);
            let t = identity_extension(&s, &IdentityMode::Torelli(b.clone())).unwrap();
            assert!(lattice::transpose(&t.map.abelianization()) == lattice::identity(4), "{darts:?}");
            let e = identity_extension(&s, &IdentityMode::Lagrangian(l.clone())).unwrap();
            let m = e.h_action();
            for v in l.basis() {
                assert!(l.contains(&HVector::new(lattice::mul_vec(&m, v.coords()))));
            }
        }
    }
}
