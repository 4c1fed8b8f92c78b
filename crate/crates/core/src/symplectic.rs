//! Geometric bases of `H`, integral symplectic bases read off chord
//! diagrams, and the symplectic representation on Whitehead moves.
//!
//! `H = Z^2g` carries the form `omega(A_i, B_j) = delta_ij` in the
//! interleaved order `(A_1, B_1, ..., A_g, B_g)`. On the symplectic chord
//! diagram the chords of pair `i` carry `B_i` (the left chord, generator
//! `x_2i`) and `-A_i` (generator `x_{2i-1}`); negating the second gives a
//! symplectic basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::chorddiag::{branch_reduce, is_symplectic, slide_normal_form, symplectic_diagram, ChordDiagram, ChordError};
use crate::fatgraph::{Dart, FatGraph, FatGraphError, MoveSequence};
use crate::freegroup::{int_determinant, HVector};
use crate::marking::{HMarking, MarkingError, MarkingValue, VerifyLevel};
use crate::nielsen::{canonical_marking, greedy};

mod idext;
pub mod lattice;
mod macros;

pub use idext::{identity_extension, IdentityExtension, IdentityMode};
pub use lattice::IntMatrix;
pub use macros::{point_basis, sp_elementary, Elementary, MarkedSymplectic};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymplecticError {
    #[error(transparent)]
    Graph(#[from] FatGraphError),
    #[error(transparent)]
    Marking(#[from] MarkingError),
    #[error(transparent)]
    Chord(#[from] ChordError),
    #[error("H-marking is not geometric")]
    MarkingInvalid,
    #[error("vectors do not form a geometric basis")]
    BasisNotGeometric,
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("form is degenerate on the remaining vectors")]
    DegenerateForm,
    #[error("vectors do not span a Lagrangian direct summand")]
    NotLagrangian,
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("index {index} out of range for genus {genus}")]
    IndexOutOfRange { index: usize, genus: usize },
    #[error("diagram is not the symplectic chord diagram")]
    NotNormalForm,
}

/// The form `J` with `J[2i][2i+1] = 1`, `J[2i+1][2i] = -1`.
pub fn j_matrix(genus: usize) -> IntMatrix {
    let n = 2 * genus;
    let mut j = vec![vec![0; n]; n];
    for i in 0..genus {
        j[2 * i][2 * i + 1] = 1;
        j[2 * i + 1][2 * i] = -1;
    }
    j
}

/// Integer matrix with `M^T J M = J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpMatrix(IntMatrix);

impl SpMatrix {
    pub fn new(m: IntMatrix) -> Result<SpMatrix, SymplecticError> {
        let n = m.len();
        if n % 2 == 1 || m.iter().any(|r| r.len() != n) {
            return Err(SymplecticError::NotSymplectic);
        }
        let j = j_matrix(n / 2);
        if lattice::mul(&lattice::transpose(&m), &lattice::mul(&j, &m)) != j {
            return Err(SymplecticError::NotSymplectic);
        }
        Ok(SpMatrix(m))
    }

    pub fn identity(genus: usize) -> SpMatrix {
        SpMatrix(lattice::identity(2 * genus))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn genus(&self) -> usize {
        self.0.len() / 2
    }

    pub fn mul(&self, other: &SpMatrix) -> SpMatrix {
        SpMatrix(lattice::mul(&self.0, &other.0))
    }

    pub fn inverse(&self) -> SpMatrix {
        // M^-1 = J^-1 M^T J = -J M^T J
        let j = j_matrix(self.genus());
        let m = lattice::mul(&j, &lattice::mul(&lattice::transpose(&self.0), &j));
        SpMatrix(m.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0 == lattice::identity(self.0.len())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.0)
    }
}

/// Ordered basis of `H` whose intersection matrix has `-1` only above
/// and `+1` only below the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricBasis(Vec<HVector>);

impl GeometricBasis {
    pub fn new(vectors: Vec<HVector>) -> Result<GeometricBasis, SymplecticError> {
        let n = vectors.len();
        if n % 2 == 1 || vectors.iter().any(|v| v.rank() != n) {
            return Err(SymplecticError::BasisNotGeometric);
        }
        for i in 0..n {
            for j in i + 1..n {
                let w = vectors[i].omega(&vectors[j]);
                if w != 0 && w != -1 {
                    return Err(SymplecticError::BasisNotGeometric);
                }
            }
        }
        let det = int_determinant(&lattice::from_columns(&vectors));
        if det.abs() != BigInt::one() {
            return Err(SymplecticError::BasisNotGeometric);
        }
        Ok(GeometricBasis(vectors))
    }

    pub fn vectors(&self) -> &[HVector] {
        &self.0
    }

    pub fn intersection_matrix(&self) -> IntMatrix {
        self.0.iter().map(|x| self.0.iter().map(|y| x.omega(y)).collect()).collect()
    }
}

/// `g` vectors spanning an isotropic direct summand of rank `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lagrangian(Vec<HVector>);

impl Lagrangian {
    pub fn new(basis: Vec<HVector>) -> Result<Lagrangian, SymplecticError> {
        let g = basis.len();
        if basis.iter().any(|v| v.rank() != 2 * g) {
            return Err(SymplecticError::NotLagrangian);
        }
        if basis.iter().any(|x| basis.iter().any(|y| x.omega(y) != 0)) {
            return Err(SymplecticError::NotLagrangian);
        }
        if !is_direct_summand(&basis) {
            return Err(SymplecticError::NotLagrangian);
        }
        Ok(Lagrangian(basis))
    }

    pub fn basis(&self) -> &[HVector] {
        &self.0
    }

    /// Whether `v` lies in the span over `Z`.
    pub fn contains(&self, v: &HVector) -> bool {
        let mut rows: Vec<HVector> = self.0.clone();
        rows.push(v.clone());
        // v is in the saturated span iff adding it keeps the rank, and
        // the span is saturated
        rank_of(&rows) == self.0.len()
    }
}

fn rank_of(vectors: &[HVector]) -> usize {
    let m: IntMatrix = vectors.iter().map(|v| v.coords().to_vec()).collect();
    let (e, _) = lattice::echelon_with_transform(&m);
    e.iter().filter(|r| r.iter().any(|&x| x != 0)).count()
}

/// The vectors are independent and every maximal minor has gcd 1.
fn is_direct_summand(vectors: &[HVector]) -> bool {
    let k = vectors.len();
    let n = vectors.first().map_or(0, |v| v.rank());
    let mut g = BigInt::zero();
    let mut rows = Vec::with_capacity(k);
    fn walk(start: usize, n: usize, k: usize, rows: &mut Vec<usize>, vectors: &[HVector], g: &mut BigInt) {
        if rows.len() == k {
            let minor: IntMatrix = vectors.iter().map(|v| rows.iter().map(|&r| v.coords()[r]).collect()).collect();
            *g = num_integer::Integer::gcd(g, &int_determinant(&minor));
            return;
        }
        for r in start..n {
            rows.push(r);
            walk(r + 1, n, k, rows, vectors, g);
            rows.pop();
        }
    }
    walk(0, n, k, &mut rows, vectors, &mut g);
    g.is_one()
}

/// The `H`-values of the greedy generators, in order.
pub fn h_basis(g: &FatGraph, m: &HMarking) -> Result<GeometricBasis, SymplecticError> {
    if !m.verify(g, VerifyLevel::HGeometric)?.passed() {
        return Err(SymplecticError::MarkingInvalid);
    }
    let tree = greedy(g)?;
    GeometricBasis::new(tree.generators().iter().map(|&x| m.value(x).clone()).collect())
}

/// Carries `m` along every move of `s`.
pub fn transport_along<K: MarkingValue>(
    m: &crate::marking::Marking<K>,
    s: &MoveSequence,
) -> Result<crate::marking::Marking<K>, SymplecticError> {
    let mut m = m.clone();
    for (k, step) in s.steps().iter().enumerate() {
        m = m.transport(s.source(k), step.dart)?;
    }
    Ok(m)
}

/// Sends generator `x_{2i-1}` to `-A_i` and `x_{2i}` to `B_i`.
fn chord_labels(rank: usize) -> IntMatrix {
    let mut rows = vec![vec![0; rank]; rank];
    for (k, row) in rows.iter_mut().enumerate() {
        row[k] = if k % 2 == 0 { -1 } else { 1 };
    }
    rows
}

/// The symplectic chord diagram of genus `g` with chords marked
/// `{-A_i, B_i}`.
pub fn basepoint(genus: usize) -> Result<(FatGraph, HMarking), SymplecticError> {
    let g = symplectic_diagram(genus)?;
    let m = standard_marking(&g)?;
    Ok((g, m))
}

/// The `H`-marking of `g` in which the `k`-th generator has the value the
/// basepoint gives its `k`-th chord.
pub fn standard_marking(g: &FatGraph) -> Result<HMarking, SymplecticError> {
    let rank = 2 * g.genus()?;
    let labels = chord_labels(rank);
    let m = canonical_marking(g, &greedy(g)?).abelianize(rank);
    Ok(m.map(|v| HVector::new(lattice::mul_vec(&lattice::transpose(&labels), v.coords()))))
}

/// The geometric `H`-marking of `g` obtained by normalizing `g` and
/// carrying the standard marking of the symplectic chord diagram back.
/// On a symplectic chord diagram it is [`standard_marking`].
pub fn reference_marking(g: &FatGraph) -> Result<HMarking, SymplecticError> {
    let (s, _) = normalize(g)?;
    let back = s.inverse()?;
    let m = transport_along(&standard_marking(s.end())?, &back)?;
    // the way back ends at `g` up to the isomorphism matching boundary
    // positions
    let order = back.end().boundary_order()?;
    Ok(crate::marking::Marking::new(g.darts().map(|x| m.value(order[g.position(x)]).clone()).collect()))
}

/// Symplectic basis `(A_1, B_1, ..., A_g, B_g)` read off an `H`-marked
/// symplectic chord diagram, as the columns of a matrix.
pub fn chord_basis(c: &ChordDiagram, m: &HMarking) -> Result<IntMatrix, SymplecticError> {
    if !is_symplectic(c) {
        return Err(SymplecticError::NotNormalForm);
    }
    let gens = greedy(c.graph())?;
    let cols: Vec<HVector> = gens
        .generators()
        .iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { m.value(x).neg() } else { m.value(x).clone() })
        .collect();
    Ok(lattice::from_columns(&cols))
}

/// Branch reduction followed by the chord slide algorithm.
pub fn normalize(g: &FatGraph) -> Result<(MoveSequence, ChordDiagram), SymplecticError> {
    let mut s = branch_reduce(g)?;
    let c = ChordDiagram::from_fatgraph(s.end())?;
    let (slides, out) = slide_normal_form(&c)?;
    s.extend(&slides)?;
    Ok((s, out))
}

/// The canonical symplectic basis of an `H`-marked fatgraph: normalize and
/// read the chord basis.
pub fn canonical_basis(g: &FatGraph, m: &HMarking) -> Result<IntMatrix, SymplecticError> {
    let (s, c) = normalize(g)?;
    chord_basis(&c, &transport_along(m, &s)?)
}

/// Matrix of the move on the edge of `d`: the canonical basis of the
/// target written in the canonical basis of the source.
pub fn sp_of_move(g: &FatGraph, m: &HMarking, d: Dart) -> Result<SpMatrix, SymplecticError> {
    if !m.verify(g, VerifyLevel::HGeometric)?.passed() {
        return Err(SymplecticError::MarkingInvalid);
    }
    let h = g.whitehead_move(d)?;
    let m2 = m.transport(g, d)?;
    change_of_basis(&canonical_basis(g, m)?, &canonical_basis(&h, &m2)?)
}

/// Matrix of a sequence; equal to the product of its step matrices in path
/// order.
pub fn sp_of_sequence(s: &MoveSequence, m: &HMarking) -> Result<SpMatrix, SymplecticError> {
    if !m.verify(s.start(), VerifyLevel::HGeometric)?.passed() {
        return Err(SymplecticError::MarkingInvalid);
    }
    let end = transport_along(m, s)?;
    change_of_basis(&canonical_basis(s.start(), m)?, &canonical_basis(s.end(), &end)?)
}

/// `from^-1 * to`, checked symplectic.
pub fn change_of_basis(from: &IntMatrix, to: &IntMatrix) -> Result<SpMatrix, SymplecticError> {
    let inv = lattice::unimodular_inverse(from).ok_or(SymplecticError::NotSymplectic)?;
    SpMatrix::new(lattice::mul(&inv, to))
}

/// Symplectic basis over `Q` from an ordered basis: `A_1 = X_1`, `B_1` the
/// first vector pairing nontrivially with it, rescaled; the remaining
/// vectors are projected off `span(A_1, B_1)` and the process repeats.
/// Returns the columns `(A_1, B_1, ..., A_g, B_g)`.
pub fn rational_symplectic(vectors: &[HVector]) -> Result<Vec<Vec<BigRational>>, SymplecticError> {
    let n = vectors.len();
    let rat = |v: &HVector| v.coords().iter().map(|&c| BigRational::from_integer(c.into())).collect::<Vec<_>>();
    let omega = |u: &[BigRational], v: &[BigRational]| {
        u.chunks(2).zip(v.chunks(2)).fold(BigRational::zero(), |acc, (a, b)| acc + &a[0] * &b[1] - &a[1] * &b[0])
    };
    let mut rest: Vec<Vec<BigRational>> = vectors.iter().map(rat).collect();
    if n % 2 == 1 || vectors.iter().any(|v| v.rank() != n) {
        return Err(SymplecticError::DegenerateForm);
    }
    let mut out = Vec::with_capacity(n);
    while !rest.is_empty() {
        let a = rest.remove(0);
        let k = rest.iter().position(|x| !omega(&a, x).is_zero()).ok_or(SymplecticError::DegenerateForm)?;
        let x2 = rest.remove(k);
        let w = omega(&a, &x2);
        let b: Vec<BigRational> = x2.iter().map(|c| c / &w).collect();
        rest = rest
            .into_iter()
            .map(|x| {
                let xb = omega(&x, &b);
                let xa = omega(&x, &a);
                x.iter().zip(&a).zip(&b).map(|((xi, ai), bi)| xi - &xb * ai + &xa * bi).collect()
            })
            .collect();
        out.push(a);
        out.push(b);
    }
    Ok(out)
}

/// Integer columns of a rational basis, if every entry is integral.
pub fn integral_columns(cols: &[Vec<BigRational>]) -> Option<IntMatrix> {
    let ints: Option<Vec<Vec<i64>>> = cols
        .iter()
        .map(|c| c.iter().map(|x| if x.is_integer() { i64::try_from(x.to_integer()).ok() } else { None }).collect())
        .collect();
    ints.map(|c| lattice::transpose(&c))
}
