//! Abstract markings of fatgraphs by a group: `pi_1`-type markings with
//! values in the free group and `H`-type markings with values in `Z^{2g}`.

use std::fmt;

use thiserror::Error;

use crate::fatgraph::{Dart, FatGraph, FatGraphError};
use crate::freegroup::{HVector, Word};
use crate::symplectic::lattice;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MarkingError {
    #[error(transparent)]
    Graph(#[from] FatGraphError),
    #[error("marking has {got} values for {expected} darts")]
    WrongSize { expected: usize, got: usize },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Group of marking values.
pub trait MarkingValue: Clone + PartialEq + fmt::Debug {
    fn one_like(&self) -> Self;
    fn op(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn is_one(&self) -> bool;
}

impl MarkingValue for Word {
    fn one_like(&self) -> Self {
        Word::identity()
    }
    fn op(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inverse(&self) -> Self {
        Word::inverse(self)
    }
    fn is_one(&self) -> bool {
        self.is_empty()
    }
}

impl MarkingValue for HVector {
    fn one_like(&self) -> Self {
        HVector::zero(self.rank())
    }
    fn op(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn inverse(&self) -> Self {
        self.neg()
    }
    fn is_one(&self) -> bool {
        self.is_zero()
    }
}

/// Assignment of a group element to every dart.
#[derive(Clone, PartialEq, Debug)]
pub struct Marking<K> {
    values: Vec<K>,
}

pub type Pi1Marking = Marking<Word>;
pub type HMarking = Marking<HVector>;

/// Outcome of [`Marking::verify`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MarkingReport {
    /// Edges `(d, inv d)` whose values do not multiply to one.
    pub edge_failures: Vec<Dart>,
    /// Vertices, by their first inbound dart, violating the vertex condition.
    pub vertex_failures: Vec<Dart>,
    pub surjective: Option<bool>,
    /// Dart pairs where the skew pairing disagrees with the intersection form.
    pub geometric_failures: Vec<(Dart, Dart)>,
    pub h_geometric: Option<bool>,
}

impl MarkingReport {
    pub fn passed(&self) -> bool {
        self.edge_failures.is_empty()
            && self.vertex_failures.is_empty()
            && self.surjective != Some(false)
            && self.h_geometric != Some(false)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerifyLevel {
    EdgeVertex,
    Surjective,
    HGeometric,
}

impl<K: MarkingValue> Marking<K> {
    pub fn new(values: Vec<K>) -> Self {
        Marking { values }
    }

    pub fn for_graph(g: &FatGraph, values: Vec<K>) -> Result<Self, MarkingError> {
        if values.len() != g.num_darts() {
            return Err(MarkingError::WrongSize { expected: g.num_darts(), got: values.len() });
        }
        Ok(Marking { values })
    }

    pub fn value(&self, d: Dart) -> &K {
        &self.values[d.index()]
    }

    pub fn values(&self) -> &[K] {
        &self.values
    }

    pub fn map<L: MarkingValue>(&self, f: impl Fn(&K) -> L) -> Marking<L> {
        Marking { values: self.values.iter().map(f).collect() }
    }

    /// Darts `d` with `value(d) value(inv d) != 1`, one per edge.
    pub fn edge_failures(&self, g: &FatGraph) -> Vec<Dart> {
        g.edges().into_iter().filter(|&(a, b)| !self.value(a).op(self.value(b)).is_one()).map(|(a, _)| a).collect()
    }

    /// Vertices, named by their smallest inbound dart, whose cyclic product
    /// of inbound values is not one. The univalent vertex is exempt: its
    /// only inbound dart carries the boundary class.
    pub fn vertex_failures(&self, g: &FatGraph) -> Vec<Dart> {
        let mut out = Vec::new();
        for cyc in g.vertex_cycles().filter(|c| c.len() > 1) {
            let mut acc = self.value(cyc[0]).one_like();
            for &d in &cyc {
                acc = acc.op(self.value(d));
            }
            if !acc.is_one() {
                out.push(*cyc.iter().min().expect("nonempty vertex"));
            }
        }
        out.sort();
        out
    }

    /// The marking after the Whitehead move on the edge of `d`: only the two
    /// darts of that edge change, to the values forced by the vertex
    /// condition at the new vertices.
    pub fn transport(&self, g: &FatGraph, d: Dart) -> Result<Marking<K>, MarkingError> {
        // validate legality through the move itself
        let h = g.whitehead_move(d)?;
        let db = g.inv(d);
        let a1 = g.rot(d);
        let a2 = g.rot(a1);
        let b1 = g.rot(db);
        debug_assert_eq!(h.rot(db), a2);
        let mut values = self.values.clone();
        // new vertex (d', a2, b1): value(d') = (value(a2) value(b1))^-1
        let vd = self.value(a2).op(self.value(b1));
        values[db.index()] = vd.inverse();
        values[d.index()] = vd;
        Ok(Marking { values })
    }
}

impl Pi1Marking {
    pub fn abelianize(&self, rank: usize) -> HMarking {
        self.map(|w| w.abelianize(rank))
    }

    /// Edge and vertex conditions, plus, from [`VerifyLevel::Surjective`] on,
    /// a check that the abelianized values span `Z^rank`.
    pub fn verify(&self, g: &FatGraph, rank: usize, level: VerifyLevel) -> MarkingReport {
        let mut report = MarkingReport {
            edge_failures: self.edge_failures(g),
            vertex_failures: self.vertex_failures(g),
            ..Default::default()
        };
        if level != VerifyLevel::EdgeVertex {
            let vectors: Vec<HVector> = self.values.iter().map(|w| w.abelianize(rank)).collect();
            report.surjective = Some(lattice::spans_full_lattice(&vectors, rank));
        }
        report
    }
}

impl HMarking {
    pub fn rank(&self) -> usize {
        self.values.first().map(|v| v.rank()).unwrap_or(0)
    }

    pub fn verify(&self, g: &FatGraph, level: VerifyLevel) -> Result<MarkingReport, MarkingError> {
        let mut report = MarkingReport {
            edge_failures: self.edge_failures(g),
            vertex_failures: self.vertex_failures(g),
            ..Default::default()
        };
        if level != VerifyLevel::EdgeVertex {
            report.surjective = Some(lattice::spans_full_lattice(&self.values, self.rank()));
        }
        if level == VerifyLevel::HGeometric {
            g.require_bordered()?;
            let mut failures = Vec::new();
            for x in g.darts() {
                for y in g.darts() {
                    if x < y && skew_pairing(g, x, y) != self.value(x).omega(self.value(y)) {
                        failures.push((x, y));
                    }
                }
            }
            report.h_geometric = Some(failures.is_empty());
            report.geometric_failures = failures;
        }
        Ok(report)
    }
}

/// Combinatorial skew pairing of two darts of a bordered fatgraph: `-1` when
/// the boundary cycle meets them cyclically as `x, y, x', y'`, `+1` for
/// `x, y', x', y` (primes denoting reversal), and `0` otherwise.
pub fn skew_pairing(g: &FatGraph, x: Dart, y: Dart) -> i64 {
    let xb = g.inv(x);
    if y == x || y == xb {
        return 0;
    }
    let yb = g.inv(y);
    let n = g.num_darts();
    let p0 = g.position(x);
    let rel = |d: Dart| (g.position(d) + n - p0) % n;
    let (py, pxb, pyb) = (rel(y), rel(xb), rel(yb));
    if py < pxb && pxb < pyb {
        -1
    } else if pyb < pxb && pxb < py {
        1
    } else {
        0
    }
}

/// Writes one line `d: value` per dart, 1-based.
pub fn write_marking<K: fmt::Display>(m: &Marking<K>) -> String {
    let mut out = String::new();
    for (i, v) in m.values.iter().enumerate() {
        out.push_str(&format!("{}: {}\n", i + 1, v));
    }
    out
}

/// Parses the per-dart format; `parse_value` reads the text after the colon.
pub fn parse_marking<K, F>(s: &str, parse_value: F) -> Result<Marking<K>, MarkingError>
where
    F: Fn(&str) -> Option<K>,
{
    let mut entries: Vec<(usize, K)> = Vec::new();
    for (lineno, raw) in s.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| MarkingError::Parse { line: lineno + 1, msg: msg.to_string() };
        let (id, rest) = line.split_once(':').ok_or_else(|| err("expected `d: value`"))?;
        let id: usize = id.trim().parse().map_err(|_| err("bad dart id"))?;
        let value = parse_value(rest.trim()).ok_or_else(|| err("bad value"))?;
        entries.push((id, value));
    }
    entries.sort_by_key(|(id, _)| *id);
    let n = entries.len();
    let mut values = Vec::with_capacity(n);
    for (k, (id, v)) in entries.into_iter().enumerate() {
        if id != k + 1 {
            return Err(MarkingError::Parse { line: 0, msg: format!("dart {} missing or repeated", k + 1) });
        }
        values.push(v);
    }
    Ok(Marking { values })
}

pub fn parse_pi1_marking(s: &str) -> Result<Pi1Marking, MarkingError> {
    parse_marking(s, |t| t.parse::<Word>().ok())
}

pub fn parse_h_marking(s: &str) -> Result<HMarking, MarkingError> {
    parse_marking(s, |t| {
        let coords: Result<Vec<i64>, _> = t.split_whitespace().map(str::parse).collect();
        coords.ok().map(HVector::new)
    })
}
