//! Seeded random walks over the groupoid relations.
//!
//! At every step of a walk from the symplectic chord diagram a random
//! non-tail edge is moved, and around the current graph the harness
//! checks:
//!
//! * involutivity: moving the same edge twice returns the same graph and
//!   a trivial automorphism;
//! * commutativity: moves on two edges without common vertex commute, on
//!   graphs and on automorphisms;
//! * the pentagon: five alternating moves on two edges sharing one vertex
//!   return to an isomorphic graph with trivial automorphism;
//! * boundary invariance: `N(W)` carries the target's boundary word to the
//!   source's;
//! * multiplicativity of `N`, Magnus and `Sp` over every prefix of the
//!   current window of the walk. Windows are restarted every
//!   [`WINDOW`] steps since composite words grow quickly.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chorddiag::symplectic_diagram;
use crate::fatgraph::{Dart, FatGraph, MoveSequence};
use crate::magnus::{magnus_of_endo, magnus_of_sequence, MagnusMode};
use crate::marking::HMarking;
use crate::nielsen::{boundary_word, nielsen_by_transport, nielsen_of_move, nielsen_of_sequence};
use crate::symplectic::{reference_marking, sp_of_move, sp_of_sequence, standard_marking, transport_along, SpMatrix};

pub const WINDOW: usize = 12;

/// Parameters of a walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkConfig {
    pub genus: usize,
    pub steps: usize,
    pub seed: u64,
}

/// Tally per relation and the first few failures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub genus: usize,
    pub steps: usize,
    pub seed: u64,
    pub checked: BTreeMap<&'static str, usize>,
    pub failed: BTreeMap<&'static str, usize>,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failed.values().all(|&n| n == 0)
    }

    fn record(&mut self, name: &'static str, ok: bool, step: usize) {
        *self.checked.entry(name).or_default() += 1;
        let f = self.failed.entry(name).or_default();
        if !ok {
            *f += 1;
            if self.failures.len() < 20 {
                self.failures.push(format!("{name} at step {step}"));
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "genus": self.genus,
            "steps": self.steps,
            "seed": self.seed,
            "checked": self.checked,
            "failed": self.failed,
            "failures": self.failures,
            "passed": self.passed(),
        })
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {} genus {} steps {}", self.seed, self.genus, self.steps)?;
        for (name, n) in &self.checked {
            writeln!(f, "  {name}: {n} checked, {} failed", self.failed.get(name).copied().unwrap_or(0))?;
        }
        for line in &self.failures {
            writeln!(f, "  FAILED {line}")?;
        }
        if self.passed() {
            write!(f, "all checks passed")
        } else {
            write!(f, "some checks failed")
        }
    }
}

/// Darts of the non-tail edges, one per edge.
pub fn movable_edges(g: &FatGraph) -> Vec<Dart> {
    g.edges().into_iter().map(|(d, _)| d).filter(|&d| !g.is_tail_edge(d)).collect()
}

/// A random walk of `len` moves from `start`.
pub fn random_walk<R: Rng>(start: &FatGraph, len: usize, rng: &mut R) -> MoveSequence {
    let mut s = MoveSequence::new(start.clone());
    for _ in 0..len {
        let es = movable_edges(s.end());
        let d = *es.choose(rng).expect("genus at least one");
        s.push(d).expect("non-tail edge");
    }
    s
}

fn ends(g: &FatGraph, d: Dart) -> [usize; 2] {
    let mut v = [g.vertex(d), g.vertex(g.inv(d))];
    v.sort_unstable();
    v
}

fn shared_vertices(g: &FatGraph, d: Dart, f: Dart) -> usize {
    let (a, b) = (ends(g, d), ends(g, f));
    if a[0] == a[1] || b[0] == b[1] {
        return usize::MAX;
    }
    a.iter().filter(|x| b.contains(x)).count()
}

fn moves(g: &FatGraph, darts: &[Dart]) -> Option<MoveSequence> {
    let mut s = MoveSequence::new(g.clone());
    for &d in darts {
        s.push(d).ok()?;
    }
    Some(s)
}

/// Moving twice gives `g` back with the two darts of the edge exchanged.
fn involution(g: &FatGraph, d: Dart) -> bool {
    let Some(s) = moves(g, &[d, d]) else { return false };
    let h = s.end();
    let swap = |x: Dart| {
        if x == d {
            g.inv(d)
        } else if x == g.inv(d) {
            d
        } else {
            x
        }
    };
    g.darts().all(|x| h.position(x) == g.position(swap(x))) && nielsen_of_sequence(&s).is_ok_and(|n| n.is_identity())
}

fn commutes(g: &FatGraph, d: Dart, f: Dart) -> bool {
    let (Some(a), Some(b)) = (moves(g, &[d, f]), moves(g, &[f, d])) else { return false };
    a.end() == b.end() && nielsen_of_sequence(&a).ok() == nielsen_of_sequence(&b).ok()
}

fn pentagon(g: &FatGraph, d: Dart, f: Dart) -> bool {
    let Some(s) = moves(g, &[d, f, d, f, d]) else { return false };
    s.end().canonical_code().ok() == g.canonical_code().ok() && nielsen_of_sequence(&s).is_ok_and(|n| n.is_identity())
}

fn boundary_invariant(g: &FatGraph, d: Dart) -> bool {
    let (Ok(n), Ok(h)) = (nielsen_of_move(g, d), g.whitehead_move(d)) else { return false };
    match (boundary_word(&h), boundary_word(g)) {
        (Ok(t), Ok(s)) => t.substitute(n.images()) == s,
        _ => false,
    }
}

/// Multiplicativity over the window `w` just extended by its last move.
fn multiplicative(w: &MoveSequence, marking: &HMarking, sp_prefix: &SpMatrix) -> (bool, bool, Option<SpMatrix>) {
    let k = w.len() - 1;
    let n = nielsen_of_sequence(w);
    let nielsen_ok = n.is_ok() && n.as_ref().ok() == nielsen_by_transport(w).as_ref().ok();
    let magnus_ok = match (&n, magnus_of_sequence(w, MagnusMode::Free)) {
        (Ok(n), Ok(m)) => m == magnus_of_endo(n, MagnusMode::Free),
        _ => false,
    };
    let sp = transport_along(marking, &prefix(w, k))
        .ok()
        .and_then(|m| sp_of_move(w.source(k), &m, w.steps()[k].dart).ok())
        .map(|step| sp_prefix.mul(&step));
    let sp_ok = match (&sp, sp_of_sequence(w, marking)) {
        (Some(a), Ok(b)) => *a == b,
        _ => false,
    };
    (nielsen_ok && magnus_ok, sp_ok, sp)
}

fn prefix(w: &MoveSequence, k: usize) -> MoveSequence {
    let mut s = MoveSequence::new(w.start().clone());
    for step in &w.steps()[..k] {
        s.push(step.dart).expect("replays");
    }
    s
}

/// Runs a walk and every check along it; deterministic in `config`.
pub fn run(config: WalkConfig) -> Result<CheckReport, crate::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let g0 = symplectic_diagram(config.genus)?;
    let mut report = CheckReport { genus: config.genus, steps: config.steps, seed: config.seed, ..Default::default() };
    let mut window = MoveSequence::new(g0.clone());
    let mut marking = standard_marking(&g0)?;
    let mut sp = SpMatrix::identity(config.genus);
    for step in 0..config.steps {
        let g = window.end().clone();
        let es = movable_edges(&g);
        let d = *es.choose(&mut rng).expect("genus at least one");
        report.record("involution", involution(&g, d), step);
        report.record("boundary", boundary_invariant(&g, d), step);
        let far: Vec<Dart> = es.iter().copied().filter(|&f| f != d && shared_vertices(&g, d, f) == 0).collect();
        if let Some(&f) = far.choose(&mut rng) {
            report.record("commutativity", commutes(&g, d, f), step);
        }
        let near: Vec<Dart> = es.iter().copied().filter(|&f| f != d && shared_vertices(&g, d, f) == 1).collect();
        if let Some(&f) = near.choose(&mut rng) {
            report.record("pentagon", pentagon(&g, d, f), step);
        }
        if window.len() == WINDOW {
            marking = reference_marking(&g)?;
            window = MoveSequence::new(g.clone());
            sp = SpMatrix::identity(config.genus);
        }
        window.push(d)?;
        let (nm, s_ok, next) = multiplicative(&window, &marking, &sp);
        report.record("nielsen+magnus", nm, step);
        report.record("sp", s_ok, step);
        if let Some(next) = next {
            sp = next;
        }
    }
    Ok(report)
}
