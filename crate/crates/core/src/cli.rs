//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches and returns the exit code with the
//! text to print, so the binary is a thin wrapper and tests need no
//! subprocess. Exit codes: 0 success, 1 domain or input error, 2 usage.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::chorddiag::{branch_reduce, check_word, diagram_from_word, ChordDiagram, RealizationResult};
use crate::fatgraph::{classify_move, Dart, FatGraph, MoveSequence, SectorPattern};
use crate::freegroup::{HVector, Word};
use crate::magnus::{magnus_of_sequence, MagnusMode};
use crate::marking::parse_h_marking;
use crate::nielsen::{boundary_word, canonical_marking, greedy, nielsen_of_sequence};
use crate::selfcheck::{self, WalkConfig};
use crate::symplectic::{
    h_basis, identity_extension, normalize, reference_marking, sp_of_sequence, GeometricBasis, IdentityMode, Lagrangian,
};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// Malformed word or dart list given on the command line.
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{path}: {msg}")]
    Io { path: PathBuf, msg: String },
    #[error(transparent)]
    Domain(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

macro_rules! domain {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.into())
            }
        }
    )*};
}
domain!(
    crate::fatgraph::FatGraphError,
    crate::freegroup::FreeGroupError,
    crate::marking::MarkingError,
    crate::magnus::MagnusError,
    crate::chorddiag::ChordError,
    crate::symplectic::SymplecticError
);

#[derive(Parser, Debug)]
#[command(name = "ptolemy", version, about = "Bordered fatgraphs, Whitehead moves and their representations")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct MoveArgs {
    /// Dart (1-based) of the edge to move.
    #[arg(long, conflicts_with = "moves")]
    pub edge: Option<u32>,
    /// Whitespace-separated darts, moved in order.
    #[arg(long)]
    pub moves: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Mc,
    Torelli,
    Lagrangian,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structural report of a `.fat` file.
    Validate { file: PathBuf },
    /// Genus of a bordered fatgraph.
    Genus { file: PathBuf },
    /// Greedy tree edges and generators.
    Generators { file: PathBuf },
    /// Values of darts in the generators.
    Express {
        file: PathBuf,
        #[arg(long)]
        dart: Option<u32>,
    },
    /// Applies a Whitehead move and prints the result.
    Move {
        file: PathBuf,
        #[arg(long)]
        edge: u32,
    },
    /// Type and direction of a Whitehead move.
    Classify {
        file: PathBuf,
        #[arg(long)]
        edge: u32,
    },
    /// Nielsen automorphism of a move or a move sequence.
    Nielsen {
        file: PathBuf,
        #[command(flatten)]
        moves: MoveArgs,
    },
    /// Magnus matrix of a move sequence.
    Magnus {
        file: PathBuf,
        #[command(flatten)]
        moves: MoveArgs,
        #[arg(long)]
        abelianized: bool,
    },
    /// Symplectic matrix of a move sequence.
    Sp {
        file: PathBuf,
        #[command(flatten)]
        moves: MoveArgs,
        /// `H`-marking file; the reference marking by default.
        #[arg(long)]
        marking: Option<PathBuf>,
    },
    /// Branch reduction to a linear chord diagram.
    Reduce { file: PathBuf },
    /// Branch reduction and chord slides to the symplectic chord diagram.
    Normal { file: PathBuf },
    /// Decides whether a word is the boundary word of a chord diagram.
    Realize {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Identity extension of the given move sequence.
    Idext {
        file: PathBuf,
        #[arg(long, default_value = "")]
        moves: String,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Geometric basis for torelli mode, one vector per line.
        #[arg(long)]
        basis: Option<PathBuf>,
        /// Lagrangian basis for lagrangian mode, one vector per line.
        #[arg(long)]
        lagrangian: Option<PathBuf>,
    },
    /// Random-walk verification of the groupoid relations.
    Selfcheck {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        walk: usize,
        /// Defaults to `PTOLEMY_SEED`, then 0.
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Exit code and the text for stdout or stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Report {
        Report { text, json, ok: true }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let json = cli.json;
    let name = command_name(&cli.command);
    match dispatch(cli.command) {
        Ok(r) => {
            let stdout = if json {
                let mut v = json!({ "schema": SCHEMA, "command": name });
                if let (Value::Object(m), Value::Object(extra)) = (&mut v, r.json) {
                    m.extend(extra);
                }
                format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
            } else {
                ensure_newline(r.text)
            };
            Outcome { code: if r.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stderr = if json {
                format!("{}\n", json!({ "schema": SCHEMA, "command": name, "error": e.to_string() }))
            } else {
                format!("error: {e}\n")
            };
            Outcome { code: e.exit_code(), stdout: String::new(), stderr }
        }
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Genus { .. } => "genus",
        Command::Generators { .. } => "generators",
        Command::Express { .. } => "express",
        Command::Move { .. } => "move",
        Command::Classify { .. } => "classify",
        Command::Nielsen { .. } => "nielsen",
        Command::Magnus { .. } => "magnus",
        Command::Sp { .. } => "sp",
        Command::Reduce { .. } => "reduce",
        Command::Normal { .. } => "normal",
        Command::Realize { .. } => "realize",
        Command::Idext { .. } => "idext",
        Command::Selfcheck { .. } => "selfcheck",
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io { path: path.clone(), msg: e.to_string() })
}

fn load_graph(path: &PathBuf) -> Result<FatGraph, CliError> {
    Ok(read(path)?.parse::<FatGraph>()?)
}

fn dart(g: &FatGraph, id: u32) -> Result<Dart, CliError> {
    if id == 0 {
        return Err(CliError::Parse("dart ids are 1-based".into()));
    }
    let d = Dart::from_id(id);
    g.check_dart(d)?;
    Ok(d)
}

fn parse_ids(s: &str) -> Result<Vec<u32>, CliError> {
    s.split_whitespace().map(|t| t.parse::<u32>().map_err(|_| CliError::Parse(format!("bad dart id {t:?}")))).collect()
}

fn sequence(g: &FatGraph, ids: &[u32]) -> Result<MoveSequence, CliError> {
    let mut s = MoveSequence::new(g.clone());
    for &id in ids {
        let d = dart(s.end(), id)?;
        s.push(d)?;
    }
    Ok(s)
}

fn move_sequence(g: &FatGraph, m: &MoveArgs) -> Result<MoveSequence, CliError> {
    match (m.edge, &m.moves) {
        (Some(e), None) => sequence(g, &[e]),
        (None, Some(l)) => sequence(g, &parse_ids(l)?),
        _ => Err(CliError::Usage("give --edge or --moves".into())),
    }
}

fn darts_json(ds: &[Dart]) -> Value {
    json!(ds.iter().map(|d| d.id()).collect::<Vec<_>>())
}

fn darts_text(ds: &[Dart]) -> String {
    ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

fn matrix_text<T: std::fmt::Display>(m: &[Vec<T>]) -> String {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
}

fn vectors(path: &PathBuf) -> Result<Vec<HVector>, CliError> {
    Ok(parse_h_marking(&read(path)?)?.values().to_vec())
}

fn dispatch(cmd: Command) -> Result<Report, CliError> {
    match cmd {
        Command::Validate { file } => {
            let g = load_graph(&file)?;
            let r = g.validate();
            let ok = r.is_trivalent_bordered();
            let text = format!(
                "darts {}\nedges {}\nvertices {}\nboundary cycles {}\ngenus {}\n{}",
                r.darts,
                r.edges,
                r.vertices,
                r.boundary_cycles,
                r.genus.map_or("-".to_string(), |g| g.to_string()),
                if ok { "trivalent bordered" } else { "not trivalent bordered" }
            );
            let json = json!({
                "darts": r.darts, "edges": r.edges, "vertices": r.vertices,
                "boundary_cycles": r.boundary_cycles, "genus": r.genus,
                "valence_violations": r.valence_violations.iter().map(|(d, k)| json!([d.id(), k])).collect::<Vec<_>>(),
                "trivalent_bordered": ok,
            });
            Ok(Report { text, json, ok })
        }
        Command::Genus { file } => {
            let genus = load_graph(&file)?.genus()?;
            Ok(Report::new(genus.to_string(), json!({ "genus": genus })))
        }
        Command::Generators { file } => {
            let g = load_graph(&file)?;
            let t = greedy(&g)?;
            let text = format!("tree {}\ngenerators {}", darts_text(t.tree_edges()), darts_text(t.generators()));
            Ok(Report::new(
                text,
                json!({ "tree": darts_json(t.tree_edges()), "generators": darts_json(t.generators()) }),
            ))
        }
        Command::Express { file, dart: which } => {
            let g = load_graph(&file)?;
            let m = canonical_marking(&g, &greedy(&g)?);
            let ds: Vec<Dart> = match which {
                Some(id) => vec![dart(&g, id)?],
                None => g.darts().collect(),
            };
            let lines: Vec<(u32, &Word)> = ds.iter().map(|&d| (d.id(), m.value(d))).collect();
            let text = lines.iter().map(|(d, w)| format!("{d}: {}", w)).collect::<Vec<_>>().join("\n");
            let json = json!({ "values": lines.iter().map(|(d, w)| json!({ "dart": d, "word": w.letters() })).collect::<Vec<_>>(),
                "boundary": boundary_word(&g)?.letters() });
            Ok(Report::new(text, json))
        }
        Command::Move { file, edge } => {
            let g = load_graph(&file)?;
            let h = g.whitehead_move(dart(&g, edge)?)?;
            let text = h.to_string();
            Ok(Report::new(text.clone(), json!({ "fat": text })))
        }
        Command::Classify { file, edge } => {
            let g = load_graph(&file)?;
            let d = dart(&g, edge)?;
            let t = classify_move(&g, d)?;
            let (p, _) = SectorPattern::of(&g, d)?;
            let dir = format!("{:?}", t.direction).to_lowercase();
            Ok(Report::new(
                format!("type {}\ndirection {dir}\nsectors {:?}", t.kind, p.0),
                json!({ "type": t.kind, "direction": dir, "sectors": p.0 }),
            ))
        }
        Command::Nielsen { file, moves } => {
            let g = load_graph(&file)?;
            let s = move_sequence(&g, &moves)?;
            let n = nielsen_of_sequence(&s)?;
            let text =
                n.images().iter().enumerate().map(|(i, w)| format!("{}: {}", i + 1, w)).collect::<Vec<_>>().join("\n");
            let json = json!({ "images": n.images().iter().map(|w| w.letters().to_vec()).collect::<Vec<_>>() });
            Ok(Report::new(text, json))
        }
        Command::Magnus { file, moves, abelianized } => {
            let g = load_graph(&file)?;
            let s = move_sequence(&g, &moves)?;
            let mode = if abelianized { MagnusMode::Abelianized } else { MagnusMode::Free };
            let m = magnus_of_sequence(&s, mode)?;
            let n = m.rank();
            let rows: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| m.entry_string(i, j)).collect()).collect();
            let text = rows.iter().map(|r| r.join(" | ")).collect::<Vec<_>>().join("\n");
            Ok(Report::new(text, json!({ "abelianized": abelianized, "matrix": m.to_json() })))
        }
        Command::Sp { file, moves, marking } => {
            let g = load_graph(&file)?;
            let s = move_sequence(&g, &moves)?;
            let m = match marking {
                Some(p) => parse_h_marking(&read(&p)?)?,
                None => reference_marking(&g)?,
            };
            let sp = sp_of_sequence(&s, &m)?;
            Ok(Report::new(matrix_text(sp.matrix()), json!({ "matrix": sp.to_json() })))
        }
        Command::Reduce { file } => {
            let g = load_graph(&file)?;
            let s = branch_reduce(&g)?;
            let c = ChordDiagram::from_fatgraph(s.end())?;
            let ds: Vec<Dart> = s.steps().iter().map(|st| st.dart).collect();
            let text = format!("moves {}\n{}{}", darts_text(&ds), c, s.end());
            Ok(Report::new(
                text,
                json!({ "moves": darts_json(&ds), "word": c.read_word().letters(), "diagram": c.to_string(), "fat": s.end().to_string() }),
            ))
        }
        Command::Normal { file } => {
            let g = load_graph(&file)?;
            let (s, c) = normalize(&g)?;
            let ds: Vec<Dart> = s.steps().iter().map(|st| st.dart).collect();
            let text = format!("moves {}\nword {}\n{}", ds.len(), c.read_word(), c);
            Ok(Report::new(
                text,
                json!({ "moves": darts_json(&ds), "word": c.read_word().letters(), "diagram": c.to_string(), "fat": s.end().to_string() }),
            ))
        }
        Command::Realize { word } => {
            let letters: Vec<i32> = word
                .split_whitespace()
                .map(|t| t.parse::<i32>().ok().filter(|&l| l != 0))
                .collect::<Option<_>>()
                .ok_or_else(|| CliError::Parse(format!("bad word {word:?}")))?;
            check_word(&letters)?;
            let w = Word::from_reduced(letters).expect("checked reduced");
            match diagram_from_word(&w)? {
                RealizationResult::Accepted { diagram, generator_of } => {
                    let flipped: Vec<usize> =
                        generator_of.iter().enumerate().filter(|(_, &s)| s < 0).map(|(i, _)| i + 1).collect();
                    let text = format!("accepted\nflipped {:?}\n{}{}", flipped, diagram, diagram.graph());
                    Ok(Report::new(
                        text,
                        json!({ "accepted": true, "generator_of": generator_of, "diagram": diagram.to_string(), "fat": diagram.graph().to_string() }),
                    ))
                }
                RealizationResult::Rejected { boundary_cycles } => Ok(Report::new(
                    format!("rejected\nboundary cycles {boundary_cycles}"),
                    json!({ "accepted": false, "boundary_cycles": boundary_cycles }),
                )),
            }
        }
        Command::Idext { file, moves, mode, basis, lagrangian } => {
            let g = load_graph(&file)?;
            let s = sequence(&g, &parse_ids(&moves)?)?;
            let genus = g.genus()?;
            let mode = match mode {
                Mode::Mc => IdentityMode::Mc,
                Mode::Torelli => IdentityMode::Torelli(match basis {
                    Some(p) => GeometricBasis::new(vectors(&p)?)?,
                    None => h_basis(&g, &reference_marking(&g)?)?,
                }),
                Mode::Lagrangian => IdentityMode::Lagrangian(match lagrangian {
                    Some(p) => Lagrangian::new(vectors(&p)?)?,
                    None => Lagrangian::new((0..genus).map(|i| HVector::unit(2 * genus, 2 * i + 1)).collect())?,
                }),
            };
            let ext = identity_extension(&s, &mode)?;
            let act = ext.h_action();
            let text = format!(
                "path {} moves\n{}h-action\n{}",
                ext.path.len(),
                ext.map.images().iter().enumerate().map(|(i, w)| format!("{}: {}\n", i + 1, w)).collect::<String>(),
                matrix_text(&act)
            );
            let json = json!({
                "path_length": ext.path.len(),
                "images": ext.map.images().iter().map(|w| w.letters().to_vec()).collect::<Vec<_>>(),
                "abelianization": ext.map.abelianization(),
                "h_action": act,
            });
            Ok(Report::new(text, json))
        }
        Command::Selfcheck { genus, walk, seed } => {
            if genus == 0 {
                return Err(CliError::Usage("genus must be positive".into()));
            }
            let seed = match seed {
                Some(s) => s,
                None => match std::env::var("PTOLEMY_SEED") {
                    Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("bad PTOLEMY_SEED {v:?}")))?,
                    Err(_) => 0,
                },
            };
            let r = selfcheck::run(WalkConfig { genus, steps: walk, seed })?;
            Ok(Report { text: r.to_string(), json: r.to_json(), ok: r.passed() })
        }
    }
}
