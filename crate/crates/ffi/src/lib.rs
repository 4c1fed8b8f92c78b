//! C ABI over `ptolemy-core`.
//!
//! Graphs and move sequences are opaque heap handles released with their
//! `_free` function. Every fallible call returns a [`PtolemyStatus`]; on
//! failure the message is kept per thread and read back with
//! [`ptolemy_last_error_message`]. Dart ids are 1-based, as in the text
//! formats. Strings handed out must be released with
//! [`ptolemy_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ptolemy_core::chorddiag::{diagram_from_word, symplectic_diagram, RealizationResult};
use ptolemy_core::fatgraph::{classify_move, Dart, FatGraph, MoveSequence};
use ptolemy_core::freegroup::Word;
use ptolemy_core::nielsen::nielsen_of_sequence;
use ptolemy_core::symplectic::{reference_marking, sp_of_sequence};
use ptolemy_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PtolemyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    FatGraph = 4,
    FreeGroup = 5,
    Marking = 6,
    Magnus = 7,
    Chord = 8,
    Symplectic = 9,
    BufferTooSmall = 10,
    Panic = 11,
}

/// A trivalent bordered fatgraph.
pub struct PtolemyGraph(FatGraph);

/// A composable sequence of Whitehead moves.
pub struct PtolemySequence(MoveSequence);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PtolemyStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::FatGraph(_) => PtolemyStatus::FatGraph,
            Error::FreeGroup(_) => PtolemyStatus::FreeGroup,
            Error::Marking(_) => PtolemyStatus::Marking,
            Error::Magnus(_) => PtolemyStatus::Magnus,
            Error::Chord(_) => PtolemyStatus::Chord,
            Error::Symplectic(_) => PtolemyStatus::Symplectic,
        };
        Failure(status, e.to_string())
    }
}

fn fail<E: Into<Error>>(e: E) -> Failure {
    Failure::from(e.into())
}

fn null(what: &str) -> Failure {
    Failure(PtolemyStatus::NullPointer, format!("{what} is null"))
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PtolemyStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PtolemyStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal error: {msg}"));
            PtolemyStatus::Panic
        }
    }
}

unsafe fn as_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn as_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(PtolemyStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(PtolemyStatus::Panic, "string has interior NUL".into()))?;
    write_out(out, c.into_raw())
}

fn dart(g: &FatGraph, id: u32) -> Result<Dart, Failure> {
    if id == 0 {
        return Err(Failure(PtolemyStatus::Parse, "dart ids are 1-based".into()));
    }
    let d = Dart::from_id(id);
    g.check_dart(d).map_err(fail)?;
    Ok(d)
}

/// Copies the last error message of this thread into `buf` (truncated,
/// NUL-terminated) and returns the buffer size it needs, 0 if there is no
/// error. `buf` may be null to query the size.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match &*e.borrow() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes_with_nul();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len);
                ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                *buf.add(n - 1) = 0;
            }
            bytes.len()
        }
    })
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph in the `.fat` text format.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_graph_parse(text: *const c_char, out: *mut *mut PtolemyGraph) -> PtolemyStatus {
    guard(|| {
        let g: FatGraph = read_str(text, "text")?.parse().map_err(|e| Failure(PtolemyStatus::Parse, format!("{e}")))?;
        g.require_trivalent_bordered().map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(PtolemyGraph(g))))
    })
}

/// The symplectic chord diagram of genus `genus`.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_graph_symplectic(genus: usize, out: *mut *mut PtolemyGraph) -> PtolemyStatus {
    guard(|| {
        let g = symplectic_diagram(genus).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(PtolemyGraph(g))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ptolemy_graph_clone(g: *const PtolemyGraph, out: *mut *mut PtolemyGraph) -> PtolemyStatus {
    guard(|| {
        let g = as_ref(g, "graph")?;
        write_out(out, Box::into_raw(Box::new(PtolemyGraph(g.0.clone()))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ptolemy_graph_free(g: *mut PtolemyGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// The graph in the `.fat` text format.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_graph_to_string(g: *const PtolemyGraph, out: *mut *mut c_char) -> PtolemyStatus {
    guard(|| write_string(out, as_ref(g, "graph")?.0.to_string()))
}

#[no_mangle]
pub unsafe extern "C" fn ptolemy_graph_genus(g: *const PtolemyGraph, out: *mut usize) -> PtolemyStatus {
    guard(|| {
        let genus = as_ref(g, "graph")?.0.genus().map_err(fail)?;
        write_out(out, genus)
    })
}

#[no_mangle]
pub unsafe extern "C" fn ptolemy_graph_num_darts(g: *const PtolemyGraph, out: *mut usize) -> PtolemyStatus {
    guard(|| write_out(out, as_ref(g, "graph")?.0.num_darts()))
}

/// The Whitehead move on the edge of dart `dart` as a new graph.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_graph_whitehead_move(
    g: *const PtolemyGraph,
    dart: u32,
    out: *mut *mut PtolemyGraph,
) -> PtolemyStatus {
    guard(|| {
        let g = &as_ref(g, "graph")?.0;
        let h = g.whitehead_move(self::dart(g, dart)?).map_err(fail)?;
        write_out(out, Box::into_raw(Box::new(PtolemyGraph(h))))
    })
}

/// The type of the move on dart `dart`, such as `3+`.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_graph_classify_move(
    g: *const PtolemyGraph,
    dart: u32,
    out: *mut *mut c_char,
) -> PtolemyStatus {
    guard(|| {
        let g = &as_ref(g, "graph")?.0;
        let kind = classify_move(g, self::dart(g, dart)?).map_err(fail)?;
        write_string(out, kind.to_string())
    })
}

/// Writes the canonical code into `buf`. `written` receives its length;
/// when `len` is smaller nothing is copied and the status is
/// `BUFFER_TOO_SMALL`.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_graph_canonical_code(
    g: *const PtolemyGraph,
    buf: *mut u32,
    len: usize,
    written: *mut usize,
) -> PtolemyStatus {
    guard(|| {
        let code = as_ref(g, "graph")?.0.canonical_code().map_err(fail)?;
        write_out(written, code.0.len())?;
        if len < code.0.len() {
            return Err(Failure(
                PtolemyStatus::BufferTooSmall,
                format!("canonical code needs {} entries", code.0.len()),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(code.0.as_ptr(), buf, code.0.len());
        Ok(())
    })
}

/// Whether the two graphs are isomorphic as tailed fatgraphs.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_graph_isomorphic(
    a: *const PtolemyGraph,
    b: *const PtolemyGraph,
    out: *mut bool,
) -> PtolemyStatus {
    guard(|| {
        let a = as_ref(a, "graph")?.0.canonical_code().map_err(fail)?;
        let b = as_ref(b, "graph")?.0.canonical_code().map_err(fail)?;
        write_out(out, a == b)
    })
}

/// An empty sequence starting at a copy of `start`.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_sequence_new(
    start: *const PtolemyGraph,
    out: *mut *mut PtolemySequence,
) -> PtolemyStatus {
    guard(|| {
        let g = as_ref(start, "graph")?;
        write_out(out, Box::into_raw(Box::new(PtolemySequence(MoveSequence::new(g.0.clone())))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ptolemy_sequence_free(s: *mut PtolemySequence) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Appends the move on dart `dart` of the current end.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_sequence_push(s: *mut PtolemySequence, dart: u32) -> PtolemyStatus {
    guard(|| {
        let s = &mut as_mut(s, "sequence")?.0;
        let d = self::dart(s.end(), dart)?;
        s.push(d).map_err(fail)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ptolemy_sequence_len(s: *const PtolemySequence, out: *mut usize) -> PtolemyStatus {
    guard(|| write_out(out, as_ref(s, "sequence")?.0.len()))
}

/// A copy of the last graph of the sequence.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_sequence_end(s: *const PtolemySequence, out: *mut *mut PtolemyGraph) -> PtolemyStatus {
    guard(|| {
        let s = as_ref(s, "sequence")?;
        write_out(out, Box::into_raw(Box::new(PtolemyGraph(s.0.end().clone()))))
    })
}

/// The Nielsen automorphism of the sequence, one line `x_i -> word` per
/// generator.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_sequence_nielsen(s: *const PtolemySequence, out: *mut *mut c_char) -> PtolemyStatus {
    guard(|| {
        let n = nielsen_of_sequence(&as_ref(s, "sequence")?.0).map_err(fail)?;
        write_string(out, n.to_string())
    })
}

/// The symplectic matrix of the sequence against the reference marking of
/// its start, row-major into `buf`. `dim` receives `2g`; `len` must be at
/// least `dim * dim` or the status is `BUFFER_TOO_SMALL`.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_sequence_sp(
    s: *const PtolemySequence,
    buf: *mut i64,
    len: usize,
    dim: *mut usize,
) -> PtolemyStatus {
    guard(|| {
        let s = &as_ref(s, "sequence")?.0;
        let m = reference_marking(s.start()).map_err(fail)?;
        let sp = sp_of_sequence(s, &m).map_err(fail)?;
        let n = sp.matrix().len();
        write_out(dim, n)?;
        if len < n * n {
            return Err(Failure(PtolemyStatus::BufferTooSmall, format!("matrix needs {} entries", n * n)));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        for (k, x) in sp.matrix().iter().flatten().enumerate() {
            *buf.add(k) = *x;
        }
        Ok(())
    })
}

/// Realizability of a surface word given as signed decimal letters. On
/// acceptance `diagram` receives the chord diagram in its text
/// format and `boundary_cycles` is 1; otherwise `diagram` is set to null.
#[no_mangle]
pub unsafe extern "C" fn ptolemy_word_realize(
    word: *const c_char,
    accepted: *mut bool,
    boundary_cycles: *mut usize,
    diagram: *mut *mut c_char,
) -> PtolemyStatus {
    guard(|| {
        let w: Word = read_str(word, "word")?.parse().map_err(|e| Failure(PtolemyStatus::Parse, format!("{e}")))?;
        match diagram_from_word(&w).map_err(fail)? {
            RealizationResult::Accepted { diagram: c, .. } => {
                write_out(accepted, true)?;
                write_out(boundary_cycles, 1)?;
                write_string(diagram, c.to_string())
            }
            RealizationResult::Rejected { boundary_cycles: n } => {
                write_out(accepted, false)?;
                write_out(boundary_cycles, n)?;
                write_out(diagram, ptr::null_mut())
            }
        }
    })
}
