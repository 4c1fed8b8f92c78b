use std::ffi::{CStr, CString};
use std::ptr;

use ptolemy_ffi::*;

fn last_error() -> String {
    let n = unsafe { ptolemy_last_error_message(ptr::null_mut(), 0) };
    let mut buf = vec![0 as std::ffi::c_char; n.max(1)];
    unsafe { ptolemy_last_error_message(buf.as_mut_ptr(), buf.len()) };
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

fn symplectic(genus: usize) -> *mut PtolemyGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ptolemy_graph_symplectic(genus, &mut g) }, PtolemyStatus::Ok);
    g
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { ptolemy_string_free(p) };
    s
}

fn movable_dart(g: *const PtolemyGraph) -> u32 {
    let mut n = 0;
    unsafe { ptolemy_graph_num_darts(g, &mut n) };
    (1..=n as u32)
        .find(|&d| {
            let mut h = ptr::null_mut();
            let ok = unsafe { ptolemy_graph_whitehead_move(g, d, &mut h) } == PtolemyStatus::Ok;
            unsafe { ptolemy_graph_free(h) };
            ok
        })
        .unwrap()
}

#[test]
fn null_pointers_are_reported() {
    let mut n = 0;
    assert_eq!(unsafe { ptolemy_graph_genus(ptr::null(), &mut n) }, PtolemyStatus::NullPointer);
    assert_eq!(last_error(), "graph is null");
    let g = symplectic(1);
    assert_eq!(unsafe { ptolemy_graph_genus(g, ptr::null_mut()) }, PtolemyStatus::NullPointer);
    unsafe { ptolemy_graph_free(g) };
    unsafe { ptolemy_graph_free(ptr::null_mut()) };
}

#[test]
fn success_clears_the_error() {
    let g = symplectic(1);
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ptolemy_graph_whitehead_move(g, 99, &mut h) }, PtolemyStatus::FatGraph);
    assert!(last_error().contains("99"));
    let mut n = 0;
    assert_eq!(unsafe { ptolemy_graph_genus(g, &mut n) }, PtolemyStatus::Ok);
    assert_eq!(n, 1);
    assert_eq!(unsafe { ptolemy_last_error_message(ptr::null_mut(), 0) }, 0);
    unsafe { ptolemy_graph_free(g) };
}

#[test]
fn parse_errors() {
    let bad = CString::new("darts 3\nnonsense\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ptolemy_graph_parse(bad.as_ptr(), &mut g) }, PtolemyStatus::Parse);
    assert!(g.is_null());
    let mut accepted = false;
    let mut cycles = 0;
    let mut diagram = ptr::null_mut();
    let word = CString::new("1 x").unwrap();
    assert_eq!(
        unsafe { ptolemy_word_realize(word.as_ptr(), &mut accepted, &mut cycles, &mut diagram) },
        PtolemyStatus::Parse
    );
    let invalid = [0xffu8, 0];
    assert_eq!(unsafe { ptolemy_graph_parse(invalid.as_ptr() as *const _, &mut g) }, PtolemyStatus::InvalidUtf8);
}

#[test]
fn text_round_trip() {
    let g = symplectic(2);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { ptolemy_graph_to_string(g, &mut text) }, PtolemyStatus::Ok);
    let text = take_string(text);
    let c = CString::new(text).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ptolemy_graph_parse(c.as_ptr(), &mut h) }, PtolemyStatus::Ok);
    let mut same = false;
    assert_eq!(unsafe { ptolemy_graph_isomorphic(g, h, &mut same) }, PtolemyStatus::Ok);
    assert!(same);
    unsafe { ptolemy_graph_free(g) };
    unsafe { ptolemy_graph_free(h) };
}

#[test]
fn canonical_code_buffer() {
    let g = symplectic(1);
    let mut n = 0;
    assert_eq!(unsafe { ptolemy_graph_canonical_code(g, ptr::null_mut(), 0, &mut n) }, PtolemyStatus::BufferTooSmall);
    assert!(n > 0);
    let mut code = vec![0u32; n];
    assert_eq!(unsafe { ptolemy_graph_canonical_code(g, code.as_mut_ptr(), n, &mut n) }, PtolemyStatus::Ok);
    let mut clone = ptr::null_mut();
    unsafe { ptolemy_graph_clone(g, &mut clone) };
    let mut again = vec![0u32; n];
    unsafe { ptolemy_graph_canonical_code(clone, again.as_mut_ptr(), n, &mut n) };
    assert_eq!(code, again);
    unsafe { ptolemy_graph_free(g) };
    unsafe { ptolemy_graph_free(clone) };
}

#[test]
fn double_move_is_isomorphic_and_trivial() {
    let g = symplectic(2);
    let d = movable_dart(g);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ptolemy_sequence_new(g, &mut s) }, PtolemyStatus::Ok);
    assert_eq!(unsafe { ptolemy_sequence_push(s, d) }, PtolemyStatus::Ok);
    assert_eq!(unsafe { ptolemy_sequence_push(s, d) }, PtolemyStatus::Ok);
    let mut len = 0;
    unsafe { ptolemy_sequence_len(s, &mut len) };
    assert_eq!(len, 2);
    let mut end = ptr::null_mut();
    assert_eq!(unsafe { ptolemy_sequence_end(s, &mut end) }, PtolemyStatus::Ok);
    let mut same = false;
    unsafe { ptolemy_graph_isomorphic(g, end, &mut same) };
    assert!(same);

    let mut m = [0i64; 16];
    let mut dim = 0;
    assert_eq!(unsafe { ptolemy_sequence_sp(s, m.as_mut_ptr(), 16, &mut dim) }, PtolemyStatus::Ok);
    assert_eq!(dim, 4);
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(m[4 * i + j], (i == j) as i64);
        }
    }
    assert_eq!(unsafe { ptolemy_sequence_sp(s, m.as_mut_ptr(), 15, &mut dim) }, PtolemyStatus::BufferTooSmall);

    let mut n = ptr::null_mut();
    assert_eq!(unsafe { ptolemy_sequence_nielsen(s, &mut n) }, PtolemyStatus::Ok);
    let text = take_string(n);
    assert_eq!(text.lines().count(), 4, "{text}");
    unsafe { ptolemy_graph_free(end) };
    unsafe { ptolemy_sequence_free(s) };
    unsafe { ptolemy_graph_free(g) };
}

#[test]
fn classify_names_a_type() {
    let g = symplectic(1);
    let d = movable_dart(g);
    let mut k = ptr::null_mut();
    assert_eq!(unsafe { ptolemy_graph_classify_move(g, d, &mut k) }, PtolemyStatus::Ok);
    let k = take_string(k);
    assert!(k.starts_with(|c: char| c.is_ascii_digit()), "{k}");
    unsafe { ptolemy_graph_free(g) };
}

#[test]
fn realize_accepts_and_rejects() {
    let mut accepted = false;
    let mut cycles = 0;
    let mut diagram = ptr::null_mut();
    let w = CString::new("1 2 -1 -2").unwrap();
    assert_eq!(
        unsafe { ptolemy_word_realize(w.as_ptr(), &mut accepted, &mut cycles, &mut diagram) },
        PtolemyStatus::Ok
    );
    assert!(accepted);
    assert_eq!(cycles, 1);
    assert!(take_string(diagram).starts_with("core: 4"));
    let w = CString::new("1 2 -1 3 4 -2 -4 -3").unwrap();
    assert_eq!(
        unsafe { ptolemy_word_realize(w.as_ptr(), &mut accepted, &mut cycles, &mut diagram) },
        PtolemyStatus::Ok
    );
    assert!(!accepted);
    assert_eq!(cycles, 3);
    assert!(diagram.is_null());
}
