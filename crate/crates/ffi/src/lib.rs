//! C interface to `dualis`.
//!
//! Objects are opaque handles created by `*_parse`/`*_new` style calls and
//! released with the matching `*_free`. Fallible calls return a
//! [`DualisStatus`] and write their result through an out-pointer; the
//! message of the last failure on the calling thread is available from
//! [`dualis_last_error_message`]. Strings returned by the library are owned
//! by the caller and released with [`dualis_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dualis::lang::io::{DfaJson, MorphismJson};
use dualis::lang::{residual_left, residual_right, syntactic_morphism, Alphabet, LangError, RecognizingMorphism, RegularLanguage};
use dualis::profinite::{check_with, Equation, ProfiniteError};

/// Result of a fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualisStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An expression, equation or word failed to parse.
    Parse = 3,
    /// Symbols or alphabets do not fit together.
    Alphabet = 4,
    /// An element index is out of range.
    OutOfRange = 5,
    /// A checked law failed inside the library.
    Violation = 6,
    /// The library panicked; the handle arguments are left untouched.
    Internal = 7,
}

/// A regular language with its canonical minimal automaton.
pub struct DualisLanguage {
    inner: RegularLanguage,
}

/// The syntactic monoid of a language together with the letter images and
/// the accepting set.
pub struct DualisMonoid {
    inner: RecognizingMorphism,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

struct Failure(DualisStatus, String);

impl From<LangError> for Failure {
    fn from(e: LangError) -> Self {
        let status = match e {
            LangError::Syntax { .. } => DualisStatus::Parse,
            LangError::UnknownSymbol { .. } | LangError::ReservedSymbol(_) | LangError::AlphabetMismatch(..) => {
                DualisStatus::Alphabet
            }
            LangError::MonoidLaw(_) => DualisStatus::Violation,
            _ => DualisStatus::Parse,
        };
        Failure(status, e.to_string())
    }
}

impl From<ProfiniteError> for Failure {
    fn from(e: ProfiniteError) -> Self {
        match e {
            ProfiniteError::Lang(inner) => inner.into(),
            ProfiniteError::Unassigned(_) | ProfiniteError::LetterOutsideAlphabet(_) => {
                Failure(DualisStatus::Alphabet, e.to_string())
            }
            ProfiniteError::ResAlg(_) => Failure(DualisStatus::Violation, e.to_string()),
            _ => Failure(DualisStatus::Parse, e.to_string()),
        }
    }
}

fn set_error(msg: Option<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

/// Runs `f`, recording its failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DualisStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            DualisStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(_) => {
            set_error(Some("internal error".into()));
            DualisStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(DualisStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(DualisStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(DualisStatus::NullPointer, format!("{what} is NULL")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(DualisStatus::NullPointer, "output pointer is NULL".into()));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dualis_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL after a
/// successful call. Release with [`dualis_string_free`].
#[no_mangle]
pub extern "C" fn dualis_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().clone().map_or(ptr::null_mut(), owned_string))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dualis_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `regex` over the symbols of `alphabet` (written `"ab"` or `"a,b"`).
///
/// # Safety
/// `regex` and `alphabet` must be NUL-terminated strings; `out` must be a
/// writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dualis_language_parse(
    regex: *const c_char,
    alphabet: *const c_char,
    out: *mut *mut DualisLanguage,
) -> DualisStatus {
    guard(|| {
        let a = Alphabet::parse(text(alphabet, "alphabet")?)?;
        let l = RegularLanguage::parse(text(regex, "regex")?, &a)?;
        put(out, Box::into_raw(Box::new(DualisLanguage { inner: l })))
    })
}

/// # Safety
/// `lang` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dualis_language_free(lang: *mut DualisLanguage) {
    if !lang.is_null() {
        drop(Box::from_raw(lang));
    }
}

/// Whether `word` (a string of alphabet symbols) belongs to `lang`.
///
/// # Safety
/// `lang` must be a live handle, `word` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn dualis_language_accepts(
    lang: *const DualisLanguage,
    word: *const c_char,
    out: *mut bool,
) -> DualisStatus {
    guard(|| {
        let l = handle(lang, "language")?;
        put(out, l.inner.accepts(text(word, "word")?)?)
    })
}

/// States of the minimal automaton, 0 for a NULL handle.
///
/// # Safety
/// `lang` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dualis_language_state_count(lang: *const DualisLanguage) -> usize {
    lang.as_ref().map_or(0, |l| l.inner.state_count())
}

/// Whether two languages over the same alphabet are equal.
///
/// # Safety
/// Both handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dualis_language_equals(
    a: *const DualisLanguage,
    b: *const DualisLanguage,
    out: *mut bool,
) -> DualisStatus {
    guard(|| {
        let (a, b) = (handle(a, "first language")?, handle(b, "second language")?);
        a.inner.alphabet().check_same(b.inner.alphabet())?;
        put(out, a.inner == b.inner)
    })
}

/// Left residual `k\l` (words `w` with `k·w ⊆ l`) as a new handle.
///
/// # Safety
/// Both handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dualis_language_residual_left(
    k: *const DualisLanguage,
    l: *const DualisLanguage,
    out: *mut *mut DualisLanguage,
) -> DualisStatus {
    guard(|| {
        let r = residual_left(&handle(k, "divisor")?.inner, &handle(l, "numerator")?.inner)?;
        put(out, Box::into_raw(Box::new(DualisLanguage { inner: r })))
    })
}

/// Right residual `l/k` (words `w` with `w·k ⊆ l`) as a new handle.
///
/// # Safety
/// Both handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dualis_language_residual_right(
    l: *const DualisLanguage,
    k: *const DualisLanguage,
    out: *mut *mut DualisLanguage,
) -> DualisStatus {
    guard(|| {
        let r = residual_right(&handle(l, "numerator")?.inner, &handle(k, "divisor")?.inner)?;
        put(out, Box::into_raw(Box::new(DualisLanguage { inner: r })))
    })
}

/// The minimal automaton as JSON, or NULL for a NULL handle.
///
/// # Safety
/// `lang` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dualis_language_to_json(lang: *const DualisLanguage) -> *mut c_char {
    match lang.as_ref() {
        Some(l) => serde_json::to_string(&DfaJson::from_dfa(l.inner.dfa())).map_or(ptr::null_mut(), owned_string),
        None => ptr::null_mut(),
    }
}

/// Syntactic monoid of `lang` as a new handle.
///
/// # Safety
/// `lang` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dualis_syntactic_monoid(
    lang: *const DualisLanguage,
    out: *mut *mut DualisMonoid,
) -> DualisStatus {
    guard(|| {
        let eta = syntactic_morphism(&handle(lang, "language")?.inner);
        put(out, Box::into_raw(Box::new(DualisMonoid { inner: eta })))
    })
}

/// # Safety
/// `m` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dualis_monoid_free(m: *mut DualisMonoid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of elements, 0 for a NULL handle.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dualis_monoid_size(m: *const DualisMonoid) -> usize {
    m.as_ref().map_or(0, |m| m.inner.monoid().len())
}

/// Index of the identity (the image of the empty word).
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dualis_monoid_identity(m: *const DualisMonoid, out: *mut usize) -> DualisStatus {
    guard(|| put(out, handle(m, "monoid")?.inner.monoid().identity()))
}

/// Product `x·y` of two element indices.
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dualis_monoid_multiply(
    m: *const DualisMonoid,
    x: usize,
    y: usize,
    out: *mut usize,
) -> DualisStatus {
    guard(|| {
        let monoid = handle(m, "monoid")?.inner.monoid();
        let n = monoid.len();
        if x >= n || y >= n {
            return Err(Failure(DualisStatus::OutOfRange, format!("element index out of range 0..{n}")));
        }
        put(out, monoid.mul(x, y))
    })
}

/// Image of `word` under the recognizing morphism.
///
/// # Safety
/// `m` must be a live handle, `word` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dualis_monoid_eval_word(
    m: *const DualisMonoid,
    word: *const c_char,
    out: *mut usize,
) -> DualisStatus {
    guard(|| {
        let eta = &handle(m, "monoid")?.inner;
        put(out, eta.eval_str(text(word, "word")?)?)
    })
}

/// Whether element `x` lies in the accepting set.
///
/// # Safety
/// `m` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dualis_monoid_is_accepting(m: *const DualisMonoid, x: usize, out: *mut bool) -> DualisStatus {
    guard(|| {
        let eta = &handle(m, "monoid")?.inner;
        if x >= eta.monoid().len() {
            return Err(Failure(DualisStatus::OutOfRange, format!("element index {x} out of range")));
        }
        put(out, eta.accepting().contains(x))
    })
}

/// The morphism (table, letter images, accepting set) as JSON, or NULL for
/// a NULL handle.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dualis_monoid_to_json(m: *const DualisMonoid) -> *mut c_char {
    match m.as_ref() {
        Some(m) => serde_json::to_string(&MorphismJson::from_morphism(&m.inner)).map_or(ptr::null_mut(), owned_string),
        None => ptr::null_mut(),
    }
}

/// Whether `lang` satisfies `equation` (`u -> v`, `u <-> v` or `u <= v`
/// over ω-terms in the alphabet letters).
///
/// # Safety
/// `lang` must be a live handle, `equation` NUL-terminated and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn dualis_check_equation(
    lang: *const DualisLanguage,
    equation: *const c_char,
    out: *mut bool,
) -> DualisStatus {
    guard(|| {
        let l = handle(lang, "language")?;
        let e = Equation::parse(text(equation, "equation")?)?;
        let eta = syntactic_morphism(&l.inner);
        put(out, check_with(&eta, eta.accepting(), &e)?.holds)
    })
}
