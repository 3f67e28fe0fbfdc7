use std::ffi::{c_char, CStr, CString};
use std::ptr;

use dualis_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn parse(re: &str, alphabet: &str) -> *mut DualisLanguage {
    let mut out = ptr::null_mut();
    let status = unsafe { dualis_language_parse(c(re).as_ptr(), c(alphabet).as_ptr(), &mut out) };
    assert_eq!(status, DualisStatus::Ok);
    assert!(!out.is_null());
    out
}

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { dualis_string_free(p) };
    s
}

fn accepts(l: *const DualisLanguage, w: &str) -> bool {
    let mut out = false;
    assert_eq!(unsafe { dualis_language_accepts(l, c(w).as_ptr(), &mut out) }, DualisStatus::Ok);
    out
}

#[test]
fn language_round_trip() {
    let l = parse("(a|b)*abb", "a,b");
    assert_eq!(unsafe { dualis_language_state_count(l) }, 4);
    assert!(accepts(l, "babb"));
    assert!(!accepts(l, "abba"));
    let js = take_string(unsafe { dualis_language_to_json(l) });
    let v: serde_json::Value = serde_json::from_str(&js).unwrap();
    assert_eq!(v["states"], 4);
    unsafe { dualis_language_free(l) };
}

#[test]
fn residuals_through_handles() {
    let k = parse("a", "ab");
    let l = parse("a*b", "ab");
    let mut left = ptr::null_mut();
    let mut right = ptr::null_mut();
    unsafe {
        assert_eq!(dualis_language_residual_left(k, l, &mut left), DualisStatus::Ok);
        assert_eq!(dualis_language_residual_right(l, k, &mut right), DualisStatus::Ok);
    }
    let expected = parse("a*b", "ab");
    let mut same = false;
    assert_eq!(unsafe { dualis_language_equals(left, expected, &mut same) }, DualisStatus::Ok);
    assert!(same);
    assert_eq!(unsafe { dualis_language_state_count(right) }, 1);
    assert!(!accepts(right, ""));
    unsafe {
        for h in [k, l, left, right, expected] {
            dualis_language_free(h);
        }
    }
}

#[test]
fn syntactic_monoid_of_counting_mod_three() {
    let l = parse("(aaa)*", "a");
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { dualis_syntactic_monoid(l, &mut m) }, DualisStatus::Ok);
    assert_eq!(unsafe { dualis_monoid_size(m) }, 3);
    let mut id = 9;
    assert_eq!(unsafe { dualis_monoid_identity(m, &mut id) }, DualisStatus::Ok);
    let mut a = 9;
    assert_eq!(unsafe { dualis_monoid_eval_word(m, c("a").as_ptr(), &mut a) }, DualisStatus::Ok);
    let mut x = a;
    for _ in 0..2 {
        assert_eq!(unsafe { dualis_monoid_multiply(m, x, a, &mut x) }, DualisStatus::Ok);
    }
    assert_eq!(x, id);
    let mut acc = false;
    assert_eq!(unsafe { dualis_monoid_is_accepting(m, id, &mut acc) }, DualisStatus::Ok);
    assert!(acc);
    let mut prod = 0;
    assert_eq!(unsafe { dualis_monoid_multiply(m, 3, 0, &mut prod) }, DualisStatus::OutOfRange);
    let js = take_string(unsafe { dualis_monoid_to_json(m) });
    assert!(js.contains("\"accepting\""));
    unsafe {
        dualis_monoid_free(m);
        dualis_language_free(l);
    }
}

#[test]
fn equations() {
    let even = parse("(aa)*", "a");
    let all = parse("a*", "a");
    let mut holds = true;
    let e = c("a^w a <-> a^w");
    assert_eq!(unsafe { dualis_check_equation(even, e.as_ptr(), &mut holds) }, DualisStatus::Ok);
    assert!(!holds);
    assert_eq!(unsafe { dualis_check_equation(all, e.as_ptr(), &mut holds) }, DualisStatus::Ok);
    assert!(holds);
    assert_eq!(unsafe { dualis_check_equation(all, c("a -> (").as_ptr(), &mut holds) }, DualisStatus::Parse);
    assert_eq!(unsafe { dualis_check_equation(all, c("b -> a").as_ptr(), &mut holds) }, DualisStatus::Alphabet);
    unsafe {
        dualis_language_free(even);
        dualis_language_free(all);
    }
}

#[test]
fn errors_are_reported() {
    let mut out = ptr::null_mut();
    let status = unsafe { dualis_language_parse(c("(a").as_ptr(), c("a").as_ptr(), &mut out) };
    assert_eq!(status, DualisStatus::Parse);
    assert!(out.is_null());
    let msg = take_string(dualis_last_error_message());
    assert!(msg.contains("syntax error"), "{msg}");

    let status = unsafe { dualis_language_parse(c("b").as_ptr(), c("a").as_ptr(), &mut out) };
    assert_eq!(status, DualisStatus::Alphabet);
    let status = unsafe { dualis_language_parse(ptr::null(), c("a").as_ptr(), &mut out) };
    assert_eq!(status, DualisStatus::NullPointer);
    let bad = [0xffu8, 0];
    let status = unsafe { dualis_language_parse(bad.as_ptr().cast(), c("a").as_ptr(), &mut out) };
    assert_eq!(status, DualisStatus::InvalidUtf8);

    // success clears the message
    let l = parse("a", "a");
    assert!(dualis_last_error_message().is_null());
    let mut flag = false;
    assert_eq!(unsafe { dualis_language_accepts(l, c("b").as_ptr(), &mut flag) }, DualisStatus::Alphabet);
    assert_eq!(unsafe { dualis_language_accepts(l, c("a").as_ptr(), ptr::null_mut()) }, DualisStatus::NullPointer);
    let other = parse("a", "ab");
    assert_eq!(unsafe { dualis_language_equals(l, other, &mut flag) }, DualisStatus::Alphabet);
    unsafe {
        dualis_language_free(l);
        dualis_language_free(other);
    }
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        dualis_language_free(ptr::null_mut());
        dualis_monoid_free(ptr::null_mut());
        dualis_string_free(ptr::null_mut());
        assert_eq!(dualis_language_state_count(ptr::null()), 0);
        assert_eq!(dualis_monoid_size(ptr::null()), 0);
        assert!(dualis_language_to_json(ptr::null()).is_null());
        let mut id = 0;
        assert_eq!(dualis_monoid_identity(ptr::null(), &mut id), DualisStatus::NullPointer);
    }
    let v = unsafe { CStr::from_ptr(dualis_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
