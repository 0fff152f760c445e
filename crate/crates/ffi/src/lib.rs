//! C interface to `vandlrc`.
//!
//! Families and codes are opaque heap handles released with their `_free`
//! function. Every fallible call returns a [`VlrcStatus`]; on failure the
//! message is available from [`vlrc_last_error`] on the same thread.
//! Symbols cross the boundary as `uint32_t` field element values, with
//! [`VLRC_ERASED`] marking an erasure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use vandlrc::codec::{Code, ReceivedWord};
use vandlrc::format::parse_family;
use vandlrc::gf::{FieldContext, FieldElement};
use vandlrc::setfam::{derandomized_family, greedy_family, random_family, SetFamily};
use vandlrc::Error;

/// Marks an erased symbol in word buffers.
pub const VLRC_ERASED: u32 = u32::MAX;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VlrcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidFamily = 3,
    GenerationFailed = 4,
    LengthMismatch = 5,
    Unrecoverable = 6,
    Inconsistent = 7,
    BudgetExceeded = 8,
    ParseError = 9,
    /// A Rust panic was caught at the boundary.
    Internal = 10,
}

/// Opaque set family.
pub struct VlrcFamily(SetFamily);

/// Opaque code built from a family.
pub struct VlrcCode(Code);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> VlrcStatus {
    match e {
        Error::InvalidFamily(_) => VlrcStatus::InvalidFamily,
        Error::GenerationFailed { .. } => VlrcStatus::GenerationFailed,
        Error::LengthMismatch { .. } => VlrcStatus::LengthMismatch,
        Error::Unrecoverable { .. } | Error::NotSingleErasure(_) | Error::GroupMateErased { .. } => {
            VlrcStatus::Unrecoverable
        }
        Error::Inconsistent => VlrcStatus::Inconsistent,
        Error::BudgetExceeded { .. } => VlrcStatus::BudgetExceeded,
        Error::Parse { .. } => VlrcStatus::ParseError,
        _ => VlrcStatus::InvalidArgument,
    }
}

enum Fail {
    Null(&'static str),
    Arg(String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, recording the error message and mapping panics to `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> VlrcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VlrcStatus::Ok,
        Ok(Err(Fail::Null(name))) => {
            set_error(format!("null pointer: {name}"));
            VlrcStatus::NullPointer
        }
        Ok(Err(Fail::Arg(msg))) => {
            set_error(msg);
            VlrcStatus::InvalidArgument
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal error: panic caught at the C boundary".into());
            VlrcStatus::Internal
        }
    }
}

unsafe fn nonnull<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(name))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, name: &'static str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(name));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut<'a, T>(p: *mut T, len: usize, name: &'static str) -> Result<&'a mut [T], Fail> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(Fail::Null(name));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn check_len(expected: usize, actual: usize) -> Result<(), Fail> {
    if expected != actual {
        return Err(Error::LengthMismatch { expected, actual }.into());
    }
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn vlrc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn vlrc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Family from `m` sets of `r + 1` elements each, laid out consecutively
/// in `elements`.
///
/// # Safety
/// `elements` must point to `m * (r + 1)` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vlrc_family_new(
    q: u32,
    r: usize,
    t: usize,
    elements: *const u32,
    m: usize,
    out: *mut *mut VlrcFamily,
) -> VlrcStatus {
    guard(|| {
        let len = m
            .checked_mul(r + 1)
            .ok_or_else(|| Fail::Arg("m * (r + 1) overflows".into()))?;
        let data = slice(elements, len, "elements")?;
        let sets = if len == 0 {
            Vec::new()
        } else {
            data.chunks(r + 1).map(<[u32]>::to_vec).collect()
        };
        put(out, VlrcFamily(SetFamily::new(q, r, t, sets)?))
    })
}

/// Family parsed from the text format `q r t m` followed by `m` sets.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vlrc_family_parse(text: *const c_char, out: *mut *mut VlrcFamily) -> VlrcStatus {
    guard(|| {
        if text.is_null() {
            return Err(Fail::Null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Fail::Arg("text is not UTF-8".into()))?;
        put(out, VlrcFamily(parse_family(s)?))
    })
}

/// Probabilistic construction (`t >= 3`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vlrc_family_random(
    q: u32,
    r: usize,
    t: usize,
    seed: u64,
    max_attempts: u32,
    out: *mut *mut VlrcFamily,
) -> VlrcStatus {
    guard(|| put(out, VlrcFamily(random_family(q, r, t, seed, max_attempts)?)))
}

/// Greedy construction from `candidate_budget` random candidates.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vlrc_family_greedy(
    q: u32,
    r: usize,
    t: usize,
    candidate_budget: u64,
    seed: u64,
    out: *mut *mut VlrcFamily,
) -> VlrcStatus {
    guard(|| put(out, VlrcFamily(greedy_family(q, r, t, candidate_budget, seed)?)))
}

/// Deterministic construction (`t` in {2, 3}).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vlrc_family_derandomized(q: u32, r: usize, t: usize, out: *mut *mut VlrcFamily) -> VlrcStatus {
    guard(|| put(out, VlrcFamily(derandomized_family(q, r, t)?)))
}

/// # Safety
/// `family` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vlrc_family_free(family: *mut VlrcFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Number of sets; 0 for NULL.
///
/// # Safety
/// `family` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vlrc_family_size(family: *const VlrcFamily) -> usize {
    family.as_ref().map_or(0, |f| f.0.m())
}

/// Copies the `r + 1` elements of set `index` into `out`.
///
/// # Safety
/// `family` must be a live handle and `out` must hold `out_len` values.
#[no_mangle]
pub unsafe extern "C" fn vlrc_family_get_set(
    family: *const VlrcFamily,
    index: usize,
    out: *mut u32,
    out_len: usize,
) -> VlrcStatus {
    guard(|| {
        let f = &nonnull(family, "family")?.0;
        let set = f
            .sets()
            .get(index)
            .ok_or_else(|| Fail::Arg(format!("set index {index} out of range for m = {}", f.m())))?;
        check_len(set.len(), out_len)?;
        slice_mut(out, out_len, "out")?.copy_from_slice(set);
        Ok(())
    })
}

/// Sets `*passes` to whether the union condition holds at the family's depth.
///
/// # Safety
/// `family` must be a live handle and `passes` writable.
#[no_mangle]
pub unsafe extern "C" fn vlrc_family_verify(family: *const VlrcFamily, passes: *mut bool) -> VlrcStatus {
    guard(|| {
        let f = &nonnull(family, "family")?.0;
        if passes.is_null() {
            return Err(Fail::Null("passes"));
        }
        *passes = f.passes();
        Ok(())
    })
}

/// Code of design distance `d` from a family passing the union condition.
///
/// # Safety
/// `family` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vlrc_code_from_family(
    family: *const VlrcFamily,
    d: usize,
    out: *mut *mut VlrcCode,
) -> VlrcStatus {
    guard(|| {
        let f = &nonnull(family, "family")?.0;
        let field = Arc::new(FieldContext::new(f.q() as u64)?);
        put(out, VlrcCode(Code::from_family(field, f, d)?))
    })
}

/// # Safety
/// `code` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vlrc_code_free(code: *mut VlrcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Length; 0 for NULL.
///
/// # Safety
/// `code` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vlrc_code_n(code: *const VlrcCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.n())
}

/// Dimension; 0 for NULL.
///
/// # Safety
/// `code` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vlrc_code_k(code: *const VlrcCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.k())
}

/// Design distance; 0 for NULL.
///
/// # Safety
/// `code` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vlrc_code_d(code: *const VlrcCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.params().d)
}

/// Locality; 0 for NULL.
///
/// # Safety
/// `code` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vlrc_code_r(code: *const VlrcCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.params().r)
}

/// Field order; 0 for NULL.
///
/// # Safety
/// `code` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vlrc_code_q(code: *const VlrcCode) -> u32 {
    code.as_ref().map_or(0, |c| c.0.field().order())
}

fn elements(code: &Code, values: &[u32]) -> Result<Vec<FieldElement>, Fail> {
    values
        .iter()
        .map(|&v| code.field().elem(v as u64).map_err(Fail::from))
        .collect()
}

fn received(code: &Code, values: &[u32]) -> Result<ReceivedWord, Fail> {
    values
        .iter()
        .map(|&v| {
            if v == VLRC_ERASED {
                Ok(None)
            } else {
                code.field().elem(v as u64).map(Some).map_err(Fail::from)
            }
        })
        .collect::<Result<_, _>>()
        .map(ReceivedWord)
}

fn write_word(values: &[FieldElement], out: *mut u32, out_len: usize) -> Result<(), Fail> {
    check_len(values.len(), out_len)?;
    let dst = unsafe { slice_mut(out, out_len, "out")? };
    for (d, v) in dst.iter_mut().zip(values) {
        *d = v.value();
    }
    Ok(())
}

/// Encodes `k` message symbols into `n` codeword symbols.
///
/// # Safety
/// `message` must hold `k` values and `out` must hold `n` values.
#[no_mangle]
pub unsafe extern "C" fn vlrc_code_encode(
    code: *const VlrcCode,
    message: *const u32,
    k: usize,
    out: *mut u32,
    n: usize,
) -> VlrcStatus {
    guard(|| {
        let c = &nonnull(code, "code")?.0;
        check_len(c.k(), k)?;
        let msg = elements(c, slice(message, k, "message")?)?;
        let cw = c.encode(&msg)?;
        write_word(cw.symbols(), out, n)
    })
}

/// Recovers the single erased symbol of `word` from its repair group.
/// Writes the position, the value and the number of symbols read.
///
/// # Safety
/// `word` must hold `n` values; the three output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn vlrc_code_local_repair(
    code: *const VlrcCode,
    word: *const u32,
    n: usize,
    position: *mut usize,
    value: *mut u32,
    symbols_read: *mut usize,
) -> VlrcStatus {
    guard(|| {
        let c = &nonnull(code, "code")?.0;
        check_len(c.n(), n)?;
        if position.is_null() || value.is_null() || symbols_read.is_null() {
            return Err(Fail::Null("output"));
        }
        let w = received(c, slice(word, n, "word")?)?;
        let fix = c.local_repair(&w)?;
        *position = fix.position;
        *value = fix.value.value();
        *symbols_read = fix.read.len();
        Ok(())
    })
}

/// Fills every erasure of `word` into `out` by solving the parity checks.
///
/// # Safety
/// `word` and `out` must each hold `n` values.
#[no_mangle]
pub unsafe extern "C" fn vlrc_code_decode(
    code: *const VlrcCode,
    word: *const u32,
    out: *mut u32,
    n: usize,
) -> VlrcStatus {
    guard(|| {
        let c = &nonnull(code, "code")?.0;
        check_len(c.n(), n)?;
        let w = received(c, slice(word, n, "word")?)?;
        let cw = c.erasure_decode(&w)?;
        write_word(cw.symbols(), out, n)
    })
}

/// Returns 1 if `word` (no erasures) is a codeword, 0 if not, -1 on error.
///
/// # Safety
/// `word` must hold `n` values.
#[no_mangle]
pub unsafe extern "C" fn vlrc_code_is_codeword(code: *const VlrcCode, word: *const u32, n: usize) -> i32 {
    let mut result = false;
    let status = guard(|| {
        let c = &nonnull(code, "code")?.0;
        check_len(c.n(), n)?;
        let w = elements(c, slice(word, n, "word")?)?;
        result = c.is_codeword(&w)?;
        Ok(())
    });
    match status {
        VlrcStatus::Ok => i32::from(result),
        _ => -1,
    }
}

/// Exact minimum distance, enumerating at most `budget` column subsets.
///
/// # Safety
/// `code` must be a live handle and `distance` writable.
#[no_mangle]
pub unsafe extern "C" fn vlrc_code_min_distance(
    code: *const VlrcCode,
    budget: u64,
    distance: *mut usize,
) -> VlrcStatus {
    guard(|| {
        let c = &nonnull(code, "code")?.0;
        if distance.is_null() {
            return Err(Fail::Null("distance"));
        }
        *distance = c.parity_check().exact_min_distance(budget as u128)?.distance;
        Ok(())
    })
}

/// Field order check helper for bindings: `q` is a prime power at most 65536.
#[no_mangle]
pub extern "C" fn vlrc_is_valid_order(q: u32) -> bool {
    FieldContext::new(q as u64).is_ok()
}
