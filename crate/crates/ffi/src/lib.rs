//! C ABI over `wanglab`.
//!
//! Tilesets cross the boundary as 16-bit masks (bit `c` set when the tile
//! with code `c` is present). Patterns are opaque handles owned by the
//! caller and released with [`wl_pattern_free`]. Every fallible call returns
//! a [`WlStatus`]; the message of the last failure on the calling thread is
//! available from [`wl_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wanglab::render::{render_svg, RenderStyle};
use wanglab::solver::{self, Bounds};
use wanglab::symmetry::{self, Universe};
use wanglab::{classification, generation, Cell, Error, TilePattern, Tileset};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    UnknownClass = 4,
    EmptyClass = 5,
    NotEven = 6,
    Undecided = 7,
    OutOfBounds = 8,
    Internal = 9,
}

/// A finite tile pattern on a rectangle.
pub struct WlPattern {
    inner: TilePattern,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: WlStatus, msg: impl Into<String>) -> WlStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> WlStatus {
    let status = match &e {
        Error::Parse(_) => WlStatus::Parse,
        Error::UnknownClass(_) => WlStatus::UnknownClass,
        Error::EmptyClass(_) => WlStatus::EmptyClass,
        Error::NotEven(_) | Error::OddTile(_) => WlStatus::NotEven,
        _ => WlStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning a panic into [`WlStatus::Internal`].
fn guard(f: impl FnOnce() -> WlStatus) -> WlStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(WlStatus::Internal, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, WlStatus> {
    if s.is_null() {
        return Err(fail(WlStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(WlStatus::Parse, "string is not UTF-8"))
}

fn new_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// The message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a tileset literal such as `"0000,0011,1100"` into a mask.
///
/// # Safety
/// `literal` must be a NUL-terminated string and `out_mask` writable.
#[no_mangle]
pub unsafe extern "C" fn wl_tileset_parse(literal: *const c_char, out_mask: *mut u16) -> WlStatus {
    guard(|| {
        if out_mask.is_null() {
            return fail(WlStatus::NullPointer, "null output");
        }
        let s = match read_str(literal) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match s.parse::<Tileset>() {
            Ok(ts) => {
                *out_mask = ts.mask();
                WlStatus::Ok
            }
            Err(e) => fail(WlStatus::Parse, e.to_string()),
        }
    })
}

/// The canonical representative of the symmetry orbit of `mask`.
#[no_mangle]
pub extern "C" fn wl_tileset_canonical(mask: u16) -> u16 {
    symmetry::canonical(Tileset::from_mask(mask)).mask()
}

/// Orbits of non-empty tilesets: of even tiles when `all` is false, of all
/// sixteen tiles otherwise.
#[no_mangle]
pub extern "C" fn wl_orbit_count(all: bool) -> usize {
    symmetry::count_orbits(if all { Universe::All } else { Universe::Even })
}

/// Writes the class id (e.g. `"6.5.3"`) and verdict of an even tileset as
/// new strings; free both with [`wl_string_free`]. `out_verdict` may be NULL.
///
/// # Safety
/// `out_id` must be writable; `out_verdict` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn wl_classify(mask: u16, out_id: *mut *mut c_char, out_verdict: *mut *mut c_char) -> WlStatus {
    guard(|| {
        if out_id.is_null() {
            return fail(WlStatus::NullPointer, "null output");
        }
        match classification::classify(Tileset::from_mask(mask)) {
            Ok(rec) => {
                *out_id = new_string(rec.id.clone());
                if !out_verdict.is_null() {
                    *out_verdict = new_string(rec.verdict.as_str().to_string());
                }
                WlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Decides emptiness with the default search bounds; `*out_empty` is 1 when
/// no configuration exists.
///
/// # Safety
/// `out_empty` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wl_is_empty(mask: u16, out_empty: *mut bool) -> WlStatus {
    guard(|| {
        if out_empty.is_null() {
            return fail(WlStatus::NullPointer, "null output");
        }
        match solver::is_empty(Tileset::from_mask(mask), &Bounds::default()) {
            Ok(e) => {
                *out_empty = e.is_empty();
                WlStatus::Ok
            }
            Err(u) => fail(WlStatus::Undecided, u.to_string()),
        }
    })
}

/// Samples a `width x height` window of a class; the pattern spans
/// `[0,width-1] x [0,height-1]`.
///
/// # Safety
/// `class_id` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wl_generate(class_id: *const c_char, width: usize, height: usize, seed: u64, out: *mut *mut WlPattern) -> WlStatus {
    guard(|| {
        if out.is_null() {
            return fail(WlStatus::NullPointer, "null output");
        }
        let id = match read_str(class_id) {
            Ok(s) => s,
            Err(st) => return st,
        };
        if width == 0 || height == 0 {
            return fail(WlStatus::InvalidArgument, "empty window");
        }
        match generation::generate(id, width, height, seed) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(WlPattern { inner: p }));
                WlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `p` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wl_pattern_free(p: *mut WlPattern) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Width and height of the bounding rectangle.
///
/// # Safety
/// `p` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn wl_pattern_size(p: *const WlPattern, out_width: *mut usize, out_height: *mut usize) -> WlStatus {
    guard(|| {
        if p.is_null() || out_width.is_null() || out_height.is_null() {
            return fail(WlStatus::NullPointer, "null argument");
        }
        let (w, h) = (*p).inner.bounding_rect().map_or((0, 0), |r| (r.width, r.height));
        *out_width = w;
        *out_height = h;
        WlStatus::Ok
    })
}

/// The code of the tile at `(x, y)`, counted from the lower-left corner of
/// the bounding rectangle.
///
/// # Safety
/// `p` must be a live handle and `out_code` writable.
#[no_mangle]
pub unsafe extern "C" fn wl_pattern_tile_at(p: *const WlPattern, x: usize, y: usize, out_code: *mut u8) -> WlStatus {
    guard(|| {
        if p.is_null() || out_code.is_null() {
            return fail(WlStatus::NullPointer, "null argument");
        }
        let inner = &(*p).inner;
        let Some(r) = inner.bounding_rect() else { return fail(WlStatus::OutOfBounds, "empty pattern") };
        let cell = i32::try_from(x).ok().zip(i32::try_from(y).ok()).map(|(x, y)| Cell::new(r.x0 + x, r.y0 + y));
        match cell.and_then(|c| inner.get(c)) {
            Some(t) => {
                *out_code = t.code();
                WlStatus::Ok
            }
            None => fail(WlStatus::OutOfBounds, format!("no tile at ({x}, {y})")),
        }
    })
}

/// Whether all adjacent tiles agree on shared edges.
///
/// # Safety
/// `p` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wl_pattern_is_valid(p: *const WlPattern) -> bool {
    !p.is_null() && (*p).inner.is_locally_valid()
}

/// The pattern as JSON; free with [`wl_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wl_pattern_to_json(p: *const WlPattern, out: *mut *mut c_char) -> WlStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return fail(WlStatus::NullPointer, "null argument");
        }
        match serde_json::to_string(&(*p).inner) {
            Ok(s) => {
                *out = new_string(s);
                WlStatus::Ok
            }
            Err(e) => fail(WlStatus::Internal, e.to_string()),
        }
    })
}

/// Renders the pattern as an SVG document; free with [`wl_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wl_pattern_to_svg(p: *const WlPattern, cell_size: u32, draw_grid: bool, out: *mut *mut c_char) -> WlStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return fail(WlStatus::NullPointer, "null argument");
        }
        if cell_size == 0 {
            return fail(WlStatus::InvalidArgument, "cell size must be positive");
        }
        let style = RenderStyle { cell_size, draw_grid, ..RenderStyle::default() };
        *out = new_string(render_svg(&(*p).inner, &style));
        WlStatus::Ok
    })
}
