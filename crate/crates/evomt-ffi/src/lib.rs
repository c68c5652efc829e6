//! C ABI for the translation toolkit.
//!
//! Resources load into opaque handles; every function returns an
//! [`EvomtStatus`] code and writes results through out-pointers. Strings
//! cross the boundary as UTF-8, NUL-terminated; strings the library
//! allocates must be released with [`evomt_string_free`], handles with
//! their matching `_free` function. [`evomt_last_error`] returns a
//! thread-local message for the most recent failure on that thread.
//!
//! The matching header lives in `include/evomt.h` and can be regenerated
//! with cbindgen (see `cbindgen.toml`).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use evomt::{
    BilingualLexicon, ChunkGrammar, CooccurrenceModel, EaConfig, PmiError, TagLexicon,
};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvomtStatus {
    EvomtOk = 0,
    EvomtErrNullPointer = 1,
    EvomtErrInvalidUtf8 = 2,
    EvomtErrIo = 3,
    EvomtErrParse = 4,
    EvomtErrDomain = 5,
    EvomtErrPanic = 6,
}

/// Evolution parameters for a translator handle.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct EvomtEaConfig {
    pub seed: u64,
    pub children_per_generation: u32,
    pub max_generations: u32,
    pub anchor_trailing_sign: bool,
}

/// Opaque dictionary handle.
pub struct EvomtLexicon(BilingualLexicon);
/// Opaque co-occurrence model handle.
pub struct EvomtModel(CooccurrenceModel);
/// Opaque tag lexicon handle.
pub struct EvomtTagLexicon(TagLexicon);
/// Opaque chunk grammar handle.
pub struct EvomtGrammar(ChunkGrammar);

/// Opaque translator bundling resources and configuration.
pub struct EvomtTranslator {
    lexicon: BilingualLexicon,
    model: CooccurrenceModel,
    taglex: TagLexicon,
    grammar: ChunkGrammar,
    config: EaConfig,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let message = message.into();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(message).ok();
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

/// Message for the most recent failure on this thread, or NULL. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn evomt_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn evomt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Default evolution parameters.
#[no_mangle]
pub extern "C" fn evomt_ea_config_default() -> EvomtEaConfig {
    let config = EaConfig::default();
    EvomtEaConfig {
        seed: config.seed,
        children_per_generation: config.children_per_generation as u32,
        max_generations: config.max_generations as u32,
        anchor_trailing_sign: config.anchor_trailing_sign,
    }
}

fn guard(body: impl FnOnce() -> EvomtStatus) -> EvomtStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            EvomtStatus::EvomtErrPanic
        }
    }
}

/// # Safety
/// `ptr` must be NULL or a valid NUL-terminated string.
unsafe fn path_arg(ptr: *const c_char) -> Result<PathBuf, EvomtStatus> {
    let s = str_arg(ptr)?;
    Ok(PathBuf::from(s))
}

/// # Safety
/// `ptr` must be NULL or a valid NUL-terminated string.
unsafe fn str_arg<'a>(ptr: *const c_char) -> Result<&'a str, EvomtStatus> {
    if ptr.is_null() {
        set_error("null pointer argument");
        return Err(EvomtStatus::EvomtErrNullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        EvomtStatus::EvomtErrInvalidUtf8
    })
}

fn give<T>(out: *mut *mut T, value: T) -> EvomtStatus {
    if out.is_null() {
        set_error("null out-pointer");
        return EvomtStatus::EvomtErrNullPointer;
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    clear_error();
    EvomtStatus::EvomtOk
}

unsafe fn borrow<'a, T>(ptr: *const T) -> Result<&'a T, EvomtStatus> {
    if ptr.is_null() {
        set_error("null handle");
        return Err(EvomtStatus::EvomtErrNullPointer);
    }
    Ok(&*ptr)
}

macro_rules! try_ffi {
    ($expr:expr) => {
        match $expr {
            Ok(value) => value,
            Err(status) => return status,
        }
    };
}

/// Loads a bilingual dictionary from a TSV file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn evomt_lexicon_load(
    path: *const c_char,
    out: *mut *mut EvomtLexicon,
) -> EvomtStatus {
    guard(|| {
        let path = try_ffi!(path_arg(path));
        match BilingualLexicon::load(&path) {
            Ok(lexicon) => give(out, EvomtLexicon(lexicon)),
            Err(e) => {
                set_error(e.to_string());
                match e {
                    evomt::LexiconError::IoFailure(_) => EvomtStatus::EvomtErrIo,
                    evomt::LexiconError::MalformedRow { .. } => EvomtStatus::EvomtErrParse,
                }
            }
        }
    })
}

/// # Safety
/// `handle` must be NULL or a pointer from `evomt_lexicon_load`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn evomt_lexicon_free(handle: *mut EvomtLexicon) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of distinct source words in the dictionary.
///
/// # Safety
/// `lexicon` must be a valid handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evomt_lexicon_entry_count(
    lexicon: *const EvomtLexicon,
    out: *mut usize,
) -> EvomtStatus {
    guard(|| {
        let lexicon = try_ffi!(borrow(lexicon));
        if out.is_null() {
            set_error("null out-pointer");
            return EvomtStatus::EvomtErrNullPointer;
        }
        *out = lexicon.0.entry_count();
        clear_error();
        EvomtStatus::EvomtOk
    })
}

/// Loads a model file produced by `evomt_model_save` or the CLI.
///
/// # Safety
/// `path` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evomt_model_load(
    path: *const c_char,
    out: *mut *mut EvomtModel,
) -> EvomtStatus {
    guard(|| {
        let path = try_ffi!(path_arg(path));
        match CooccurrenceModel::load(&path) {
            Ok(model) => give(out, EvomtModel(model)),
            Err(e) => {
                set_error(e.to_string());
                match e {
                    evomt::ModelFileError::IoFailure(_) => EvomtStatus::EvomtErrIo,
                    _ => EvomtStatus::EvomtErrParse,
                }
            }
        }
    })
}

/// Builds a model from a corpus file (UTF-8 text, sentences per line).
///
/// # Safety
/// `path` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evomt_model_build(
    path: *const c_char,
    out: *mut *mut EvomtModel,
) -> EvomtStatus {
    guard(|| {
        let path = try_ffi!(path_arg(path));
        let text = match std::fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) => {
                set_error(format!("cannot read {}: {e}", path.display()));
                return EvomtStatus::EvomtErrIo;
            }
        };
        let lines: Vec<&str> = text.lines().collect();
        match CooccurrenceModel::build(&lines) {
            Ok(model) => give(out, EvomtModel(model)),
            Err(e) => {
                set_error(e.to_string());
                EvomtStatus::EvomtErrDomain
            }
        }
    })
}

/// An empty model: no statistics, first-sense translation.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evomt_model_empty(out: *mut *mut EvomtModel) -> EvomtStatus {
    guard(|| give(out, EvomtModel(CooccurrenceModel::empty())))
}

/// Saves the model to a deterministic, checksummed file.
///
/// # Safety
/// `model` must be a valid handle; `path` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn evomt_model_save(
    model: *const EvomtModel,
    path: *const c_char,
) -> EvomtStatus {
    guard(|| {
        let model = try_ffi!(borrow(model));
        let path = try_ffi!(path_arg(path));
        match model.0.save(&path) {
            Ok(()) => {
                clear_error();
                EvomtStatus::EvomtOk
            }
            Err(e) => {
                set_error(e.to_string());
                EvomtStatus::EvomtErrIo
            }
        }
    })
}

/// # Safety
/// `handle` must be NULL or an unfreed model handle.
#[no_mangle]
pub unsafe extern "C" fn evomt_model_free(handle: *mut EvomtModel) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

unsafe fn score(
    model: *const EvomtModel,
    x: *const c_char,
    y: *const c_char,
    out: *mut f64,
    f: impl Fn(&CooccurrenceModel, &str, &str) -> Result<f64, PmiError>,
) -> EvomtStatus {
    let model = match borrow(model) {
        Ok(m) => m,
        Err(status) => return status,
    };
    let x = match str_arg(x) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let y = match str_arg(y) {
        Ok(s) => s,
        Err(status) => return status,
    };
    if out.is_null() {
        set_error("null out-pointer");
        return EvomtStatus::EvomtErrNullPointer;
    }
    match f(&model.0, x, y) {
        Ok(value) => {
            *out = value;
            clear_error();
            EvomtStatus::EvomtOk
        }
        Err(e) => {
            set_error(e.to_string());
            EvomtStatus::EvomtErrDomain
        }
    }
}

/// Pointwise mutual information between two stored words, in bits.
///
/// # Safety
/// `model` must be a valid handle; `x`, `y` valid NUL-terminated strings;
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evomt_model_pmi(
    model: *const EvomtModel,
    x: *const c_char,
    y: *const c_char,
    out: *mut f64,
) -> EvomtStatus {
    guard(|| score(model, x, y, out, CooccurrenceModel::pmi))
}

/// Positive PMI: negative and zero-pair associations score zero.
///
/// # Safety
/// Same contract as [`evomt_model_pmi`].
#[no_mangle]
pub unsafe extern "C" fn evomt_model_ppmi(
    model: *const EvomtModel,
    x: *const c_char,
    y: *const c_char,
    out: *mut f64,
) -> EvomtStatus {
    guard(|| score(model, x, y, out, CooccurrenceModel::ppmi))
}

/// Loads a tag lexicon file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evomt_taglex_load(
    path: *const c_char,
    out: *mut *mut EvomtTagLexicon,
) -> EvomtStatus {
    guard(|| {
        let path = try_ffi!(path_arg(path));
        match TagLexicon::load(&path) {
            Ok(taglex) => give(out, EvomtTagLexicon(taglex)),
            Err(e) => {
                set_error(e.to_string());
                match e {
                    evomt::tagger::TagLexiconError::IoFailure(_) => EvomtStatus::EvomtErrIo,
                    _ => EvomtStatus::EvomtErrParse,
                }
            }
        }
    })
}

/// An empty tag lexicon: suffix rules and defaults only.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evomt_taglex_empty(out: *mut *mut EvomtTagLexicon) -> EvomtStatus {
    guard(|| give(out, EvomtTagLexicon(TagLexicon::new())))
}

/// # Safety
/// `handle` must be NULL or an unfreed tag lexicon handle.
#[no_mangle]
pub unsafe extern "C" fn evomt_taglex_free(handle: *mut EvomtTagLexicon) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Parses a grammar file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evomt_grammar_load(
    path: *const c_char,
    out: *mut *mut EvomtGrammar,
) -> EvomtStatus {
    guard(|| {
        let path = try_ffi!(path_arg(path));
        match ChunkGrammar::load(&path) {
            Ok(grammar) => give(out, EvomtGrammar(grammar)),
            Err(e) => {
                set_error(e.to_string());
                match e {
                    evomt::GrammarError::IoFailure(_) => EvomtStatus::EvomtErrIo,
                    _ => EvomtStatus::EvomtErrParse,
                }
            }
        }
    })
}

/// The built-in default grammar.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evomt_grammar_default(out: *mut *mut EvomtGrammar) -> EvomtStatus {
    guard(|| {
        let grammar = ChunkGrammar::parse(evomt::DEFAULT_GRAMMAR)
            .expect("built-in grammar parses");
        give(out, EvomtGrammar(grammar))
    })
}

/// # Safety
/// `handle` must be NULL or an unfreed grammar handle.
#[no_mangle]
pub unsafe extern "C" fn evomt_grammar_free(handle: *mut EvomtGrammar) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Bundles resources and configuration into a translator. The resource
/// handles are copied; the caller still owns and frees them.
///
/// # Safety
/// All handles must be valid; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evomt_translator_new(
    lexicon: *const EvomtLexicon,
    model: *const EvomtModel,
    taglex: *const EvomtTagLexicon,
    grammar: *const EvomtGrammar,
    config: EvomtEaConfig,
    out: *mut *mut EvomtTranslator,
) -> EvomtStatus {
    guard(|| {
        let lexicon = try_ffi!(borrow(lexicon));
        let model = try_ffi!(borrow(model));
        let taglex = try_ffi!(borrow(taglex));
        let grammar = try_ffi!(borrow(grammar));
        if config.children_per_generation == 0 || config.max_generations == 0 {
            set_error("children and generation cap must be positive");
            return EvomtStatus::EvomtErrDomain;
        }
        let translator = EvomtTranslator {
            lexicon: lexicon.0.clone(),
            model: model.0.clone(),
            taglex: taglex.0.clone(),
            grammar: grammar.0.clone(),
            config: EaConfig {
                seed: config.seed,
                children_per_generation: config.children_per_generation as usize,
                max_generations: config.max_generations as usize,
                anchor_trailing_sign: config.anchor_trailing_sign,
            },
        };
        give(out, translator)
    })
}

/// # Safety
/// `handle` must be NULL or an unfreed translator handle.
#[no_mangle]
pub unsafe extern "C" fn evomt_translator_free(handle: *mut EvomtTranslator) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Translates UTF-8 text. Each input sentence becomes one output line;
/// the result is a newly allocated NUL-terminated string released with
/// [`evomt_string_free`].
///
/// # Safety
/// `translator` must be a valid handle; `text` a valid NUL-terminated
/// string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evomt_translate(
    translator: *const EvomtTranslator,
    text: *const c_char,
    out: *mut *mut c_char,
) -> EvomtStatus {
    guard(|| {
        let translator = try_ffi!(borrow(translator));
        let text = try_ffi!(str_arg(text));
        if out.is_null() {
            set_error("null out-pointer");
            return EvomtStatus::EvomtErrNullPointer;
        }
        let results = evomt::translate_text(
            &translator.lexicon,
            &translator.model,
            &translator.taglex,
            &translator.grammar,
            &translator.config,
            text,
        );
        let lines: Vec<&str> = results.iter().map(|r| r.rendered.as_str()).collect();
        let joined = lines.join("\n");
        match CString::new(joined) {
            Ok(cstring) => {
                *out = cstring.into_raw();
                clear_error();
                EvomtStatus::EvomtOk
            }
            Err(_) => {
                set_error("translation contained an interior NUL byte");
                EvomtStatus::EvomtErrDomain
            }
        }
    })
}

/// Edit distance between two whitespace-separated symbol sequences
/// (tags in template mode, words in reference mode). Zero exactly when
/// the sequences are equal.
///
/// # Safety
/// `candidate` and `target` must be valid NUL-terminated strings; `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn evomt_fitness(
    candidate: *const c_char,
    target: *const c_char,
    out: *mut usize,
) -> EvomtStatus {
    guard(|| {
        let candidate = try_ffi!(str_arg(candidate));
        let target = try_ffi!(str_arg(target));
        if out.is_null() {
            set_error("null out-pointer");
            return EvomtStatus::EvomtErrNullPointer;
        }
        let candidate: Vec<&str> = candidate.split_whitespace().collect();
        let target: Vec<&str> = target.split_whitespace().collect();
        *out = evomt::fitness(&candidate, &target);
        clear_error();
        EvomtStatus::EvomtOk
    })
}

/// Releases a string allocated by this library.
///
/// # Safety
/// `ptr` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn evomt_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(CString::from_raw(ptr));
    }
}
