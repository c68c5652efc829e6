//! Exercises the C ABI exactly as a foreign caller would: NUL-terminated
//! strings in, status codes and out-pointers back.

use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::ptr;

use evomt_ffi::*;

fn fixture(name: &str) -> CString {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../evomt/fixtures")
        .join(name);
    CString::new(path.to_str().unwrap()).unwrap()
}

fn c_path(path: &std::path::Path) -> CString {
    CString::new(path.to_str().unwrap()).unwrap()
}

fn last_error() -> String {
    let ptr = evomt_last_error();
    assert!(!ptr.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string()
}

#[test]
fn lexicon_loads_and_counts() {
    unsafe {
        let mut lexicon: *mut EvomtLexicon = ptr::null_mut();
        let status = evomt_lexicon_load(fixture("lexicon.tsv").as_ptr(), &mut lexicon);
        assert_eq!(status, EvomtStatus::EvomtOk);
        assert!(!lexicon.is_null());

        let mut count = 0usize;
        assert_eq!(
            evomt_lexicon_entry_count(lexicon, &mut count),
            EvomtStatus::EvomtOk
        );
        assert!(count >= 10, "fixture lexicon should have entries");
        evomt_lexicon_free(lexicon);
    }
}

#[test]
fn missing_file_reports_io_error() {
    unsafe {
        let mut lexicon: *mut EvomtLexicon = ptr::null_mut();
        let path = CString::new("/nonexistent/lexicon.tsv").unwrap();
        let status = evomt_lexicon_load(path.as_ptr(), &mut lexicon);
        assert_eq!(status, EvomtStatus::EvomtErrIo);
        assert!(lexicon.is_null());
        assert!(!last_error().is_empty());
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut lexicon: *mut EvomtLexicon = ptr::null_mut();
        assert_eq!(
            evomt_lexicon_load(ptr::null(), &mut lexicon),
            EvomtStatus::EvomtErrNullPointer
        );
        assert_eq!(
            evomt_lexicon_load(fixture("lexicon.tsv").as_ptr(), ptr::null_mut()),
            EvomtStatus::EvomtErrNullPointer
        );
        let mut out = 0.0f64;
        assert_eq!(
            evomt_model_pmi(ptr::null(), ptr::null(), ptr::null(), &mut out),
            EvomtStatus::EvomtErrNullPointer
        );
        // Free functions accept NULL.
        evomt_lexicon_free(ptr::null_mut());
        evomt_model_free(ptr::null_mut());
        evomt_string_free(ptr::null_mut());
    }
}

#[test]
fn model_builds_scores_and_saves() {
    unsafe {
        let dir = tempfile::tempdir().unwrap();
        let mut model: *mut EvomtModel = ptr::null_mut();
        let corpus = fixture("corpus_small.txt");
        assert_eq!(
            evomt_model_build(corpus.as_ptr(), &mut model),
            EvomtStatus::EvomtOk
        );

        let x = CString::new("a").unwrap();
        let y = CString::new("b").unwrap();
        let mut pmi = 0.0f64;
        assert_eq!(
            evomt_model_pmi(model, x.as_ptr(), y.as_ptr(), &mut pmi),
            EvomtStatus::EvomtOk
        );
        assert!((pmi - 2.0).abs() < 1e-9);

        let mut ppmi = -1.0f64;
        let z = CString::new("c").unwrap();
        assert_eq!(
            evomt_model_ppmi(model, y.as_ptr(), z.as_ptr(), &mut ppmi),
            EvomtStatus::EvomtOk
        );
        assert_eq!(ppmi, 0.0, "zero-pair ppmi clips to 0");

        let unknown = CString::new("zzz").unwrap();
        assert_eq!(
            evomt_model_pmi(model, x.as_ptr(), unknown.as_ptr(), &mut pmi),
            EvomtStatus::EvomtErrDomain
        );

        let saved = dir.path().join("model.ppmi");
        assert_eq!(
            evomt_model_save(model, c_path(&saved).as_ptr()),
            EvomtStatus::EvomtOk
        );

        let mut reloaded: *mut EvomtModel = ptr::null_mut();
        assert_eq!(
            evomt_model_load(c_path(&saved).as_ptr(), &mut reloaded),
            EvomtStatus::EvomtOk
        );
        let mut again = 0.0f64;
        assert_eq!(
            evomt_model_pmi(reloaded, x.as_ptr(), y.as_ptr(), &mut again),
            EvomtStatus::EvomtOk
        );
        assert_eq!(again.to_bits(), pmi.to_bits(), "reload changed the score");

        evomt_model_free(model);
        evomt_model_free(reloaded);
    }
}

#[test]
fn truncated_model_file_is_a_parse_error() {
    unsafe {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("broken.ppmi");
        std::fs::write(&path, "ppmi-model v1\ntokens 6\n").unwrap();
        let mut model: *mut EvomtModel = ptr::null_mut();
        assert_eq!(
            evomt_model_load(c_path(&path).as_ptr(), &mut model),
            EvomtStatus::EvomtErrParse
        );
    }
}

#[test]
fn empty_corpus_is_a_domain_error() {
    unsafe {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("blank.txt");
        std::fs::write(&path, "  \n\t\n").unwrap();
        let mut model: *mut EvomtModel = ptr::null_mut();
        assert_eq!(
            evomt_model_build(c_path(&path).as_ptr(), &mut model),
            EvomtStatus::EvomtErrDomain
        );
        assert!(last_error().contains("word"));
    }
}

#[test]
fn translator_translates_the_fixture_sentence() {
    unsafe {
        let mut lexicon: *mut EvomtLexicon = ptr::null_mut();
        assert_eq!(
            evomt_lexicon_load(fixture("lexicon.tsv").as_ptr(), &mut lexicon),
            EvomtStatus::EvomtOk
        );
        let mut model: *mut EvomtModel = ptr::null_mut();
        assert_eq!(
            evomt_model_build(fixture("corpus_wsd.txt").as_ptr(), &mut model),
            EvomtStatus::EvomtOk
        );
        let mut taglex: *mut EvomtTagLexicon = ptr::null_mut();
        assert_eq!(
            evomt_taglex_load(fixture("taglex.tsv").as_ptr(), &mut taglex),
            EvomtStatus::EvomtOk
        );
        let mut grammar: *mut EvomtGrammar = ptr::null_mut();
        assert_eq!(evomt_grammar_default(&mut grammar), EvomtStatus::EvomtOk);

        let mut config = evomt_ea_config_default();
        assert_eq!(config.children_per_generation, 100);
        assert_eq!(config.max_generations, 1000);
        config.seed = 1;

        let mut translator: *mut EvomtTranslator = ptr::null_mut();
        assert_eq!(
            evomt_translator_new(lexicon, model, taglex, grammar, config, &mut translator),
            EvomtStatus::EvomtOk
        );

        // Resource handles may be freed once the translator exists.
        evomt_lexicon_free(lexicon);
        evomt_model_free(model);
        evomt_taglex_free(taglex);
        evomt_grammar_free(grammar);

        let text = CString::new("mama gedara yami. oya ivura.").unwrap();
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            evomt_translate(translator, text.as_ptr(), &mut out),
            EvomtStatus::EvomtOk
        );
        let translated = CStr::from_ptr(out).to_str().unwrap().to_string();
        assert_eq!(translated, "I go home .\nriver shore .");
        evomt_string_free(out);

        // Determinism through the C surface.
        let mut second: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            evomt_translate(translator, text.as_ptr(), &mut second),
            EvomtStatus::EvomtOk
        );
        assert_eq!(CStr::from_ptr(second).to_str().unwrap(), translated);
        evomt_string_free(second);

        evomt_translator_free(translator);
    }
}

#[test]
fn translator_rejects_zero_children() {
    unsafe {
        let mut lexicon: *mut EvomtLexicon = ptr::null_mut();
        assert_eq!(
            evomt_lexicon_load(fixture("lexicon.tsv").as_ptr(), &mut lexicon),
            EvomtStatus::EvomtOk
        );
        let mut model: *mut EvomtModel = ptr::null_mut();
        assert_eq!(evomt_model_empty(&mut model), EvomtStatus::EvomtOk);
        let mut taglex: *mut EvomtTagLexicon = ptr::null_mut();
        assert_eq!(evomt_taglex_empty(&mut taglex), EvomtStatus::EvomtOk);
        let mut grammar: *mut EvomtGrammar = ptr::null_mut();
        assert_eq!(evomt_grammar_default(&mut grammar), EvomtStatus::EvomtOk);

        let mut config = evomt_ea_config_default();
        config.children_per_generation = 0;
        let mut translator: *mut EvomtTranslator = ptr::null_mut();
        assert_eq!(
            evomt_translator_new(lexicon, model, taglex, grammar, config, &mut translator),
            EvomtStatus::EvomtErrDomain
        );
        assert!(translator.is_null());

        evomt_lexicon_free(lexicon);
        evomt_model_free(model);
        evomt_taglex_free(taglex);
        evomt_grammar_free(grammar);
    }
}

#[test]
fn grammar_parse_error_reports_position() {
    unsafe {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.cg");
        std::fs::write(&path, "NP {<NN>}").unwrap();
        let mut grammar: *mut EvomtGrammar = ptr::null_mut();
        assert_eq!(
            evomt_grammar_load(c_path(&path).as_ptr(), &mut grammar),
            EvomtStatus::EvomtErrParse
        );
        let message = last_error();
        assert!(message.contains("line 1"), "missing position: {message}");
    }
}

#[test]
fn version_is_a_static_string() {
    let version = unsafe { CStr::from_ptr(evomt_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn fitness_compares_symbol_sequences() {
    unsafe {
        let distance = |a: &str, b: &str| -> usize {
            let a = CString::new(a).unwrap();
            let b = CString::new(b).unwrap();
            let mut out = usize::MAX;
            assert_eq!(
                evomt_fitness(a.as_ptr(), b.as_ptr(), &mut out),
                EvomtStatus::EvomtOk
            );
            out
        };
        assert_eq!(distance("PRP NN VB", "PRP VB NN"), 2);
        assert_eq!(distance("PRP NN VB", "PRP NN VB"), 0);
        assert_eq!(distance("", "NN VB"), 2);
        // Reference mode over words.
        assert_eq!(distance("i home go", "i go home"), 2);
    }
}
