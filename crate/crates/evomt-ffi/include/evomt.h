/*
 * evomt C API: dictionary-based Sinhala-to-English translation with PPMI
 * word-sense disambiguation and evolutionary word-order correction.
 *
 * Conventions:
 *   - Strings cross the boundary as UTF-8, NUL-terminated.
 *   - Every fallible function returns an EvomtStatus; results come back
 *     through out-pointers that are written only on EVOMT_OK.
 *   - Strings allocated by the library are released with
 *     evomt_string_free, handles with their matching _free function.
 *   - evomt_last_error() returns a thread-local message describing the
 *     most recent failure on the calling thread.
 *
 * Kept in sync with the Rust surface in src/lib.rs; regenerate with:
 *   cbindgen --config cbindgen.toml --crate evomt-ffi --output include/evomt.h
 */

#ifndef EVOMT_H
#define EVOMT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum EvomtStatus {
  EVOMT_OK = 0,
  EVOMT_ERR_NULL_POINTER = 1,
  EVOMT_ERR_INVALID_UTF8 = 2,
  EVOMT_ERR_IO = 3,
  EVOMT_ERR_PARSE = 4,
  EVOMT_ERR_DOMAIN = 5,
  EVOMT_ERR_PANIC = 6,
} EvomtStatus;

/**
 * Opaque chunk grammar handle.
 */
typedef struct EvomtGrammar EvomtGrammar;

/**
 * Opaque dictionary handle.
 */
typedef struct EvomtLexicon EvomtLexicon;

/**
 * Opaque co-occurrence model handle.
 */
typedef struct EvomtModel EvomtModel;

/**
 * Opaque tag lexicon handle.
 */
typedef struct EvomtTagLexicon EvomtTagLexicon;

/**
 * Opaque translator bundling resources and configuration.
 */
typedef struct EvomtTranslator EvomtTranslator;

/**
 * Evolution parameters for a translator handle.
 */
typedef struct EvomtEaConfig {
  uint64_t seed;
  uint32_t children_per_generation;
  uint32_t max_generations;
  bool anchor_trailing_sign;
} EvomtEaConfig;

#ifdef __cplusplus
extern "C" {
#endif  // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *evomt_last_error(void);

/**
 * Library version as a static string; do not free.
 */
const char *evomt_version(void);

/**
 * Default evolution parameters.
 */
struct EvomtEaConfig evomt_ea_config_default(void);

/**
 * Loads a bilingual dictionary from a TSV file.
 */
enum EvomtStatus evomt_lexicon_load(const char *path, struct EvomtLexicon **out);

void evomt_lexicon_free(struct EvomtLexicon *handle);

/**
 * Number of distinct source words in the dictionary.
 */
enum EvomtStatus evomt_lexicon_entry_count(const struct EvomtLexicon *lexicon, size_t *out);

/**
 * Loads a model file produced by evomt_model_save or the CLI.
 */
enum EvomtStatus evomt_model_load(const char *path, struct EvomtModel **out);

/**
 * Builds a model from a corpus file (UTF-8 text, sentences per line).
 */
enum EvomtStatus evomt_model_build(const char *path, struct EvomtModel **out);

/**
 * An empty model: no statistics, first-sense translation.
 */
enum EvomtStatus evomt_model_empty(struct EvomtModel **out);

/**
 * Saves the model to a deterministic, checksummed file.
 */
enum EvomtStatus evomt_model_save(const struct EvomtModel *model, const char *path);

void evomt_model_free(struct EvomtModel *handle);

/**
 * Pointwise mutual information between two stored words, in bits.
 */
enum EvomtStatus evomt_model_pmi(const struct EvomtModel *model,
                                 const char *x,
                                 const char *y,
                                 double *out);

/**
 * Positive PMI: negative and zero-pair associations score zero.
 */
enum EvomtStatus evomt_model_ppmi(const struct EvomtModel *model,
                                  const char *x,
                                  const char *y,
                                  double *out);

/**
 * Loads a tag lexicon file.
 */
enum EvomtStatus evomt_taglex_load(const char *path, struct EvomtTagLexicon **out);

/**
 * An empty tag lexicon: suffix rules and defaults only.
 */
enum EvomtStatus evomt_taglex_empty(struct EvomtTagLexicon **out);

void evomt_taglex_free(struct EvomtTagLexicon *handle);

/**
 * Parses a grammar file.
 */
enum EvomtStatus evomt_grammar_load(const char *path, struct EvomtGrammar **out);

/**
 * The built-in default grammar.
 */
enum EvomtStatus evomt_grammar_default(struct EvomtGrammar **out);

void evomt_grammar_free(struct EvomtGrammar *handle);

/**
 * Bundles resources and configuration into a translator. The resource
 * handles are copied; the caller still owns and frees them.
 */
enum EvomtStatus evomt_translator_new(const struct EvomtLexicon *lexicon,
                                      const struct EvomtModel *model,
                                      const struct EvomtTagLexicon *taglex,
                                      const struct EvomtGrammar *grammar,
                                      struct EvomtEaConfig config,
                                      struct EvomtTranslator **out);

void evomt_translator_free(struct EvomtTranslator *handle);

/**
 * Translates UTF-8 text. Each input sentence becomes one output line;
 * the result is a newly allocated NUL-terminated string released with
 * evomt_string_free.
 */
enum EvomtStatus evomt_translate(const struct EvomtTranslator *translator,
                                 const char *text,
                                 char **out);

/**
 * Edit distance between two whitespace-separated symbol sequences
 * (tags in template mode, words in reference mode). Zero exactly when
 * the sequences are equal.
 */
enum EvomtStatus evomt_fitness(const char *candidate, const char *target, size_t *out);

/**
 * Releases a string allocated by this library.
 */
void evomt_string_free(char *ptr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  // EVOMT_H
