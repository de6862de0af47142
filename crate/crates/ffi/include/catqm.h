#ifndef CATQM_H
#define CATQM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Values 1 through 5 match the command-line exit codes.
typedef enum CatqmStatus {
  CATQM_STATUS_OK = 0,
  CATQM_STATUS_USAGE = 1,
  CATQM_STATUS_PARSE = 2,
  CATQM_STATUS_TYPE = 3,
  CATQM_STATUS_MODEL = 4,
  CATQM_STATUS_UNEQUAL = 5,
  CATQM_STATUS_NULL_ARGUMENT = 6,
  CATQM_STATUS_INVALID_UTF8 = 7,
  CATQM_STATUS_PANIC = 8,
} CatqmStatus;

// A parsed term document.
typedef struct CatqmDocument CatqmDocument;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parse a document from NUL-terminated UTF-8 source.
//
// # Safety
// `source` must be a valid C string and `out` a valid pointer.
enum CatqmStatus catqm_document_parse(const char *source, struct CatqmDocument **out);

// Release a document. Null is ignored.
//
// # Safety
// `doc` must come from [`catqm_document_parse`] and not be used afterwards.
void catqm_document_free(struct CatqmDocument *doc);

// Typecheck the entry term; `out` receives the judgment `A → B`.
//
// # Safety
// `doc` must be a live handle and `out` a valid pointer.
enum CatqmStatus catqm_document_check(const struct CatqmDocument *doc, char **out);

// Evaluate the entry term; `out` receives the matrix as JSON. A null
// `model_name` means `fdhilb-exact`.
//
// # Safety
// `doc` must be a live handle, `model_name` null or a C string, `out` valid.
enum CatqmStatus catqm_document_eval_json(const struct CatqmDocument *doc,
                                          const char *model_name,
                                          char **out);

// Normal form of the entry term, printed as an s-expression.
//
// # Safety
// `doc` must be a live handle and `out` a valid pointer.
enum CatqmStatus catqm_document_normalize(const struct CatqmDocument *doc, char **out);

// Graphviz rendering of the entry term.
//
// # Safety
// `doc` must be a live handle and `out` a valid pointer.
enum CatqmStatus catqm_document_export_dot(const struct CatqmDocument *doc, char **out);

// Compare the entry terms of two documents. `equal` receives the verdict
// and `report`, if not null, the JSON report. Unequal terms still return
// `Ok`.
//
// # Safety
// Both handles must be live; `model_name` null or a C string; `equal` valid;
// `report` null or valid.
enum CatqmStatus catqm_terms_equal(const struct CatqmDocument *a,
                                   const struct CatqmDocument *b,
                                   const char *model_name,
                                   bool *equal,
                                   char **report);

// Run a verification suite without timing; `out` receives one JSON
// report per line. Returns `Unequal` if any case fails, with the reports
// still written.
//
// # Safety
// `suite` must be a C string, `model_name` null or a C string, `out` valid.
enum CatqmStatus catqm_verify(const char *suite, const char *model_name, char **out);

// Message for the last failure on this thread, or null. Valid until the
// next call into this library on the same thread.
const char *catqm_last_error_message(void);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void catqm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CATQM_H */
