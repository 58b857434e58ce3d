/* CausalDDS C API: drug-synergy prediction with causal substructure
 * disentanglement. All functionality sits behind this header; the C++ core is
 * not exported. Functions return cdds_status; on failure cdds_last_error()
 * holds a thread-local message. Out-pointers hand ownership to the caller
 * (release handles with the matching _free, strings with cdds_string_free).
 */
#ifndef CDDS_H
#define CDDS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cdds_status {
    CDDS_OK = 0,
    CDDS_ERR_USAGE = 1,   /* bad arguments, malformed or inconsistent config */
    CDDS_ERR_DATA = 2,    /* unresolved ids, parse failures, unreadable files */
    CDDS_ERR_NUMERIC = 3, /* non-finite loss or other numerical failure */
    CDDS_ERR_INTERNAL = 4
} cdds_status;

const char* cdds_version(void);

/* Message describing the most recent failure on this thread. */
const char* cdds_last_error(void);

void cdds_string_free(char* s);

/* ---- configuration ----------------------------------------------------- */

typedef struct cdds_config cdds_config;

cdds_status cdds_config_load(const char* path, cdds_config** out);
cdds_status cdds_config_create(cdds_config** out);
/* key is "section.name", e.g. "train.epochs" */
cdds_status cdds_config_set(cdds_config* c, const char* key, const char* value);
cdds_status cdds_config_get(const cdds_config* c, const char* key, char** out_value);
cdds_status cdds_config_save(const cdds_config* c, const char* path);
void cdds_config_free(cdds_config* c);

/* ---- commands ----------------------------------------------------------- */

/* Trains one model; out_dir receives config copy, logs, fold plan and
 * best/last checkpoints. */
cdds_status cdds_train(const cdds_config* c, const char* out_dir);

/* k-fold cross-validated training/evaluation; writes out_dir/cv_report.csv.
 * out_report (optional) receives the report text. */
cdds_status cdds_evaluate_cv(const cdds_config* c, const char* out_dir, char** out_report);

/* Evaluates a checkpoint on a protocol fold (external_test_csv NULL) or on an
 * external samples file. out_csv may be NULL to skip writing. */
cdds_status cdds_evaluate_checkpoint(const cdds_config* c, const char* checkpoint, int fold,
                                     const char* external_test_csv, const char* out_csv,
                                     int force, char** out_report);

/* Batch prediction with optional substitutions file (NULL for none). */
cdds_status cdds_predict(const cdds_config* c, const char* checkpoint, const char* pairs_csv,
                         const char* subs_csv, const char* out_csv, int force);

/* Atom-importance export (CSV + DOT + SVG per pair). */
cdds_status cdds_explain(const cdds_config* c, const char* checkpoint, const char* pairs_csv,
                         const char* out_dir, int force);

cdds_status cdds_make_folds(const cdds_config* c, const char* out_csv);

cdds_status cdds_parse_corpus(const char* smi_path, const char* out_csv);

/* Planted-motif synthetic benchmark; writes dataset files plus a ready
 * config.cfg into out_dir. out_config_path (optional) receives its path. */
cdds_status cdds_gen_synthetic(const char* out_dir, uint64_t seed, int n_pairs,
                               const char* genes_path, char** out_config_path);

/* ---- checkpoints --------------------------------------------------------- */

typedef struct cdds_checkpoint cdds_checkpoint;

cdds_status cdds_checkpoint_open(const char* path, cdds_checkpoint** out);
uint32_t cdds_checkpoint_format_version(const cdds_checkpoint* ck);
uint64_t cdds_checkpoint_config_hash(const cdds_checkpoint* ck);
size_t cdds_checkpoint_tensor_count(const cdds_checkpoint* ck);
/* Returns the tensor name, or NULL when index is out of range. rows/cols are
 * optional out-parameters. */
const char* cdds_checkpoint_tensor(const cdds_checkpoint* ck, size_t index, uint64_t* rows,
                                   uint64_t* cols);
void cdds_checkpoint_free(cdds_checkpoint* ck);

/* Human-readable summary (version, config hash, tensor shapes). */
cdds_status cdds_inspect_checkpoint(const char* path, char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* CDDS_H */
