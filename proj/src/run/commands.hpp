#pragma once

#include <string>

#include "run/runconfig.hpp"
#include "run/trainer.hpp"

namespace cdds::run {

// Trains one model (validating on fold 0 of the configured protocol) and
// leaves a self-describing run directory: config copy, run_info.txt, fold
// plan, per-step loss log, per-epoch metrics, best/last checkpoints.
// Returns out_dir.
std::string cmd_train(const RunConfig& rc, const std::string& out_dir);

// Cross-validated evaluation: trains k models, one per fold, under
// out_dir/fold<i>/ and writes per-fold plus mean/std rows to
// out_dir/cv_report.csv. Returns the report text.
std::string cmd_evaluate_cv(const RunConfig& rc, const std::string& out_dir);

// Evaluates one checkpoint on a protocol fold (test side) or on an external
// samples file. Writes metric,value rows to out_csv and returns them.
std::string cmd_evaluate_checkpoint(const RunConfig& rc, const std::string& checkpoint, int fold,
                                    const std::string& external_test_csv,
                                    const std::string& out_csv, bool force = false);

// Batch prediction with optional drug substitution (the structural what-if
// workflow). Row schema:
// drug_a,drug_b,cell,raw_score,substituted_pair,substituted_score,delta
void cmd_predict(const RunConfig& rc, const std::string& checkpoint, const std::string& pairs_csv,
                 const std::string& subs_csv, const std::string& out_csv, bool force = false);

// Per-pair atom-importance CSV plus DOT/SVG renderings for both drugs.
void cmd_explain(const RunConfig& rc, const std::string& checkpoint, const std::string& pairs_csv,
                 const std::string& out_dir, bool force = false);

std::string cmd_inspect_checkpoint(const std::string& path);

void cmd_make_folds(const RunConfig& rc, const std::string& out_csv);

// Parses a one-SMILES-per-line corpus into a report CSV
// (smiles,status,n_atoms,n_bonds,scaffold_key).
void cmd_parse_corpus(const std::string& smi_path, const std::string& out_csv);

}  // namespace cdds::run
