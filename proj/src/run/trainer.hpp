#pragma once

#include <map>
#include <string>
#include <vector>

#include "data/dataset.hpp"
#include "metrics/metrics.hpp"
#include "model/pipeline.hpp"
#include "run/runconfig.hpp"

namespace cdds::run {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Normalized-expression cache shared by training and inference.
struct CellCache {
    data::NormStats stats;
    std::map<std::string, std::vector<double>> norm;

    const std::vector<double>& get(const data::Dataset& ds, const std::string& cell_id);
};

struct EvalOutput {
    std::vector<double> scores;
    std::vector<int> labels;       // classification
    std::vector<double> targets;   // regression
    metrics::EvalReport report;
};

struct TrainArtifacts {
    std::string best_checkpoint;
    std::string last_checkpoint;
    metrics::EvalReport best_val;
    int best_epoch = -1;
};

// Trains one model on train_idx, validating on val_idx each epoch. Writes
// train_log.csv (per-step loss components) and metrics.csv (per-epoch
// train/validation metrics) plus best/last checkpoints into run_dir. The tag
// keys this run's RNG streams so concurrent cv folds stay independent.
TrainArtifacts train_model(const RunConfig& rc, const data::Dataset& ds,
                           const std::vector<size_t>& train_idx,
                           const std::vector<size_t>& val_idx, const std::string& run_dir,
                           const std::string& tag);

EvalOutput evaluate_model(model::Model<float>& m, const data::Dataset& ds, CellCache& cells,
                          const std::vector<size_t>& idx, const RunConfig& rc);

// Single-pair prediction used by cmd_predict/cmd_explain; graphs may be
// substitutes that are absent from the dataset.
double predict_pair(model::Model<float>& m, const model::DrugGraph& a, const model::DrugGraph& b,
                    const std::vector<double>& cell_norm, bool symmetrize);

}  // namespace cdds::run
