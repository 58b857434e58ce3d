#pragma once

#include <cstdint>
#include <string>

#include "data/folds.hpp"
#include "model/hyperparams.hpp"
#include "util/config.hpp"

namespace cdds::run {

struct RunConfig {
    std::string drugs_csv, cells_csv, samples_csv, genes_path;
    model::Task task = model::Task::classification;
    data::Protocol protocol = data::Protocol::warm;
    int k = 5;
    uint64_t seed = 0;

    model::Hyperparams hp;

    int epochs = 30;
    int batch_size = 128;
    double lr = 1e-3;
    double beta1 = 0.9, beta2 = 0.999, eps_opt = 1e-8;

    double explain_threshold = 0.7;  // reporting cutoff for "causal" atoms
    double metric_threshold = 0.5;   // decision threshold for kappa/F1

    cfg::Config raw;  // canonical copy written into every run directory

    static RunConfig from_config(const cfg::Config& c);
    std::string canonical_text() const { return raw.canonical_text(); }
};

}  // namespace cdds::run
