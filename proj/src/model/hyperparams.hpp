#pragma once

#include <stdexcept>
#include <string>

namespace cdds::model {

enum class Task { classification, regression };

enum class NoiseMode { zero, mean };  // eval-time replacement for the sampled mask noise

struct Hyperparams {
    int d = 64;                  // hidden width
    int gin_layers = 3;
    double temperature = 1.0;    // gumbel-sigmoid t
    int set2set_steps = 3;
    double dropout = 0.2;        // prediction head only
    int intervention_k = 1;      // permutations per batch
    int cell_embed = 128;
    int head_hidden1 = 512;
    int head_hidden2 = 128;
    int genes = 640;

    bool use_disentangle = true;
    bool loss_sufficiency = true;
    bool loss_independence = true;
    bool loss_intervention = true;
    bool symmetrize_pairs = false;
    NoiseMode eval_noise = NoiseMode::mean;

    void validate() const {
        if (temperature <= 0.0) throw std::invalid_argument("hyperparams: temperature must be > 0");
        if (gin_layers < 1) throw std::invalid_argument("hyperparams: gin_layers must be >= 1");
        if (intervention_k < 0) throw std::invalid_argument("hyperparams: intervention_k must be >= 0");
        if (d < 1 || set2set_steps < 1) throw std::invalid_argument("hyperparams: bad widths");
        if (dropout < 0.0 || dropout >= 1.0) throw std::invalid_argument("hyperparams: dropout range");
        if (!use_disentangle && (loss_independence || loss_intervention))
            throw std::invalid_argument(
                "hyperparams: independence/intervention losses require the disentangle module");
    }
};

inline Task task_from_string(const std::string& s) {
    if (s == "classification") return Task::classification;
    if (s == "regression") return Task::regression;
    throw std::invalid_argument("unknown task: " + s);
}

inline const char* task_name(Task t) {
    return t == Task::classification ? "classification" : "regression";
}

inline NoiseMode noise_mode_from_string(const std::string& s) {
    if (s == "zero") return NoiseMode::zero;
    if (s == "mean") return NoiseMode::mean;
    throw std::invalid_argument("unknown eval_noise mode: " + s);
}

}  // namespace cdds::model
