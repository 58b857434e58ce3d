#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "data/dataset.hpp"

namespace cdds::data {

enum class Protocol { warm, unseen_pair, unseen_cell, unseen_drug, scaffold, external_group };

Protocol protocol_from_string(const std::string& s);
const char* protocol_name(Protocol p);

struct FoldSplit {
    std::vector<size_t> train, test;
    size_t dropped = 0;  // samples mixing fold-assigned keys across the boundary
};

struct FoldPlan {
    Protocol protocol = Protocol::warm;
    int k = 5;
    uint64_t seed = 0;
    std::vector<int> assignment;                // sample index -> fold id (a partition)
    std::vector<std::string> key_a, key_b;      // per-sample protocol keys (key_b for two-key protocols)
    std::map<std::string, int> key_fold;        // protocol key -> fold

    bool two_key() const { return protocol == Protocol::unseen_drug || protocol == Protocol::scaffold; }

    // Materializes train/test for one fold. Two-key protocols include a sample
    // in the test fold only when both keys land there; samples with exactly one
    // key in the test fold are dropped (and counted), the rest train.
    FoldSplit split(int fold) const;

    void save_csv(const std::string& path) const;
    static std::vector<int> load_csv(const std::string& path, size_t n_samples);
};

// Key derivation per protocol:
//   warm           sample index
//   unseen_pair    unordered drug pair
//   unseen_cell    cell id
//   unseen_drug    each drug id (two keys)
//   scaffold       each drug's scaffold key (two keys)
//   external_group per-sample group label (requires labels on all samples)
// Keys are shuffled with the seed and dealt round-robin onto folds. Throws
// InsufficientGroups when distinct keys < k.
FoldPlan make_folds(const Dataset& ds, Protocol protocol, int k, uint64_t seed);

// Index batches for one epoch. Training batches reshuffle per (seed, epoch);
// eval order is fixed. The final partial batch is retained.
std::vector<std::vector<size_t>> make_batches(const std::vector<size_t>& indices, int batch_size,
                                              uint64_t seed, int epoch, bool shuffle);

}  // namespace cdds::data
