#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "data/dataset.hpp"
#include "nn/params.hpp"

namespace cdds::io {

// Binary checkpoint: magic "CDDS", format version u32, config record (u32
// length + canonical UTF-8 config text), u32 tensor count, then per tensor:
// u32 name length + name + u32 rank + u64 extents + little-endian f32 values
// row-major. Gene normalization statistics ride along as two pseudo-tensors
// named "stats.*"; the loader routes them into NormStats.
inline constexpr uint32_t kCheckpointVersion = 1;

struct TensorInfo {
    std::string name;
    std::vector<uint64_t> extents;
};

struct CheckpointInfo {
    uint32_t version = 0;
    std::string config_text;
    uint64_t config_hash = 0;
    std::vector<TensorInfo> tensors;
};

void save_checkpoint(const std::string& path, const nn::ParameterStore<float>& store,
                     const data::NormStats& stats, const std::string& config_text);

// Loads into a store already built from the configuration, so every tensor
// must match by name and shape; a mismatch error names the parameter.
// A config-hash mismatch throws unless force is true (then it only warns via
// the returned flag).
struct LoadResult {
    data::NormStats stats;
    bool config_hash_mismatch = false;
};
LoadResult load_checkpoint(const std::string& path, nn::ParameterStore<float>& store,
                           const std::string& expected_config_text, bool force = false);

CheckpointInfo inspect_checkpoint(const std::string& path);

}  // namespace cdds::io
