#include "io/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "util/rng.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

namespace cdds::io {

namespace {

constexpr char kMagic[4] = {'C', 'D', 'D', 'S'};

void put_u32(std::ofstream& f, uint32_t v) { f.write(reinterpret_cast<const char*>(&v), 4); }
void put_u64(std::ofstream& f, uint64_t v) { f.write(reinterpret_cast<const char*>(&v), 8); }

uint32_t get_u32(std::ifstream& f) {
    uint32_t v = 0;
    f.read(reinterpret_cast<char*>(&v), 4);
    if (!f) throw std::runtime_error("TruncatedCheckpoint: unexpected end of file");
    return v;
}
uint64_t get_u64(std::ifstream& f) {
    uint64_t v = 0;
    f.read(reinterpret_cast<char*>(&v), 8);
    if (!f) throw std::runtime_error("TruncatedCheckpoint: unexpected end of file");
    return v;
}
std::string get_str(std::ifstream& f, uint32_t len) {
    std::string s(len, '\0');
    f.read(s.data(), std::streamsize(len));
    if (!f) throw std::runtime_error("TruncatedCheckpoint: unexpected end of file");
    return s;
}

void put_tensor(std::ofstream& f, const std::string& name, uint64_t rows, uint64_t cols,
                const float* data) {
    put_u32(f, uint32_t(name.size()));
    f.write(name.data(), std::streamsize(name.size()));
    put_u32(f, 2);
    put_u64(f, rows);
    put_u64(f, cols);
    f.write(reinterpret_cast<const char*>(data), std::streamsize(rows * cols * 4));
}

}  // namespace

void save_checkpoint(const std::string& path, const nn::ParameterStore<float>& store,
                     const data::NormStats& stats, const std::string& config_text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write checkpoint: " + path);
    f.write(kMagic, 4);
    put_u32(f, kCheckpointVersion);
    put_u32(f, uint32_t(config_text.size()));
    f.write(config_text.data(), std::streamsize(config_text.size()));

    uint32_t count = uint32_t(store.params().size()) + (stats.mean.empty() ? 0 : 2);
    put_u32(f, count);
    for (const auto& [name, t] : store.params())
        put_tensor(f, name, uint64_t(t.rows()), uint64_t(t.cols()), t.values().data());
    if (!stats.mean.empty()) {
        std::vector<float> m(stats.mean.begin(), stats.mean.end());
        std::vector<float> s(stats.stdev.begin(), stats.stdev.end());
        put_tensor(f, "stats.gene_mean", 1, m.size(), m.data());
        put_tensor(f, "stats.gene_stdev", 1, s.size(), s.data());
    }
    if (!f) throw std::runtime_error("short write to checkpoint: " + path);
}

LoadResult load_checkpoint(const std::string& path, nn::ParameterStore<float>& store,
                           const std::string& expected_config_text, bool force) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open checkpoint: " + path);
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("not a CDDS checkpoint: " + path);
    uint32_t version = get_u32(f);
    if (version != kCheckpointVersion)
        throw std::runtime_error("checkpoint version mismatch: file has " +
                                 std::to_string(version) + ", expected " +
                                 std::to_string(kCheckpointVersion));
    std::string config_text = get_str(f, get_u32(f));

    LoadResult res;
    if (!expected_config_text.empty() && config_text != expected_config_text) {
        uint64_t h_file = rng::fnv1a(config_text);
        uint64_t h_want = rng::fnv1a(expected_config_text);
        if (h_file != h_want) {
            res.config_hash_mismatch = true;
            if (!force)
                throw std::runtime_error(
                    "config-hash mismatch between checkpoint and current config "
                    "(use --force to load anyway)");
        }
    }

    uint32_t count = get_u32(f);
    size_t loaded = 0;
    for (uint32_t i = 0; i < count; ++i) {
        std::string name = get_str(f, get_u32(f));
        uint32_t rank = get_u32(f);
        if (rank != 2) throw std::runtime_error("unsupported tensor rank in checkpoint");
        uint64_t rows = get_u64(f);
        uint64_t cols = get_u64(f);
        std::vector<float> buf(rows * cols);
        f.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size() * 4));
        if (!f) throw std::runtime_error("TruncatedCheckpoint: unexpected end of file");

        if (name == "stats.gene_mean") {
            res.stats.mean.assign(buf.begin(), buf.end());
            continue;
        }
        if (name == "stats.gene_stdev") {
            res.stats.stdev.assign(buf.begin(), buf.end());
            continue;
        }
        if (!store.has(name))
            throw std::runtime_error("checkpoint tensor '" + name +
                                     "' does not exist in the configured model");
        auto& t = store.at(name);
        if (uint64_t(t.rows()) != rows || uint64_t(t.cols()) != cols)
            throw std::runtime_error(
                "shape mismatch for parameter '" + name + "': checkpoint has " +
                std::to_string(rows) + "x" + std::to_string(cols) + ", model expects " +
                std::to_string(t.rows()) + "x" + std::to_string(t.cols()));
        t.values() = std::move(buf);
        ++loaded;
    }
    if (loaded != store.params().size())
        throw std::runtime_error("checkpoint is missing " +
                                 std::to_string(store.params().size() - loaded) +
                                 " model parameters");
    return res;
}

CheckpointInfo inspect_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open checkpoint: " + path);
    f.seekg(0, std::ios::end);
    uint64_t file_size = uint64_t(f.tellg());
    f.seekg(0, std::ios::beg);
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("not a CDDS checkpoint: " + path);
    CheckpointInfo info;
    info.version = get_u32(f);
    info.config_text = get_str(f, get_u32(f));
    info.config_hash = rng::fnv1a(info.config_text);
    uint32_t count = get_u32(f);
    for (uint32_t i = 0; i < count; ++i) {
        TensorInfo ti;
        ti.name = get_str(f, get_u32(f));
        uint32_t rank = get_u32(f);
        uint64_t total = 1;
        for (uint32_t r = 0; r < rank; ++r) {
            ti.extents.push_back(get_u64(f));
            total *= ti.extents.back();
        }
        // seeking past end of file does not fault, so bound-check explicitly
        uint64_t next = uint64_t(f.tellg()) + total * 4;
        if (next > file_size)
            throw std::runtime_error("TruncatedCheckpoint: unexpected end of file");
        f.seekg(std::streamoff(next), std::ios::beg);
        info.tensors.push_back(std::move(ti));
    }
    return info;
}

}  // namespace cdds::io
