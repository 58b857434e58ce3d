#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace cdds::cfg {

// Flat key=value configuration with [section] headers. Keys are addressed as
// "section.key". Serialization is canonical (sections and keys sorted) so a
// config file hashes and round-trips deterministically.
class Config {
public:
    void set(const std::string& dotted_key, const std::string& value);
    bool has(const std::string& dotted_key) const;

    std::string get_str(const std::string& key, const std::string& fallback) const;
    std::string require_str(const std::string& key) const;
    int64_t get_int(const std::string& key, int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    std::string canonical_text() const;
    uint64_t content_hash() const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

    static Config parse(const std::string& text);
    static Config load(const std::string& path);  // applies the CDDS_SEED override
    void save(const std::string& path) const;

private:
    std::map<std::string, std::string> entries_;  // "section.key" -> value
};

}  // namespace cdds::cfg
