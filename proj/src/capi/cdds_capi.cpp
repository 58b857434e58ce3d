#include "cdds.h"

#include <cstring>
#include <string>

#include "chem/mol.hpp"
#include "data/synthetic.hpp"
#include "io/checkpoint.hpp"
#include "run/commands.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

cdds_status classify(const std::exception& e) {
    if (dynamic_cast<const cdds::run::UsageError*>(&e)) return CDDS_ERR_USAGE;
    if (dynamic_cast<const cdds::run::DataError*>(&e)) return CDDS_ERR_DATA;
    if (dynamic_cast<const cdds::run::NumericError*>(&e)) return CDDS_ERR_NUMERIC;
    if (dynamic_cast<const cdds::chem::ParseError*>(&e)) return CDDS_ERR_DATA;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return CDDS_ERR_USAGE;
    return CDDS_ERR_DATA;
}

template <typename Fn>
cdds_status guarded(Fn&& fn) {
    try {
        fn();
        return CDDS_OK;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return classify(e);
    } catch (...) {
        g_last_error = "unknown error";
        return CDDS_ERR_INTERNAL;
    }
}

cdds_status require(bool cond, const char* msg) {
    if (cond) return CDDS_OK;
    g_last_error = msg;
    return CDDS_ERR_USAGE;
}

}  // namespace

struct cdds_config {
    cdds::cfg::Config impl;
};

struct cdds_checkpoint {
    cdds::io::CheckpointInfo info;
};

extern "C" {

const char* cdds_version(void) { return "1.0.0"; }

const char* cdds_last_error(void) { return g_last_error.c_str(); }

void cdds_string_free(char* s) { std::free(s); }

cdds_status cdds_config_load(const char* path, cdds_config** out) {
    if (auto st = require(path && out, "config_load: null argument")) return st;
    return guarded([&] {
        auto* c = new cdds_config;
        c->impl = cdds::cfg::Config::load(path);
        *out = c;
    });
}

cdds_status cdds_config_create(cdds_config** out) {
    if (auto st = require(out != nullptr, "config_create: null argument")) return st;
    *out = new cdds_config;
    return CDDS_OK;
}

cdds_status cdds_config_set(cdds_config* c, const char* key, const char* value) {
    if (auto st = require(c && key && value, "config_set: null argument")) return st;
    return guarded([&] { c->impl.set(key, value); });
}

cdds_status cdds_config_get(const cdds_config* c, const char* key, char** out_value) {
    if (auto st = require(c && key && out_value, "config_get: null argument")) return st;
    return guarded([&] {
        if (!c->impl.has(key)) throw cdds::run::UsageError(std::string("no such key: ") + key);
        *out_value = dup_string(c->impl.get_str(key, ""));
    });
}

cdds_status cdds_config_save(const cdds_config* c, const char* path) {
    if (auto st = require(c && path, "config_save: null argument")) return st;
    return guarded([&] { c->impl.save(path); });
}

void cdds_config_free(cdds_config* c) { delete c; }

cdds_status cdds_train(const cdds_config* c, const char* out_dir) {
    if (auto st = require(c && out_dir, "train: null argument")) return st;
    return guarded([&] {
        auto rc = cdds::run::RunConfig::from_config(c->impl);
        cdds::run::cmd_train(rc, out_dir);
    });
}

cdds_status cdds_evaluate_cv(const cdds_config* c, const char* out_dir, char** out_report) {
    if (auto st = require(c && out_dir, "evaluate_cv: null argument")) return st;
    return guarded([&] {
        auto rc = cdds::run::RunConfig::from_config(c->impl);
        std::string report = cdds::run::cmd_evaluate_cv(rc, out_dir);
        if (out_report) *out_report = dup_string(report);
    });
}

cdds_status cdds_evaluate_checkpoint(const cdds_config* c, const char* checkpoint, int fold,
                                     const char* external_test_csv, const char* out_csv,
                                     int force, char** out_report) {
    if (auto st = require(c && checkpoint, "evaluate_checkpoint: null argument")) return st;
    return guarded([&] {
        auto rc = cdds::run::RunConfig::from_config(c->impl);
        std::string report = cdds::run::cmd_evaluate_checkpoint(
            rc, checkpoint, fold, external_test_csv ? external_test_csv : "",
            out_csv ? out_csv : "", force != 0);
        if (out_report) *out_report = dup_string(report);
    });
}

cdds_status cdds_predict(const cdds_config* c, const char* checkpoint, const char* pairs_csv,
                         const char* subs_csv, const char* out_csv, int force) {
    if (auto st = require(c && checkpoint && pairs_csv && out_csv, "predict: null argument"))
        return st;
    return guarded([&] {
        auto rc = cdds::run::RunConfig::from_config(c->impl);
        cdds::run::cmd_predict(rc, checkpoint, pairs_csv, subs_csv ? subs_csv : "", out_csv,
                               force != 0);
    });
}

cdds_status cdds_explain(const cdds_config* c, const char* checkpoint, const char* pairs_csv,
                         const char* out_dir, int force) {
    if (auto st = require(c && checkpoint && pairs_csv && out_dir, "explain: null argument"))
        return st;
    return guarded([&] {
        auto rc = cdds::run::RunConfig::from_config(c->impl);
        cdds::run::cmd_explain(rc, checkpoint, pairs_csv, out_dir, force != 0);
    });
}

cdds_status cdds_make_folds(const cdds_config* c, const char* out_csv) {
    if (auto st = require(c && out_csv, "make_folds: null argument")) return st;
    return guarded([&] {
        auto rc = cdds::run::RunConfig::from_config(c->impl);
        cdds::run::cmd_make_folds(rc, out_csv);
    });
}

cdds_status cdds_parse_corpus(const char* smi_path, const char* out_csv) {
    if (auto st = require(smi_path && out_csv, "parse_corpus: null argument")) return st;
    return guarded([&] { cdds::run::cmd_parse_corpus(smi_path, out_csv); });
}

cdds_status cdds_gen_synthetic(const char* out_dir, uint64_t seed, int n_pairs,
                               const char* genes_path, char** out_config_path) {
    if (auto st = require(out_dir && genes_path, "gen_synthetic: null argument")) return st;
    return guarded([&] {
        cdds::data::SyntheticSpec spec;
        spec.seed = seed;
        if (n_pairs > 0) spec.n_pairs = n_pairs;
        spec.genes_path = genes_path;
        std::string path = cdds::data::gen_synthetic(out_dir, spec);
        if (out_config_path) *out_config_path = dup_string(path);
    });
}

cdds_status cdds_checkpoint_open(const char* path, cdds_checkpoint** out) {
    if (auto st = require(path && out, "checkpoint_open: null argument")) return st;
    return guarded([&] {
        auto* ck = new cdds_checkpoint;
        ck->info = cdds::io::inspect_checkpoint(path);
        *out = ck;
    });
}

uint32_t cdds_checkpoint_format_version(const cdds_checkpoint* ck) {
    return ck ? ck->info.version : 0;
}

uint64_t cdds_checkpoint_config_hash(const cdds_checkpoint* ck) {
    return ck ? ck->info.config_hash : 0;
}

size_t cdds_checkpoint_tensor_count(const cdds_checkpoint* ck) {
    return ck ? ck->info.tensors.size() : 0;
}

const char* cdds_checkpoint_tensor(const cdds_checkpoint* ck, size_t index, uint64_t* rows,
                                   uint64_t* cols) {
    if (!ck || index >= ck->info.tensors.size()) return nullptr;
    const auto& t = ck->info.tensors[index];
    if (rows) *rows = t.extents.size() > 0 ? t.extents[0] : 1;
    if (cols) *cols = t.extents.size() > 1 ? t.extents[1] : 1;
    return t.name.c_str();
}

void cdds_checkpoint_free(cdds_checkpoint* ck) { delete ck; }

cdds_status cdds_inspect_checkpoint(const char* path, char** out_text) {
    if (auto st = require(path && out_text, "inspect_checkpoint: null argument")) return st;
    return guarded([&] { *out_text = dup_string(cdds::run::cmd_inspect_checkpoint(path)); });
}

}  // extern "C"
