// Command-line front end for the CausalDDS shared library. Everything goes
// through the C API in cdds.h; exit codes mirror cdds_status.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cdds.h"

namespace {

int fail(cdds_status st) {
    std::fprintf(stderr, "error: %s\n", cdds_last_error());
    return int(st);
}

struct ConfigHandle {
    cdds_config* c = nullptr;
    ~ConfigHandle() { cdds_config_free(c); }
};

int load_config(const std::string& path, const std::vector<std::string>& overrides,
                ConfigHandle& h) {
    cdds_status st = cdds_config_load(path.c_str(), &h.c);
    if (st != CDDS_OK) return fail(st);
    for (const std::string& kv : overrides) {
        size_t eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
            return int(CDDS_ERR_USAGE);
        }
        st = cdds_config_set(h.c, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
        if (st != CDDS_OK) return fail(st);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CausalDDS drug-synergy prediction pipeline"};
    app.require_subcommand(1);

    std::string config_path, out_dir, out_csv, checkpoint, pairs_csv, subs_csv, test_csv,
        smi_path, genes_path, eval_mode;
    std::vector<std::string> overrides;
    int fold = 0, n_pairs = 500;
    uint64_t seed = 0;
    bool force = false;

    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("-c,--config", config_path, "configuration file")->required();
        cmd->add_option("--set", overrides, "override a config key (section.key=value)");
    };

    auto* train = app.add_subcommand("train", "train a model and write a run directory");
    add_config(train);
    train->add_option("-o,--out", out_dir, "run directory")->required();

    auto* evaluate = app.add_subcommand("evaluate", "cross-validate or evaluate a checkpoint");
    add_config(evaluate);
    evaluate->add_option("mode", eval_mode, "'cv' or a checkpoint path")->required();
    evaluate->add_option("-o,--out", out_dir, "output directory (cv) or report csv");
    evaluate->add_option("--fold", fold, "fold whose test side to evaluate (checkpoint mode)");
    evaluate->add_option("--test-file", test_csv, "external samples csv (checkpoint mode)");
    evaluate->add_flag("--force", force, "load despite a config-hash mismatch");

    auto* predict = app.add_subcommand("predict", "batch prediction with optional substitutions");
    add_config(predict);
    predict->add_option("--checkpoint", checkpoint, "model checkpoint")->required();
    predict->add_option("--pairs", pairs_csv, "pairs csv (drug_a_id,drug_b_id,cell_id)")->required();
    predict->add_option("--substitutions", subs_csv,
                        "substitutions csv (old_drug_id,new_drug_id,new_smiles)");
    predict->add_option("-o,--out", out_csv, "output csv")->required();
    predict->add_flag("--force", force, "load despite a config-hash mismatch");

    auto* explain = app.add_subcommand("explain", "export per-atom importance and renderings");
    add_config(explain);
    explain->add_option("--checkpoint", checkpoint, "model checkpoint")->required();
    explain->add_option("--pairs", pairs_csv, "pairs csv")->required();
    explain->add_option("-o,--out", out_dir, "output directory")->required();
    explain->add_flag("--force", force, "load despite a config-hash mismatch");

    auto* inspect = app.add_subcommand("inspect-checkpoint", "print checkpoint metadata");
    inspect->add_option("checkpoint", checkpoint, "checkpoint path")->required();

    auto* makefolds = app.add_subcommand("make-folds", "export a fold plan csv");
    add_config(makefolds);
    makefolds->add_option("-o,--out", out_csv, "output csv")->required();

    auto* parsecorpus = app.add_subcommand("parse-corpus", "parse a SMILES corpus into a report");
    parsecorpus->add_option("corpus", smi_path, "one SMILES per line")->required();
    parsecorpus->add_option("-o,--out", out_csv, "report csv")->required();

    auto* gensynth = app.add_subcommand("gen-synthetic", "emit the planted-motif benchmark");
    gensynth->add_option("-o,--out", out_dir, "output directory")->required();
    gensynth->add_option("--seed", seed, "generator seed");
    gensynth->add_option("--pairs", n_pairs, "number of synergy samples");
    gensynth->add_option("--genes", genes_path, "frozen gene list file")->required();

    CLI11_PARSE(app, argc, argv);

    if (train->parsed()) {
        ConfigHandle h;
        if (int rc = load_config(config_path, overrides, h)) return rc;
        cdds_status st = cdds_train(h.c, out_dir.c_str());
        if (st != CDDS_OK) return fail(st);
        std::printf("run directory: %s\n", out_dir.c_str());
        return 0;
    }
    if (evaluate->parsed()) {
        ConfigHandle h;
        if (int rc = load_config(config_path, overrides, h)) return rc;
        char* report = nullptr;
        cdds_status st;
        if (eval_mode == "cv") {
            if (out_dir.empty()) {
                std::fprintf(stderr, "error: cv mode needs --out directory\n");
                return int(CDDS_ERR_USAGE);
            }
            st = cdds_evaluate_cv(h.c, out_dir.c_str(), &report);
        } else {
            st = cdds_evaluate_checkpoint(h.c, eval_mode.c_str(), fold,
                                          test_csv.empty() ? nullptr : test_csv.c_str(),
                                          out_dir.empty() ? nullptr : out_dir.c_str(),
                                          force ? 1 : 0, &report);
        }
        if (st != CDDS_OK) return fail(st);
        if (report) {
            std::fputs(report, stdout);
            cdds_string_free(report);
        }
        return 0;
    }
    if (predict->parsed()) {
        ConfigHandle h;
        if (int rc = load_config(config_path, overrides, h)) return rc;
        cdds_status st = cdds_predict(h.c, checkpoint.c_str(), pairs_csv.c_str(),
                                      subs_csv.empty() ? nullptr : subs_csv.c_str(),
                                      out_csv.c_str(), force ? 1 : 0);
        if (st != CDDS_OK) return fail(st);
        std::printf("predictions: %s\n", out_csv.c_str());
        return 0;
    }
    if (explain->parsed()) {
        ConfigHandle h;
        if (int rc = load_config(config_path, overrides, h)) return rc;
        cdds_status st = cdds_explain(h.c, checkpoint.c_str(), pairs_csv.c_str(), out_dir.c_str(),
                                      force ? 1 : 0);
        if (st != CDDS_OK) return fail(st);
        std::printf("explanations: %s\n", out_dir.c_str());
        return 0;
    }
    if (inspect->parsed()) {
        char* text = nullptr;
        cdds_status st = cdds_inspect_checkpoint(checkpoint.c_str(), &text);
        if (st != CDDS_OK) return fail(st);
        std::fputs(text, stdout);
        cdds_string_free(text);
        return 0;
    }
    if (makefolds->parsed()) {
        ConfigHandle h;
        if (int rc = load_config(config_path, overrides, h)) return rc;
        cdds_status st = cdds_make_folds(h.c, out_csv.c_str());
        if (st != CDDS_OK) return fail(st);
        std::printf("fold plan: %s\n", out_csv.c_str());
        return 0;
    }
    if (parsecorpus->parsed()) {
        cdds_status st = cdds_parse_corpus(smi_path.c_str(), out_csv.c_str());
        if (st != CDDS_OK) return fail(st);
        std::printf("parse report: %s\n", out_csv.c_str());
        return 0;
    }
    if (gensynth->parsed()) {
        char* cfg = nullptr;
        cdds_status st =
            cdds_gen_synthetic(out_dir.c_str(), seed, n_pairs, genes_path.c_str(), &cfg);
        if (st != CDDS_OK) return fail(st);
        std::printf("synthetic config: %s\n", cfg ? cfg : "");
        cdds_string_free(cfg);
        return 0;
    }
    return int(CDDS_ERR_USAGE);
}
