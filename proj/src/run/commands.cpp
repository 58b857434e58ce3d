#include "run/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chem/elements.hpp"
#include "chem/scaffold.hpp"
#include "chem/smiles.hpp"
#include "io/checkpoint.hpp"
#include "run/render.hpp"
#include "util/csv.hpp"
#include "util/rng.hpp"

namespace cdds::run {

namespace fs = std::filesystem;

namespace {

data::Dataset load_ds(RunConfig& rc) {
    try {
        data::Dataset ds =
            data::load_dataset(rc.drugs_csv, rc.cells_csv, rc.samples_csv, rc.genes_path);
        rc.hp.genes = int(ds.gene_list.size());
        return ds;
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
}

uint64_t file_hash(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return rng::fnv1a(buf.str());
}

void write_run_info(const std::string& dir, const RunConfig& rc) {
    std::ofstream f(fs::path(dir) / "run_info.txt");
    char buf[128];
    f << "seed = " << rc.seed << "\n";
    std::snprintf(buf, sizeof buf, "config_hash = %016llx\n",
                  (unsigned long long)rc.raw.content_hash());
    f << buf;
    std::snprintf(buf, sizeof buf, "gene_list_hash = %016llx\n",
                  (unsigned long long)file_hash(rc.genes_path));
    f << buf;
    f << "feature_layout_version = " << chem::kFeatureLayoutVersion << "\n";
}

struct LoadedModel {
    model::Model<float> m;
    CellCache cells;
};

LoadedModel model_from_checkpoint(const RunConfig& rc, const std::string& checkpoint, bool force) {
    LoadedModel lm;
    lm.m = model::Model<float>::build(rc.hp, rc.task, rc.seed);
    auto res = io::load_checkpoint(checkpoint, lm.m.store, rc.canonical_text(), force);
    if (res.stats.mean.empty())
        throw DataError("checkpoint carries no normalization statistics: " + checkpoint);
    if (res.config_hash_mismatch)
        std::fprintf(stderr, "warning: checkpoint config hash differs from current config\n");
    lm.cells.stats = std::move(res.stats);
    return lm;
}

std::vector<size_t> external_test_indices(data::Dataset& ds, const std::string& test_csv) {
    // Appends the external samples to the dataset and returns their indices.
    csv::Table t = csv::read_file(test_csv);
    int c_a = t.require_column("drug_a_id");
    int c_b = t.require_column("drug_b_id");
    int c_cell = t.require_column("cell_id");
    int c_score = t.require_column("score");
    std::vector<size_t> idx;
    for (size_t r = 0; r < t.rows.size(); ++r) {
        data::SynergySample s;
        s.drug_a = t.at(r, c_a);
        s.drug_b = t.at(r, c_b);
        s.cell = t.at(r, c_cell);
        if (!ds.drugs.count(s.drug_a)) throw DataError("UnresolvedId: drug '" + s.drug_a + "'");
        if (!ds.drugs.count(s.drug_b)) throw DataError("UnresolvedId: drug '" + s.drug_b + "'");
        if (!ds.expression.count(s.cell)) throw DataError("UnresolvedId: cell '" + s.cell + "'");
        s.score = csv::parse_double(t.at(r, c_score), test_csv);
        s.label = s.score > data::kLabelThreshold ? 1 : 0;
        idx.push_back(ds.samples.size());
        ds.samples.push_back(std::move(s));
    }
    if (idx.empty()) throw DataError("external test file has no rows: " + test_csv);
    return idx;
}

}  // namespace

std::string cmd_train(const RunConfig& rc_in, const std::string& out_dir) {
    RunConfig rc = rc_in;
    data::Dataset ds = load_ds(rc);
    data::FoldPlan plan = data::make_folds(ds, rc.protocol, rc.k, rc.seed);
    data::FoldSplit split = plan.split(0);
    if (split.test.empty() || split.train.empty())
        throw DataError("fold 0 yields an empty train or validation side");

    fs::create_directories(out_dir);
    rc.raw.save((fs::path(out_dir) / "config.cfg").string());
    write_run_info(out_dir, rc);
    plan.save_csv((fs::path(out_dir) / "folds.csv").string());

    TrainArtifacts art = train_model(rc, ds, split.train, split.test, out_dir, "");
    std::ofstream f(fs::path(out_dir) / "val_report.csv");
    f << art.best_val.to_csv();
    return out_dir;
}

std::string cmd_evaluate_cv(const RunConfig& rc_in, const std::string& out_dir) {
    RunConfig rc = rc_in;
    data::Dataset ds = load_ds(rc);
    data::FoldPlan plan = data::make_folds(ds, rc.protocol, rc.k, rc.seed);
    fs::create_directories(out_dir);
    rc.raw.save((fs::path(out_dir) / "config.cfg").string());
    write_run_info(out_dir, rc);
    plan.save_csv((fs::path(out_dir) / "folds.csv").string());

    std::vector<metrics::EvalReport> reports;
    for (int f = 0; f < rc.k; ++f) {
        data::FoldSplit split = plan.split(f);
        if (split.test.empty() || split.train.empty())
            throw DataError("fold " + std::to_string(f) + " yields an empty split");
        std::string fold_dir = (fs::path(out_dir) / ("fold" + std::to_string(f))).string();
        TrainArtifacts art =
            train_model(rc, ds, split.train, split.test, fold_dir, "fold" + std::to_string(f));
        reports.push_back(art.best_val);
    }

    // Per-fold rows plus mean and standard deviation, the usual CV report.
    std::ostringstream out;
    auto names = reports[0].items();
    out << "fold";
    for (const auto& [name, _] : names) out << "," << name;
    out << "\n";
    char buf[64];
    std::vector<double> mean(names.size(), 0.0), var(names.size(), 0.0);
    for (int f = 0; f < rc.k; ++f) {
        out << f;
        auto items = reports[size_t(f)].items();
        for (size_t j = 0; j < items.size(); ++j) {
            std::snprintf(buf, sizeof buf, ",%.6f", items[j].second);
            out << buf;
            mean[j] += items[j].second;
        }
        out << "\n";
    }
    for (double& m : mean) m /= double(rc.k);
    for (int f = 0; f < rc.k; ++f) {
        auto items = reports[size_t(f)].items();
        for (size_t j = 0; j < items.size(); ++j) {
            double d = items[j].second - mean[j];
            var[j] += d * d;
        }
    }
    out << "mean";
    for (size_t j = 0; j < mean.size(); ++j) {
        std::snprintf(buf, sizeof buf, ",%.6f", mean[j]);
        out << buf;
    }
    out << "\nstd";
    for (size_t j = 0; j < var.size(); ++j) {
        std::snprintf(buf, sizeof buf, ",%.6f", std::sqrt(var[j] / double(rc.k)));
        out << buf;
    }
    out << "\n";

    std::ofstream f(fs::path(out_dir) / "cv_report.csv");
    f << out.str();
    return out.str();
}

std::string cmd_evaluate_checkpoint(const RunConfig& rc_in, const std::string& checkpoint,
                                    int fold, const std::string& external_test_csv,
                                    const std::string& out_csv, bool force) {
    RunConfig rc = rc_in;
    data::Dataset ds = load_ds(rc);
    LoadedModel lm = model_from_checkpoint(rc, checkpoint, force);

    std::vector<size_t> idx;
    if (!external_test_csv.empty()) {
        idx = external_test_indices(ds, external_test_csv);
    } else {
        data::FoldPlan plan = data::make_folds(ds, rc.protocol, rc.k, rc.seed);
        if (fold < 0 || fold >= rc.k) throw UsageError("fold index out of range");
        idx = plan.split(fold).test;
        if (idx.empty()) throw DataError("fold test side is empty");
    }
    EvalOutput ev = evaluate_model(lm.m, ds, lm.cells, idx, rc);
    std::string text = ev.report.to_csv();
    if (!out_csv.empty()) {
        std::ofstream f(out_csv);
        f << text;
    }
    return text;
}

void cmd_predict(const RunConfig& rc_in, const std::string& checkpoint,
                 const std::string& pairs_csv, const std::string& subs_csv,
                 const std::string& out_csv, bool force) {
    RunConfig rc = rc_in;
    data::Dataset ds = load_ds(rc);
    LoadedModel lm = model_from_checkpoint(rc, checkpoint, force);

    struct Substitution {
        std::string old_id, new_id;
        model::DrugGraph graph;
    };
    std::vector<Substitution> subs;
    if (!subs_csv.empty()) {
        csv::Table t = csv::read_file(subs_csv);
        int c_old = t.require_column("old_drug_id");
        int c_new = t.require_column("new_drug_id");
        int c_smiles = t.require_column("new_smiles");
        for (size_t r = 0; r < t.rows.size(); ++r) {
            Substitution s;
            s.old_id = t.at(r, c_old);
            s.new_id = t.at(r, c_new);
            try {
                chem::MolecularGraph mol = chem::parse_smiles(t.at(r, c_smiles));
                s.graph = model::make_drug_graph(mol);
            } catch (const chem::ParseError& e) {
                throw DataError("ParseFailure: substitution '" + s.new_id + "': " + e.what());
            }
            subs.push_back(std::move(s));
        }
    }

    csv::Table pairs = csv::read_file(pairs_csv);
    int c_a = pairs.require_column("drug_a_id");
    int c_b = pairs.require_column("drug_b_id");
    int c_cell = pairs.require_column("cell_id");

    std::ofstream f(out_csv);
    if (!f) throw DataError("cannot write " + out_csv);
    f << "drug_a,drug_b,cell,raw_score,substituted_pair,substituted_score,delta\n";
    char buf[512];
    for (size_t r = 0; r < pairs.rows.size(); ++r) {
        const std::string& a = pairs.at(r, c_a);
        const std::string& b = pairs.at(r, c_b);
        const std::string& cell = pairs.at(r, c_cell);
        if (!ds.drugs.count(a)) throw DataError("UnresolvedId: drug '" + a + "'");
        if (!ds.drugs.count(b)) throw DataError("UnresolvedId: drug '" + b + "'");
        if (!ds.expression.count(cell)) throw DataError("UnresolvedId: cell '" + cell + "'");
        const auto& cell_vec = lm.cells.get(ds, cell);
        const model::DrugGraph& ga = ds.drug(a).graph;
        const model::DrugGraph& gb = ds.drug(b).graph;
        double raw = predict_pair(lm.m, ga, gb, cell_vec, rc.hp.symmetrize_pairs);

        bool any_sub = false;
        for (const Substitution& s : subs) {
            if (s.old_id != a && s.old_id != b) continue;
            any_sub = true;
            const model::DrugGraph& sa = s.old_id == a ? s.graph : ga;
            const model::DrugGraph& sb = s.old_id == b ? s.graph : gb;
            double sub_score = predict_pair(lm.m, sa, sb, cell_vec, rc.hp.symmetrize_pairs);
            std::snprintf(buf, sizeof buf, "%s,%s,%s,%.6f,%s->%s,%.6f,%.6f\n", a.c_str(),
                          b.c_str(), cell.c_str(), raw, s.old_id.c_str(), s.new_id.c_str(),
                          sub_score, sub_score - raw);
            f << buf;
        }
        if (!any_sub) {
            std::snprintf(buf, sizeof buf, "%s,%s,%s,%.6f,,,\n", a.c_str(), b.c_str(),
                          cell.c_str(), raw);
            f << buf;
        }
    }
}

void cmd_explain(const RunConfig& rc_in, const std::string& checkpoint,
                 const std::string& pairs_csv, const std::string& out_dir, bool force) {
    RunConfig rc = rc_in;
    data::Dataset ds = load_ds(rc);
    LoadedModel lm = model_from_checkpoint(rc, checkpoint, force);
    if (!rc.hp.use_disentangle)
        throw UsageError("explain requires the disentangle module (loss.disentangle = true)");
    fs::create_directories(out_dir);

    csv::Table pairs = csv::read_file(pairs_csv);
    int c_a = pairs.require_column("drug_a_id");
    int c_b = pairs.require_column("drug_b_id");
    int c_cell = pairs.require_column("cell_id");

    for (size_t r = 0; r < pairs.rows.size(); ++r) {
        const std::string& a = pairs.at(r, c_a);
        const std::string& b = pairs.at(r, c_b);
        const std::string& cell = pairs.at(r, c_cell);
        if (!ds.drugs.count(a)) throw DataError("UnresolvedId: drug '" + a + "'");
        if (!ds.drugs.count(b)) throw DataError("UnresolvedId: drug '" + b + "'");
        if (!ds.expression.count(cell)) throw DataError("UnresolvedId: cell '" + cell + "'");

        model::RunContext<float> ctx;
        ctx.mode = model::Mode::explain;
        auto out = lm.m.forward_pair(ds.drug(a).graph, ds.drug(b).graph, lm.cells.get(ds, cell),
                                     std::nullopt, ctx);

        std::string stem = "pair" + std::to_string(r);
        std::ofstream f(fs::path(out_dir) / (stem + "_importance.csv"));
        f << "drug_id,atom_index,element,importance,causal\n";
        char buf[160];
        auto dump = [&](const std::string& id, const chem::MolecularGraph& mol,
                        const std::vector<float>& p) {
            for (size_t i = 0; i < p.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%s,%zu,%s,%.6f,%d\n", id.c_str(), i,
                              chem::element(mol.atoms[i].element).symbol, double(p[i]),
                              double(p[i]) >= rc.explain_threshold ? 1 : 0);
                f << buf;
            }
        };
        dump(a, ds.drug(a).mol, out.p1.values());
        dump(b, ds.drug(b).mol, out.p2.values());

        auto render = [&](const std::string& id, const chem::MolecularGraph& mol,
                          const std::vector<float>& p, const char* side) {
            std::vector<double> imp(p.begin(), p.end());
            std::string base = (fs::path(out_dir) / (stem + "_" + side + "_" + id)).string();
            write_explanation_dot(mol, imp, rc.explain_threshold, base + ".dot");
            write_explanation_svg(mol, imp, rc.explain_threshold, base + ".svg");
        };
        render(a, ds.drug(a).mol, out.p1.values(), "a");
        render(b, ds.drug(b).mol, out.p2.values(), "b");
    }
}

std::string cmd_inspect_checkpoint(const std::string& path) {
    io::CheckpointInfo info = io::inspect_checkpoint(path);
    std::ostringstream out;
    char buf[128];
    out << "format_version = " << info.version << "\n";
    std::snprintf(buf, sizeof buf, "config_hash = %016llx\n",
                  (unsigned long long)info.config_hash);
    out << buf;
    uint64_t total = 0;
    for (const auto& t : info.tensors) {
        uint64_t count = 1;
        out << t.name << " [";
        for (size_t i = 0; i < t.extents.size(); ++i) {
            out << (i ? "x" : "") << t.extents[i];
            count *= t.extents[i];
        }
        out << "]\n";
        if (t.name.rfind("stats.", 0) != 0) total += count;
    }
    out << "trainable_values = " << total << "\n";
    return out.str();
}

void cmd_make_folds(const RunConfig& rc_in, const std::string& out_csv) {
    RunConfig rc = rc_in;
    data::Dataset ds = load_ds(rc);
    data::FoldPlan plan = data::make_folds(ds, rc.protocol, rc.k, rc.seed);
    plan.save_csv(out_csv);
}

void cmd_parse_corpus(const std::string& smi_path, const std::string& out_csv) {
    std::ifstream in(smi_path);
    if (!in) throw DataError("cannot open " + smi_path);
    std::ofstream out(out_csv);
    if (!out) throw DataError("cannot write " + out_csv);
    out << "smiles,status,n_atoms,n_bonds,scaffold_key\n";
    std::string line;
    while (std::getline(in, line)) {
        std::string smiles = line.substr(0, line.find_first_of(" \t\r"));
        if (smiles.empty()) continue;
        try {
            chem::MolecularGraph mol = chem::parse_smiles(smiles);
            out << smiles << ",ok," << mol.atoms.size() << "," << mol.bonds.size() << ","
                << chem::scaffold_key(mol) << "\n";
        } catch (const chem::ParseError& e) {
            out << smiles << "," << chem::parse_error_kind_name(e.kind()) << ",0,0,\n";
        }
    }
}

}  // namespace cdds::run
