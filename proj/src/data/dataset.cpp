#include "data/dataset.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "chem/featurize.hpp"
#include "chem/scaffold.hpp"
#include "chem/smiles.hpp"
#include "util/csv.hpp"

namespace cdds::data {

const DrugEntry& Dataset::drug(const std::string& id) const {
    auto it = drugs.find(id);
    if (it == drugs.end()) throw std::runtime_error("UnresolvedId: drug '" + id + "'");
    return it->second;
}

const std::vector<double>& Dataset::raw_expression(const std::string& cell_id) const {
    auto it = expression.find(cell_id);
    if (it == expression.end()) throw std::runtime_error("UnresolvedId: cell '" + cell_id + "'");
    return it->second;
}

std::vector<std::string> load_gene_list(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open gene list: " + path);
    std::vector<std::string> genes;
    std::string line;
    while (std::getline(f, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) genes.push_back(line);
    }
    if (genes.empty()) throw std::runtime_error("gene list is empty: " + path);
    std::set<std::string> uniq(genes.begin(), genes.end());
    if (uniq.size() != genes.size())
        throw std::runtime_error("gene list contains duplicates: " + path);
    return genes;
}

static std::map<std::string, std::vector<double>> load_expression(
    const std::string& cells_csv, const std::vector<std::string>& genes) {
    csv::Table t = csv::read_file(cells_csv);
    std::map<std::string, std::vector<double>> out;
    std::map<std::string, size_t> gene_pos;
    for (size_t i = 0; i < genes.size(); ++i) gene_pos[genes[i]] = i;

    bool long_form = t.column("gene") >= 0 && t.column("tpm") >= 0;
    if (long_form) {
        int c_cell = t.require_column("cell_id");
        int c_gene = t.require_column("gene");
        int c_tpm = t.require_column("tpm");
        std::map<std::string, std::vector<bool>> seen;
        for (size_t r = 0; r < t.rows.size(); ++r) {
            const std::string& cell = t.at(r, c_cell);
            const std::string& gene = t.at(r, c_gene);
            auto gp = gene_pos.find(gene);
            if (gp == gene_pos.end()) continue;  // outside the frozen list
            auto& vec = out[cell];
            auto& mask = seen[cell];
            if (vec.empty()) {
                vec.assign(genes.size(), 0.0);
                mask.assign(genes.size(), false);
            }
            double tpm = csv::parse_double(t.at(r, c_tpm), cells_csv);
            vec[gp->second] = std::log2(tpm + 1.0);
            mask[gp->second] = true;
        }
        for (auto& [cell, mask] : seen)
            for (size_t i = 0; i < mask.size(); ++i)
                if (!mask[i])
                    throw std::runtime_error("MissingGene: cell '" + cell + "' lacks gene '" +
                                             genes[i] + "'");
    } else {
        int c_cell = t.require_column("cell_id");
        std::vector<int> cols(genes.size());
        for (size_t i = 0; i < genes.size(); ++i) {
            cols[i] = t.column(genes[i]);
            if (cols[i] < 0)
                throw std::runtime_error("MissingGene: column '" + genes[i] + "' absent in " +
                                         cells_csv);
        }
        for (size_t r = 0; r < t.rows.size(); ++r) {
            std::vector<double> vec(genes.size());
            for (size_t i = 0; i < genes.size(); ++i)
                vec[i] = std::log2(csv::parse_double(t.at(r, cols[i]), cells_csv) + 1.0);
            out[t.at(r, c_cell)] = std::move(vec);
        }
    }
    if (out.empty()) throw std::runtime_error("no cell lines loaded from " + cells_csv);
    return out;
}

Dataset load_dataset(const std::string& drugs_csv, const std::string& cells_csv,
                     const std::string& samples_csv, const std::string& gene_list_path) {
    Dataset ds;
    ds.gene_list = load_gene_list(gene_list_path);
    ds.expression = load_expression(cells_csv, ds.gene_list);

    csv::Table drugs = csv::read_file(drugs_csv);
    int c_id = drugs.require_column("drug_id");
    int c_smiles = drugs.require_column("smiles");
    for (size_t r = 0; r < drugs.rows.size(); ++r) {
        DrugEntry e;
        e.id = drugs.at(r, c_id);
        e.smiles = drugs.at(r, c_smiles);
        try {
            e.mol = chem::parse_smiles(e.smiles);
        } catch (const chem::ParseError& err) {
            throw std::runtime_error("ParseFailure: drug '" + e.id + "': " + err.what());
        }
        chem::featurize(e.mol);
        e.graph = model::make_drug_graph(e.mol);
        e.scaffold = chem::scaffold_key(e.mol);
        ds.drugs[e.id] = std::move(e);
    }

    csv::Table samples = csv::read_file(samples_csv);
    int c_a = samples.require_column("drug_a_id");
    int c_b = samples.require_column("drug_b_id");
    int c_cell = samples.require_column("cell_id");
    int c_score = samples.require_column("score");
    int c_group = samples.column("group_label");
    ds.has_group_labels = c_group >= 0;

    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (size_t r = 0; r < samples.rows.size(); ++r) {
        SynergySample s;
        s.drug_a = samples.at(r, c_a);
        s.drug_b = samples.at(r, c_b);
        s.cell = samples.at(r, c_cell);
        if (!ds.drugs.count(s.drug_a))
            throw std::runtime_error("UnresolvedId: drug '" + s.drug_a + "' in sample row " +
                                     std::to_string(r));
        if (!ds.drugs.count(s.drug_b))
            throw std::runtime_error("UnresolvedId: drug '" + s.drug_b + "' in sample row " +
                                     std::to_string(r));
        if (!ds.expression.count(s.cell))
            throw std::runtime_error("UnresolvedId: cell '" + s.cell + "' in sample row " +
                                     std::to_string(r));
        s.score = csv::parse_double(samples.at(r, c_score), samples_csv);
        s.label = s.score > kLabelThreshold ? 1 : 0;
        if (c_group >= 0) s.group_label = samples.at(r, c_group);
        s.self_pair = s.drug_a == s.drug_b;
        auto key = std::make_tuple(s.drug_a, s.drug_b, s.cell);
        if (!seen.insert(key).second) ds.duplicate_rows.push_back(ds.samples.size());
        ds.samples.push_back(std::move(s));
    }
    if (ds.samples.empty()) throw std::runtime_error("no samples loaded from " + samples_csv);
    return ds;
}

NormStats compute_norm_stats(const Dataset& ds, const std::vector<size_t>& train_samples) {
    std::set<std::string> cells;
    for (size_t i : train_samples) cells.insert(ds.samples[i].cell);
    if (cells.empty()) throw std::runtime_error("compute_norm_stats: no training samples");
    size_t g = ds.gene_list.size();
    NormStats st;
    st.mean.assign(g, 0.0);
    st.stdev.assign(g, 0.0);
    for (const auto& c : cells) {
        const auto& e = ds.raw_expression(c);
        for (size_t i = 0; i < g; ++i) st.mean[i] += e[i];
    }
    for (size_t i = 0; i < g; ++i) st.mean[i] /= double(cells.size());
    for (const auto& c : cells) {
        const auto& e = ds.raw_expression(c);
        for (size_t i = 0; i < g; ++i) {
            double d = e[i] - st.mean[i];
            st.stdev[i] += d * d;
        }
    }
    for (size_t i = 0; i < g; ++i)
        st.stdev[i] = std::sqrt(st.stdev[i] / double(cells.size()));
    return st;
}

std::vector<double> normalize_expression(const std::vector<double>& raw, const NormStats& stats) {
    std::vector<double> out(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) {
        double sd = stats.stdev[i] < 1e-8 ? 1.0 : stats.stdev[i];
        out[i] = (raw[i] - stats.mean[i]) / sd;
    }
    return out;
}

}  // namespace cdds::data
