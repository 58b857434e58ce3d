#pragma once

#include <map>
#include <string>
#include <vector>

#include "chem/mol.hpp"
#include "model/graphs.hpp"

namespace cdds::data {

// Synergy scores above this are the positive class.
inline constexpr double kLabelThreshold = 10.0;

struct SynergySample {
    std::string drug_a, drug_b, cell;
    double score = 0.0;
    int label = 0;            // score > 10
    std::string group_label;  // optional external grouping (e.g. temporal bucket)
    bool self_pair = false;
};

struct DrugEntry {
    std::string id;
    std::string smiles;
    chem::MolecularGraph mol;
    model::DrugGraph graph;
    std::string scaffold;
};

struct Dataset {
    std::vector<std::string> gene_list;                       // frozen order
    std::map<std::string, DrugEntry> drugs;
    std::map<std::string, std::vector<double>> expression;    // cell -> log2(tpm+1), gene order
    std::vector<SynergySample> samples;
    std::vector<size_t> duplicate_rows;   // sample indices repeating an earlier (a,b,cell) triple
    bool has_group_labels = false;

    const DrugEntry& drug(const std::string& id) const;
    const std::vector<double>& raw_expression(const std::string& cell_id) const;
};

// Per-gene z-score statistics, computed from training data only.
struct NormStats {
    std::vector<double> mean, stdev;
};

std::vector<std::string> load_gene_list(const std::string& path);

// drugs_csv: drug_id,smiles
// cells_csv: long form (cell_id,gene,tpm) or wide form (cell_id + gene columns)
// samples_csv: drug_a_id,drug_b_id,cell_id,score[,group_label]
// Expression is restricted to the gene list and transformed log2(tpm+1);
// z-scoring happens per training fold via compute_norm_stats.
Dataset load_dataset(const std::string& drugs_csv, const std::string& cells_csv,
                     const std::string& samples_csv, const std::string& gene_list_path);

// Statistics over the distinct cell lines referenced by the given samples.
NormStats compute_norm_stats(const Dataset& ds, const std::vector<size_t>& train_samples);

std::vector<double> normalize_expression(const std::vector<double>& raw, const NormStats& stats);

}  // namespace cdds::data
