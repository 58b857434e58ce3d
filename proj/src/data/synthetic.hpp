#pragma once

#include <cstdint>
#include <string>

namespace cdds::data {

struct SyntheticSpec {
    uint64_t seed = 0;
    int n_pairs = 500;
    int n_drugs = 150;
    int n_cells = 8;
    double positive_rate = 0.4;
    std::string genes_path;  // frozen gene list to embed
};

// Planted-motif benchmark: molecules are random chains with decorator rings,
// and a pair is synergistic iff BOTH drugs carry the planted pyridine motif.
// Scores stay consistent with the >10 binarization. Writes drugs.csv,
// cells.csv, samples.csv, motif_atoms.csv, genes.txt and config.cfg into
// out_dir; returns the config path.
std::string gen_synthetic(const std::string& out_dir, const SyntheticSpec& spec);

}  // namespace cdds::data
