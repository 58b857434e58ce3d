#include "data/synthetic.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "data/dataset.hpp"
#include "util/config.hpp"
#include "util/rng.hpp"

namespace cdds::data {

namespace {

struct RingFragment {
    const char* smiles;
    int n_atoms;
};

constexpr RingFragment kMotif = {"c1ccncc1", 6};
constexpr RingFragment kDistractors[] = {
    {"c1ccccc1", 6}, {"C1CCCCC1", 6}, {"c1ccoc1", 5}, {"c1ccsc1", 5}};

struct SynthDrug {
    std::string id;
    std::string smiles;
    bool has_motif = false;
    int n_atoms = 0;
    int motif_begin = -1;  // atom index range of the motif ring
};

SynthDrug make_drug(int index, bool motif, rng::Stream& rs) {
    SynthDrug d;
    char idbuf[16];
    std::snprintf(idbuf, sizeof idbuf, "D%03d", index);
    d.id = idbuf;
    d.has_motif = motif;

    // Long heterogeneous backbones keep the graph-mean statistics noisy, so
    // the planted ring stays the only crisp signal.
    int n_back = 6 + int(rs.next_below(7));  // 6..12
    std::string smiles;
    int atoms = 0;
    for (int i = 0; i < n_back; ++i) {
        if (i + 1 == n_back) {
            smiles += 'C';  // ring attachment point stays carbon
        } else {
            uint64_t r = rs.next_below(10);
            smiles += r < 7 ? 'C' : (r < 9 ? 'N' : 'O');
        }
        ++atoms;
        // occasional methyl branch on interior carbons
        if (i > 0 && i + 2 < n_back && smiles.back() == 'C' && rs.next_below(3) == 0) {
            smiles += "(C)";
            ++atoms;
        }
    }

    // every drug carries a distractor ring; only motif drugs add the motif
    const RingFragment* first = nullptr;
    const RingFragment* second = nullptr;
    const RingFragment* dis = &kDistractors[rs.next_below(4)];
    bool motif_first = rs.next_below(2) == 0;
    if (motif) {
        first = motif_first ? &kMotif : dis;
        second = motif_first ? dis : &kMotif;
    } else {
        first = dis;
    }

    if (first && second) {
        smiles += "(";
        if (first == &kMotif) d.motif_begin = atoms;
        smiles += first->smiles;
        atoms += first->n_atoms;
        smiles += ")";
        if (second == &kMotif) d.motif_begin = atoms;
        smiles += second->smiles;
        atoms += second->n_atoms;
    } else if (first) {
        if (first == &kMotif) d.motif_begin = atoms;
        smiles += first->smiles;
        atoms += first->n_atoms;
    }
    d.smiles = smiles;
    d.n_atoms = atoms;
    return d;
}

}  // namespace

std::string gen_synthetic(const std::string& out_dir, const SyntheticSpec& spec) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    auto genes = load_gene_list(spec.genes_path);

    auto rs = rng::named_stream(spec.seed, "synthetic");

    // Drug pool: first half motif-bearing, then shuffled ids don't matter.
    std::vector<SynthDrug> drugs;
    for (int i = 0; i < spec.n_drugs; ++i)
        drugs.push_back(make_drug(i, i < spec.n_drugs / 2, rs));

    {
        std::ofstream f(fs::path(out_dir) / "drugs.csv");
        f << "drug_id,smiles\n";
        for (const auto& d : drugs) f << d.id << "," << d.smiles << "\n";
    }
    {
        std::ofstream f(fs::path(out_dir) / "motif_atoms.csv");
        f << "drug_id,atom_index,is_motif\n";
        for (const auto& d : drugs)
            for (int a = 0; a < d.n_atoms; ++a) {
                bool in_motif =
                    d.motif_begin >= 0 && a >= d.motif_begin && a < d.motif_begin + kMotif.n_atoms;
                f << d.id << "," << a << "," << (in_motif ? 1 : 0) << "\n";
            }
    }
    {
        std::ofstream f(fs::path(out_dir) / "genes.txt");
        for (const auto& g : genes) f << g << "\n";
    }
    {
        std::ofstream f(fs::path(out_dir) / "cells.csv");
        f << "cell_id";
        for (const auto& g : genes) f << "," << g;
        f << "\n";
        char buf[32];
        for (int c = 0; c < spec.n_cells; ++c) {
            f << "CELL" << c;
            for (size_t g = 0; g < genes.size(); ++g) {
                std::snprintf(buf, sizeof buf, ",%.3f", std::abs(rs.next_gaussian()) * 50.0);
                f << buf;
            }
            f << "\n";
        }
    }

    {
        std::ofstream f(fs::path(out_dir) / "samples.csv");
        f << "drug_a_id,drug_b_id,cell_id,score,group_label\n";
        std::vector<int> motif_ids, all_ids;
        for (int i = 0; i < spec.n_drugs; ++i) {
            all_ids.push_back(i);
            if (drugs[size_t(i)].has_motif) motif_ids.push_back(i);
        }
        std::vector<double> cell_offset(size_t(spec.n_cells));
        for (double& x : cell_offset) x = rs.next_double() * 2.0 - 1.0;
        char buf[64];
        for (int s = 0; s < spec.n_pairs; ++s) {
            bool positive = rs.next_double() < spec.positive_rate;
            int a, b;
            if (positive) {
                a = motif_ids[rs.next_below(motif_ids.size())];
                do {
                    b = motif_ids[rs.next_below(motif_ids.size())];
                } while (b == a);
            } else {
                do {
                    a = all_ids[rs.next_below(all_ids.size())];
                    b = all_ids[rs.next_below(all_ids.size())];
                } while (a == b ||
                         (drugs[size_t(a)].has_motif && drugs[size_t(b)].has_motif));
            }
            int cell = int(rs.next_below(uint64_t(spec.n_cells)));
            double magnitude = 2.0 + std::abs(rs.next_gaussian()) * 8.0;
            double score = positive ? 10.0 + magnitude : 10.0 - magnitude;
            score += cell_offset[size_t(cell)];  // stays on the label's side of 10
            std::snprintf(buf, sizeof buf, ",CELL%d,%.3f,T%d\n", cell, score, a % 5);
            f << drugs[size_t(a)].id << "," << drugs[size_t(b)].id << buf;
        }
    }

    // Training configuration sized for the benchmark.
    cfg::Config c;
    auto abs = [&](const char* name) { return (fs::absolute(fs::path(out_dir)) / name).string(); };
    c.set("dataset.drugs", abs("drugs.csv"));
    c.set("dataset.cells", abs("cells.csv"));
    c.set("dataset.samples", abs("samples.csv"));
    c.set("dataset.genes", abs("genes.txt"));
    c.set("task.task", "classification");
    c.set("protocol.protocol", "warm");
    c.set("protocol.k", "5");
    c.set("model.d", "32");
    c.set("model.gin_layers", "3");
    c.set("model.temperature", "0.15");
    c.set("model.set2set_steps", "2");
    c.set("model.dropout", "0.1");
    c.set("model.intervention_k", "2");
    c.set("model.cell_embed", "32");
    c.set("model.head_hidden1", "128");
    c.set("model.head_hidden2", "64");
    c.set("train.epochs", "12");
    c.set("train.batch_size", "64");
    c.set("train.lr", "0.001");
    c.set("run.seed", std::to_string(spec.seed));
    std::string cfg_path = (fs::path(out_dir) / "config.cfg").string();
    c.save(cfg_path);
    return cfg_path;
}

}  // namespace cdds::data
