#pragma once

#include <vector>

#include "chem/featurize.hpp"
#include "chem/mol.hpp"

namespace cdds::model {

// Model-ready view of a featurized molecule: feature matrices plus directed
// edge lists for message passing (each undirected bond appears twice).
struct DrugGraph {
    int n_atoms = 0;
    int n_edges = 0;                 // directed
    std::vector<double> atom_feat;   // n_atoms x kAtomFeatureDim
    std::vector<double> edge_feat;   // n_edges x kBondFeatureDim
    std::vector<int> src;            // message source atom per directed edge
    std::vector<int> dst;            // message target atom per directed edge
};

inline DrugGraph make_drug_graph(chem::MolecularGraph& mol) {
    if (mol.atom_features.empty()) chem::featurize(mol);
    DrugGraph g;
    g.n_atoms = int(mol.atoms.size());
    g.n_edges = int(mol.bonds.size()) * 2;
    g.atom_feat = mol.atom_features;
    g.edge_feat.reserve(size_t(g.n_edges) * chem::kBondFeatureDim);
    g.src.reserve(size_t(g.n_edges));
    g.dst.reserve(size_t(g.n_edges));
    for (size_t bi = 0; bi < mol.bonds.size(); ++bi) {
        const chem::Bond& b = mol.bonds[bi];
        const double* row = mol.bond_features.data() + bi * chem::kBondFeatureDim;
        for (int rep = 0; rep < 2; ++rep) {
            g.src.push_back(rep == 0 ? b.a : b.b);
            g.dst.push_back(rep == 0 ? b.b : b.a);
            g.edge_feat.insert(g.edge_feat.end(), row, row + chem::kBondFeatureDim);
        }
    }
    return g;
}

}  // namespace cdds::model
