#include "chem/featurize.hpp"

namespace cdds::chem {

void featurize(MolecularGraph& g) {
    g.atom_features.assign(g.atoms.size() * size_t(kAtomFeatureDim), 0.0);
    for (size_t i = 0; i < g.atoms.size(); ++i) {
        const Atom& a = g.atoms[i];
        double* row = g.atom_features.data() + i * size_t(kAtomFeatureDim);

        int z_slot = (a.element >= 1 && a.element <= 100) ? a.element - 1 : 100;
        row[z_slot] = 1.0;

        int deg_slot = (a.degree >= 0 && a.degree <= 5) ? a.degree : 6;
        row[101 + deg_slot] = 1.0;

        int chg_slot;
        switch (a.formal_charge) {
            case -1: chg_slot = 0; break;
            case -2: chg_slot = 1; break;
            case +1: chg_slot = 2; break;
            case +2: chg_slot = 3; break;
            case 0: chg_slot = 4; break;
            default: chg_slot = 5; break;
        }
        row[108 + chg_slot] = 1.0;

        row[114 + int(a.chirality)] = 1.0;

        int h_slot = (a.explicit_h >= 0 && a.explicit_h <= 4) ? a.explicit_h : 5;
        row[119 + h_slot] = 1.0;

        int hyb_slot = int(a.hybridization) <= 4 ? int(a.hybridization) : 5;
        row[125 + hyb_slot] = 1.0;

        row[131] = a.is_aromatic ? 1.0 : 0.0;
        row[132] = a.mass / 100.0;
    }

    g.bond_features.assign(g.bonds.size() * size_t(kBondFeatureDim), 0.0);
    for (size_t i = 0; i < g.bonds.size(); ++i) {
        const Bond& b = g.bonds[i];
        double* row = g.bond_features.data() + i * size_t(kBondFeatureDim);
        row[0] = 0.0;  // real bond
        row[1 + int(b.order)] = 1.0;
        row[5] = b.is_conjugated ? 1.0 : 0.0;
        row[6] = b.is_in_ring ? 1.0 : 0.0;
        int st_slot = int(b.stereo) <= 5 ? int(b.stereo) : 6;
        row[7 + st_slot] = 1.0;
    }
}

}  // namespace cdds::chem
