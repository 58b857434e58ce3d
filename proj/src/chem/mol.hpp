#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdds::chem {

enum class Chirality : uint8_t { none = 0, cw, ccw, other };

enum class Hybridization : uint8_t { sp = 0, sp2, sp3, sp3d, sp3d2, other };

enum class BondOrder : uint8_t { single = 0, double_bond, triple, aromatic };

// z/e are reserved for CIP-resolved stereo; the parser assigns the
// atom-order-relative cis/trans forms from directional bonds.
enum class BondStereo : uint8_t { none = 0, any, z, e, cis, trans };

struct Atom {
    int element = 6;             // atomic number
    int formal_charge = 0;
    bool is_aromatic = false;
    int explicit_h = 0;          // hydrogen count; hydrogens are never graph nodes
    Chirality chirality = Chirality::none;
    int degree = 0;              // heavy-neighbor count
    Hybridization hybridization = Hybridization::sp3;
    double mass = 0.0;           // standard atomic weight, u
};

struct Bond {
    int a = -1;
    int b = -1;                  // atom indices, in written order
    BondOrder order = BondOrder::single;
    bool is_conjugated = false;
    bool is_in_ring = false;
    BondStereo stereo = BondStereo::none;
};

inline int bond_order_int(BondOrder o) {
    switch (o) {
        case BondOrder::single: return 1;
        case BondOrder::double_bond: return 2;
        case BondOrder::triple: return 3;
        case BondOrder::aromatic: return 1;  // minimum Kekule contribution
    }
    return 1;
}

struct MolecularGraph {
    std::vector<Atom> atoms;
    std::vector<Bond> bonds;
    std::vector<std::vector<int>> incident;  // atom index -> incident bond indices
    std::string smiles;                      // source string
    bool stripped_fragments = false;         // true when salt components were dropped

    // Filled by featurize(); row-major.
    std::vector<double> atom_features;       // n_atoms x kAtomFeatureDim
    std::vector<double> bond_features;       // n_bonds x kBondFeatureDim

    int other_end(int bond_idx, int atom_idx) const {
        const Bond& b = bonds[size_t(bond_idx)];
        return b.a == atom_idx ? b.b : b.a;
    }
};

inline constexpr int kAtomFeatureDim = 133;
inline constexpr int kBondFeatureDim = 14;

// Bumped whenever the feature column layout changes; stored in checkpoints.
inline constexpr uint32_t kFeatureLayoutVersion = 1;

enum class ParseErrorKind { EmptyInput, UnsupportedToken, UnclosedRing, ValenceViolation };

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, const std::string& msg, size_t pos = 0)
        : std::runtime_error(msg), kind_(kind), pos_(pos) {}
    ParseErrorKind kind() const { return kind_; }
    size_t position() const { return pos_; }

private:
    ParseErrorKind kind_;
    size_t pos_;
};

const char* parse_error_kind_name(ParseErrorKind k);

}  // namespace cdds::chem
