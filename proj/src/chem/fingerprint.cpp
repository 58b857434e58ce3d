#include "chem/fingerprint.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include "chem/elements.hpp"
#include "util/rng.hpp"

namespace cdds::chem {

int BitSet::count() const {
    int c = 0;
    for (uint64_t w : words) c += std::popcount(w);
    return c;
}

namespace {

constexpr uint64_t kFingerprintSeed = 0x5dd5c0de5dd5c0deull;

char bond_char(BondOrder o) {
    switch (o) {
        case BondOrder::single: return '-';
        case BondOrder::double_bond: return '=';
        case BondOrder::triple: return '#';
        case BondOrder::aromatic: return ':';
    }
    return '-';
}

std::string atom_label(const Atom& a) {
    std::string s = element(a.element).symbol;
    if (a.is_aromatic)
        for (char& c : s) c = char(std::tolower((unsigned char)c));
    return s;
}

// Depth-first enumeration of simple paths; emits the canonical label of each.
template <typename Emit>
void walk_paths(const MolecularGraph& g, int max_len, Emit&& emit) {
    size_t n = g.atoms.size();
    std::vector<bool> on_path(n, false);
    std::vector<int> path_atoms;
    std::vector<int> path_bonds;

    auto canonical = [&]() {
        std::string fwd, rev;
        for (size_t k = 0; k < path_atoms.size(); ++k) {
            if (k) fwd += bond_char(g.bonds[size_t(path_bonds[k - 1])].order);
            fwd += atom_label(g.atoms[size_t(path_atoms[k])]);
        }
        for (size_t k = path_atoms.size(); k-- > 0;) {
            if (k + 1 < path_atoms.size()) rev += bond_char(g.bonds[size_t(path_bonds[k])].order);
            rev += atom_label(g.atoms[size_t(path_atoms[k])]);
        }
        return std::min(fwd, rev);
    };

    auto dfs = [&](auto&& self, int v) -> void {
        emit(canonical());
        if (int(path_bonds.size()) >= max_len) return;
        for (int bi : g.incident[size_t(v)]) {
            int u = g.other_end(bi, v);
            if (on_path[size_t(u)]) continue;
            on_path[size_t(u)] = true;
            path_atoms.push_back(u);
            path_bonds.push_back(bi);
            self(self, u);
            path_bonds.pop_back();
            path_atoms.pop_back();
            on_path[size_t(u)] = false;
        }
    };

    for (size_t start = 0; start < n; ++start) {
        on_path[start] = true;
        path_atoms.push_back(int(start));
        dfs(dfs, int(start));
        path_atoms.pop_back();
        on_path[start] = false;
    }
}

}  // namespace

BitSet path_fingerprint(const MolecularGraph& g, int max_len, int n_bits) {
    if (max_len < 1) throw std::invalid_argument("path_fingerprint: max_len must be >= 1");
    if (n_bits < 64 || (n_bits & (n_bits - 1)) != 0)
        throw std::invalid_argument("path_fingerprint: n_bits must be a power of two >= 64");
    BitSet fp(n_bits);
    walk_paths(g, max_len, [&](const std::string& label) {
        uint64_t h = rng::fnv1a(label, kFingerprintSeed);
        fp.set(int(h & uint64_t(n_bits - 1)));
    });
    return fp;
}

double tanimoto(const BitSet& a, const BitSet& b) {
    if (a.n_bits != b.n_bits) throw std::invalid_argument("tanimoto: bit set length mismatch");
    int inter = 0, uni = 0;
    for (size_t i = 0; i < a.words.size(); ++i) {
        inter += std::popcount(a.words[i] & b.words[i]);
        uni += std::popcount(a.words[i] | b.words[i]);
    }
    return uni == 0 ? 1.0 : double(inter) / double(uni);
}

std::string fingerprint_signature(const MolecularGraph& g) {
    std::set<std::string> labels;
    walk_paths(g, 4, [&](const std::string& label) { labels.insert(label); });
    std::string out;
    for (const auto& l : labels) {
        out += l;
        out += '|';
    }
    return out;
}

}  // namespace cdds::chem
