#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chem/mol.hpp"

namespace cdds::chem {

struct BitSet {
    int n_bits = 0;
    std::vector<uint64_t> words;

    explicit BitSet(int bits = 0) : n_bits(bits), words(size_t((bits + 63) / 64), 0) {}
    void set(int i) { words[size_t(i) / 64] |= (uint64_t(1) << (size_t(i) % 64)); }
    bool test(int i) const { return (words[size_t(i) / 64] >> (size_t(i) % 64)) & 1; }
    int count() const;
};

// Hashes canonical labels of all simple paths of 0..max_len bonds into a bit
// set. Labels are (element, bond order) sequences, read from whichever end is
// lexicographically smaller, so the result is invariant to atom reordering.
// max_len >= 1; n_bits a power of two >= 64.
BitSet path_fingerprint(const MolecularGraph& g, int max_len, int n_bits);

// |a & b| / |a | b|; 1.0 when both are empty. Throws on n_bits mismatch.
double tanimoto(const BitSet& a, const BitSet& b);

// Sorted unique path labels of a short fingerprint; used as a deterministic
// tie-break key when stripping salt fragments.
std::string fingerprint_signature(const MolecularGraph& g);

}  // namespace cdds::chem
