#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cdds::chem {

struct ElementInfo {
    int atomic_number = 0;
    const char* symbol = "";
    double mass = 0.0;  // standard atomic weight, u
};

// Elements 1..118. Index 0 is a sentinel.
const ElementInfo& element(int atomic_number);

// Symbol lookup, case sensitive ("Cl" != "cl"). Returns 0 when unknown.
int atomic_number_of(std::string_view symbol);

// Allowed valences for the SMILES organic subset, in increasing order.
// Empty for elements outside the subset.
const std::vector<int>& organic_valences(int atomic_number);

bool is_organic_subset(int atomic_number);

// Upper bound used by the valence check. Organic-subset elements use their
// table maximum; everything else gets a permissive cap of 8.
int max_allowed_valence(int atomic_number);

}  // namespace cdds::chem
