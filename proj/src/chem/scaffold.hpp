#pragma once

#include <string>

#include "chem/mol.hpp"

namespace cdds::chem {

// Bemis-Murcko scaffold key: iteratively deletes terminal (degree <= 1)
// atoms until only rings and linkers remain, then emits a canonical string
// under a graph-invariant labeling. Acyclic molecules map to "".
std::string scaffold_key(const MolecularGraph& g);

// Canonical certificate of an arbitrary graph; equal strings iff the colored
// graphs (element, aromaticity, charge, bond orders) are isomorphic.
std::string canonical_certificate(const MolecularGraph& g);

}  // namespace cdds::chem
