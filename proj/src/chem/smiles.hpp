#pragma once

#include <string>

#include "chem/mol.hpp"

namespace cdds::chem {

// Parses a SMILES string into a molecular graph.
//
// Supported grammar: organic-subset atoms (B C N O P S F Cl Br I and aromatic
// b c n o p s), bracket atoms [isotope? symbol chirality? Hcount? charge?],
// ring closures 0-9 and %nn, branches, bond symbols - = # : / \ and dots.
// Anything else raises UnsupportedToken. Lowercase aromaticity is trusted and
// then validated ring by ring (4n+2 pi electrons over a fixed contribution
// table); inconsistency raises ValenceViolation.
//
// Multi-fragment inputs keep the largest component (ties broken by fingerprint
// hash) and set stripped_fragments. Hydrogens are implicit only.
MolecularGraph parse_smiles(const std::string& smiles);

}  // namespace cdds::chem
