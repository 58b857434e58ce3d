#pragma once

#include "chem/mol.hpp"

namespace cdds::chem {

// Fills g.atom_features (N x 133) and g.bond_features (M x 14), row-major.
//
// Atom row layout, frozen (checkpoints depend on it):
//   [0..100]   atomic number 1..100 one-hot, 100 = other
//   [101..107] degree 0..5 one-hot, 107 = other
//   [108..113] formal charge {-1,-2,+1,+2,0} one-hot, 113 = other
//   [114..118] chirality {none,cw,ccw,other} one-hot + spare
//   [119..124] hydrogen count 0..4 one-hot, 124 = other
//   [125..130] hybridization {sp,sp2,sp3,sp3d,sp3d2} one-hot, 130 = other
//   [131]      aromatic flag
//   [132]      mass / 100
//
// Bond row layout:
//   [0]        null-bond flag (always 0 for real bonds)
//   [1..4]     order {single,double,triple,aromatic} one-hot
//   [5]        conjugated
//   [6]        in ring
//   [7..13]    stereo {none,any,z,e,cis,trans} one-hot, 13 = other
void featurize(MolecularGraph& g);

}  // namespace cdds::chem
