#pragma once

#include <string>
#include <vector>

#include "chem/mol.hpp"

namespace cdds::run {

// Explanation renderings. Atom shading is normalized per molecule (noted in
// each file header); atoms at or above the reporting threshold are outlined.
// The SVG layout is force-directed with a fixed seed and iteration count, so
// repeated invocations are byte-identical.
void write_explanation_dot(const chem::MolecularGraph& mol, const std::vector<double>& importance,
                           double threshold, const std::string& path);

void write_explanation_svg(const chem::MolecularGraph& mol, const std::vector<double>& importance,
                           double threshold, const std::string& path);

}  // namespace cdds::run
