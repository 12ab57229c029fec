#pragma once

#include <string>
#include <vector>

#include "smigan/smiles.hpp"

namespace smigan {

/// Canonical SMILES: Morgan-style iterative refinement over (element,
/// degree, charge, explicit H, aromatic flag), remaining ties broken by
/// the lexicographically smallest emitted string. The output is identical
/// for every atom-order permutation of the same molecule. Stereo markers
/// are dropped.
std::string canonicalize(const MolGraph& g);

/// Refined canonical ranks (dense, 0-based, possibly with ties left when
/// atoms are symmetry-equivalent). Exposed for fingerprint/debug use.
std::vector<int> morgan_ranks(const MolGraph& g);

}  // namespace smigan
