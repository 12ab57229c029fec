#pragma once

#include <vector>

#include "smigan/smiles.hpp"

namespace smigan {

/// Checks every atom against the allowed-valence table (C:4, N:3, O:2,
/// S:{2,4,6}, P:{3,5}, halogens:1, B:3). Aromatic bonds count 1 each and
/// every aromatic atom receives an extra +1 on its bond-order sum.
/// Cations on N/O/S/P raise the allowed valence by the charge; anions
/// lower it by the charge magnitude. Aromatic atoms must additionally lie
/// on a cycle of aromatic atoms. Returns one diagnostic per violation;
/// empty means chemically valid.
std::vector<Diagnostic> check_valence(const MolGraph& g);

/// Implicit hydrogen count per atom: organic-subset atoms fill up to the
/// smallest allowed valence >= their bond-order sum; bracket atoms have
/// none (their H count is explicit). Atoms over valence get 0.
std::vector<int> implicit_hydrogens(const MolGraph& g);

/// Bond-order sum per atom including the aromatic +1 bonus, excluding
/// hydrogens of any kind.
std::vector<int> bond_order_sums(const MolGraph& g);

}  // namespace smigan
