#include "smigan/valence.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace smigan {

namespace {

// Highest allowed valence per element; 0 = not in the table (no check).
int max_valence(const std::string& element) {
  if (element == "C") return 4;
  if (element == "N") return 3;
  if (element == "O") return 2;
  if (element == "S") return 6;   // {2,4,6}
  if (element == "P") return 5;   // {3,5}
  if (element == "B") return 3;
  if (element == "F" || element == "Cl" || element == "Br" || element == "I") return 1;
  if (element == "H") return 1;
  return 0;
}

// Smallest allowed valence >= sum, for implicit-H fill on organic atoms.
int fill_valence(const std::string& element, int sum) {
  if (element == "S") {
    for (int v : {2, 4, 6})
      if (sum <= v) return v;
    return 6;
  }
  if (element == "P") {
    for (int v : {3, 5})
      if (sum <= v) return v;
    return 5;
  }
  int v = max_valence(element);
  return std::max(v, sum);
}

int allowed_with_charge(const Atom& atom) {
  int base = max_valence(atom.element);
  if (base == 0) return 0;
  if (atom.charge > 0) {
    // Cation shift only for N/O/S/P; a charged carbon keeps its 4.
    if (atom.element == "N" || atom.element == "O" || atom.element == "S" ||
        atom.element == "P")
      return base + atom.charge;
    return base;
  }
  if (atom.charge < 0) return std::max(0, base + atom.charge);
  return base;
}

// Marks atoms incident to a non-bridge edge of the aromatic subgraph,
// i.e. atoms that lie on a cycle of aromatic atoms.
std::vector<bool> atoms_on_aromatic_cycle(const MolGraph& g) {
  int n = static_cast<int>(g.atoms.size());
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int i = 0; i < static_cast<int>(g.bonds.size()); ++i) {
    const Bond& b = g.bonds[i];
    if (b.order != BondOrder::Aromatic) continue;
    if (!g.atoms[b.a].aromatic || !g.atoms[b.b].aromatic) continue;
    adj[b.a].emplace_back(b.b, i);
    adj[b.b].emplace_back(b.a, i);
  }
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> on_cycle(n, false);
  int timer = 0;
  // Iterative Tarjan bridge finding; every non-bridge aromatic edge is on a cycle.
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1 || adj[root].empty()) continue;
    struct Frame { int v; int parent_edge; std::size_t next; };
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.v].size()) {
        auto [to, edge] = adj[f.v][f.next++];
        if (edge == f.parent_edge) continue;
        if (disc[to] == -1) {
          disc[to] = low[to] = timer++;
          stack.push_back({to, edge, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[to]);
          // back edge: lies on a cycle
          on_cycle[f.v] = on_cycle[to] = true;
        }
      } else {
        int v = f.v;
        int parent_edge = f.parent_edge;
        stack.pop_back();
        if (!stack.empty()) {
          int u = stack.back().v;
          low[u] = std::min(low[u], low[v]);
          // tree edge (u,v) is a bridge iff low[v] > disc[u]
          if (low[v] <= disc[u] && parent_edge >= 0) on_cycle[u] = on_cycle[v] = true;
        }
      }
    }
  }
  return on_cycle;
}

}  // namespace

std::vector<int> bond_order_sums(const MolGraph& g) {
  std::vector<int> sums(g.atoms.size(), 0);
  for (const Bond& b : g.bonds) {
    int order = b.order == BondOrder::Aromatic ? 1 : static_cast<int>(b.order);
    sums[b.a] += order;
    sums[b.b] += order;
  }
  for (std::size_t i = 0; i < g.atoms.size(); ++i)
    if (g.atoms[i].aromatic) sums[i] += 1;
  return sums;
}

std::vector<int> implicit_hydrogens(const MolGraph& g) {
  std::vector<int> sums = bond_order_sums(g);
  std::vector<int> implicit(g.atoms.size(), 0);
  for (std::size_t i = 0; i < g.atoms.size(); ++i) {
    const Atom& atom = g.atoms[i];
    if (atom.explicit_h) continue;  // bracket atoms fix their H count
    if (!is_organic_subset_element(atom.element)) continue;
    int target = fill_valence(atom.element, sums[i]);
    if (sums[i] <= target) implicit[i] = target - sums[i];
  }
  return implicit;
}

std::vector<Diagnostic> check_valence(const MolGraph& g) {
  std::vector<Diagnostic> diags;
  std::vector<int> sums = bond_order_sums(g);
  std::vector<bool> on_cycle = atoms_on_aromatic_cycle(g);

  for (std::size_t i = 0; i < g.atoms.size(); ++i) {
    const Atom& atom = g.atoms[i];
    int allowed = allowed_with_charge(atom);
    if (allowed == 0 && max_valence(atom.element) == 0) continue;  // exotic element: no table entry
    int total = sums[i] + (atom.explicit_h ? *atom.explicit_h : 0);
    if (total > allowed) {
      std::ostringstream msg;
      msg << "valence of " << atom.element << " exceeded: " << total << " > " << allowed;
      diags.push_back(Diagnostic{atom.src_offset, msg.str()});
    }
    if (atom.aromatic && !on_cycle[i]) {
      diags.push_back(
          Diagnostic{atom.src_offset, "aromatic atom not on a cycle of aromatic atoms"});
    }
  }
  return diags;
}

}  // namespace smigan
