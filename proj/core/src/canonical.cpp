#include "smigan/canonical.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>

namespace smigan {

namespace {

std::string atom_token(const Atom& a) {
  bool bare = !a.explicit_h && a.charge == 0 && !a.isotope &&
              is_organic_subset_element(a.element);
  std::string el = a.element;
  if (a.aromatic)
    for (char& c : el) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (bare) return el;
  std::string s = "[";
  if (a.isotope) s += std::to_string(*a.isotope);
  s += el;
  int h = a.explicit_h.value_or(0);
  if (h == 1)
    s += "H";
  else if (h > 1)
    s += "H" + std::to_string(h);
  if (a.charge == 1)
    s += "+";
  else if (a.charge == -1)
    s += "-";
  else if (a.charge > 1)
    s += "+" + std::to_string(a.charge);
  else if (a.charge < -1)
    s += "-" + std::to_string(-a.charge);
  s += "]";
  return s;
}

std::string bond_token(BondOrder order, const Atom& x, const Atom& y) {
  BondOrder def =
      (x.aromatic && y.aromatic) ? BondOrder::Aromatic : BondOrder::Single;
  if (order == def) return "";
  switch (order) {
    case BondOrder::Single: return "-";
    case BondOrder::Double: return "=";
    case BondOrder::Triple: return "#";
    case BondOrder::Aromatic: return ":";
  }
  return "";
}

std::string ring_digit_token(int digit) {
  if (digit <= 9) return std::string(1, static_cast<char>('0' + digit));
  if (digit <= 99) return "%" + std::to_string(digit);
  throw std::logic_error("more than 99 ring closures open at once");
}

// Initial invariant per the canonical-ranking design: element, degree,
// charge, explicit H, aromatic flag.
std::vector<int> initial_ranks(const MolGraph& g, const Adjacency& adj) {
  using Key = std::tuple<std::string, int, int, int, bool>;
  std::vector<Key> keys(g.atoms.size());
  for (std::size_t i = 0; i < g.atoms.size(); ++i) {
    const Atom& a = g.atoms[i];
    keys[i] = Key{a.element, static_cast<int>(adj[i].size()), a.charge,
                  a.explicit_h.value_or(-1), a.aromatic};
  }
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> ranks(g.atoms.size());
  for (std::size_t i = 0; i < g.atoms.size(); ++i)
    ranks[i] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
  return ranks;
}

// One pass of neighborhood refinement; returns the class count.
int refine_ranks(const MolGraph& g, const Adjacency& adj, std::vector<int>& ranks) {
  const std::size_t n = g.atoms.size();
  int classes = static_cast<int>(std::set<int>(ranks.begin(), ranks.end()).size());
  for (std::size_t iter = 0; iter < n; ++iter) {
    using Key = std::pair<int, std::vector<std::pair<int, int>>>;
    std::vector<Key> keys(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::pair<int, int>> nbrs;
      nbrs.reserve(adj[i].size());
      for (auto [to, bidx] : adj[i])
        nbrs.emplace_back(static_cast<int>(g.bonds[bidx].order), ranks[to]);
      std::sort(nbrs.begin(), nbrs.end());
      keys[i] = {ranks[i], std::move(nbrs)};
    }
    std::vector<Key> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 0; i < n; ++i)
      ranks[i] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
    int new_classes = static_cast<int>(sorted.size());
    if (new_classes == classes) break;
    classes = new_classes;
  }
  return classes;
}

// Splits atom `a` off the front of its tied class.
std::vector<int> split_rank(const std::vector<int>& ranks, int a) {
  std::vector<int> out(ranks.size());
  int r = ranks[a];
  for (std::size_t i = 0; i < ranks.size(); ++i)
    out[i] = ranks[i] > r ? ranks[i] + 1 : ranks[i];
  for (std::size_t i = 0; i < ranks.size(); ++i)
    if (ranks[i] == r && static_cast<int>(i) != a) out[i] = r + 1;
  return out;
}

struct Emitter {
  const MolGraph& g;
  const Adjacency& adj;
  const std::vector<int>& ranks;

  std::vector<int> preorder;          // atom -> visit index, -1 unvisited
  std::vector<std::vector<int>> children;      // tree child atoms, in emit order
  std::vector<int> parent_bond;                // atom -> bond index to parent
  std::vector<std::vector<int>> ring_bonds_at; // atom -> incident ring bond indices
  std::map<int, int> open_digit;               // ring bond -> digit
  std::set<int> digits_in_use;
  std::string out;

  Emitter(const MolGraph& graph, const Adjacency& adjacency, const std::vector<int>& r)
      : g(graph), adj(adjacency), ranks(r) {}

  std::vector<std::pair<int, int>> ordered_neighbors(int u) const {
    auto nbrs = adj[u];
    // Ranks are fully resolved in canonical mode, so the index tie-break
    // only engages for identity-rank (input order) emission.
    std::sort(nbrs.begin(), nbrs.end(), [&](const auto& x, const auto& y) {
      return std::pair(ranks[x.first], x.first) < std::pair(ranks[y.first], y.first);
    });
    return nbrs;
  }

  // Classification DFS; must enumerate in the same order emission will.
  void classify(int root) {
    struct Frame { int atom; std::size_t next; std::vector<std::pair<int, int>> nbrs; };
    std::vector<Frame> stack;
    std::vector<bool> bond_used(g.bonds.size(), false);
    int counter = static_cast<int>(
        std::count_if(preorder.begin(), preorder.end(), [](int v) { return v >= 0; }));
    preorder[root] = counter++;
    stack.push_back({root, 0, ordered_neighbors(root)});
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next >= f.nbrs.size()) {
        stack.pop_back();
        continue;
      }
      auto [to, bidx] = f.nbrs[f.next++];
      if (bond_used[bidx]) continue;
      bond_used[bidx] = true;
      if (preorder[to] < 0) {
        preorder[to] = counter++;
        parent_bond[to] = bidx;
        children[f.atom].push_back(to);
        stack.push_back({to, 0, ordered_neighbors(to)});
      } else {
        ring_bonds_at[f.atom].push_back(bidx);
        ring_bonds_at[to].push_back(bidx);
      }
    }
  }

  void emit_atom(int u) {
    out += atom_token(g.atoms[u]);
    // closings first (ascending digit), then openings by far-atom preorder
    std::vector<int> closings, openings;
    for (int bidx : ring_bonds_at[u]) {
      if (open_digit.count(bidx))
        closings.push_back(bidx);
      else
        openings.push_back(bidx);
    }
    std::sort(closings.begin(), closings.end(),
              [&](int x, int y) { return open_digit.at(x) < open_digit.at(y); });
    auto far_atom = [&](int bidx) {
      return g.bonds[bidx].a == u ? g.bonds[bidx].b : g.bonds[bidx].a;
    };
    std::sort(openings.begin(), openings.end(),
              [&](int x, int y) { return preorder[far_atom(x)] < preorder[far_atom(y)]; });
    for (int bidx : closings) {
      int digit = open_digit.at(bidx);
      out += bond_token(g.bonds[bidx].order, g.atoms[u], g.atoms[far_atom(bidx)]);
      out += ring_digit_token(digit);
      open_digit.erase(bidx);
      digits_in_use.erase(digit);
    }
    for (int bidx : openings) {
      int digit = 1;
      while (digits_in_use.count(digit)) ++digit;
      digits_in_use.insert(digit);
      open_digit[bidx] = digit;
      out += bond_token(g.bonds[bidx].order, g.atoms[u], g.atoms[far_atom(bidx)]);
      out += ring_digit_token(digit);
    }
    for (std::size_t k = 0; k < children[u].size(); ++k) {
      int v = children[u][k];
      std::string bond =
          bond_token(g.bonds[parent_bond[v]].order, g.atoms[u], g.atoms[v]);
      bool last = (k + 1 == children[u].size());
      if (!last) out += "(";
      out += bond;
      emit_atom(v);
      if (!last) out += ")";
    }
  }

  // Emits every component, roots in `roots` order, '.'-joined.
  std::string run(const std::vector<int>& roots) {
    preorder.assign(g.atoms.size(), -1);
    children.assign(g.atoms.size(), {});
    parent_bond.assign(g.atoms.size(), -1);
    ring_bonds_at.assign(g.atoms.size(), {});
    bool first = true;
    for (int root : roots) {
      if (preorder[root] >= 0) continue;
      classify(root);
      if (!first) out += ".";
      first = false;
      emit_atom(root);
    }
    return std::move(out);
  }
};

std::string emit_component(const MolGraph& g, const Adjacency& adj,
                           const std::vector<int>& ranks, int root) {
  Emitter e(g, adj, ranks);
  return e.run({root});
}

// Resolves remaining ties by trying every member of the smallest tied
// class and keeping the lexicographically smallest emission.
std::string resolve_and_emit(const MolGraph& g, const Adjacency& adj,
                             std::vector<int> ranks) {
  refine_ranks(g, adj, ranks);
  const std::size_t n = g.atoms.size();
  std::vector<int> class_size(n, 0);
  for (int r : ranks) ++class_size[r];
  int tied_rank = -1;
  for (std::size_t r = 0; r < n; ++r) {
    if (class_size[r] > 1) {
      tied_rank = static_cast<int>(r);
      break;
    }
  }
  if (tied_rank < 0) {
    int root = static_cast<int>(std::min_element(ranks.begin(), ranks.end()) -
                                ranks.begin());
    return emit_component(g, adj, ranks, root);
  }
  std::optional<std::string> best;
  for (std::size_t a = 0; a < n; ++a) {
    if (ranks[a] != tied_rank) continue;
    std::string s = resolve_and_emit(g, adj, split_rank(ranks, static_cast<int>(a)));
    if (!best || s < *best) best = std::move(s);
  }
  return *best;
}

std::vector<std::vector<int>> connected_components(const MolGraph& g,
                                                   const Adjacency& adj) {
  std::vector<std::vector<int>> comps;
  std::vector<bool> seen(g.atoms.size(), false);
  for (std::size_t i = 0; i < g.atoms.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> comp, stack{static_cast<int>(i)};
    seen[i] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (auto [to, bidx] : adj[u]) {
        (void)bidx;
        if (!seen[to]) {
          seen[to] = true;
          stack.push_back(to);
        }
      }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

MolGraph extract_component(const MolGraph& g, const std::vector<int>& atoms) {
  MolGraph sub;
  std::vector<int> remap(g.atoms.size(), -1);
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    remap[atoms[k]] = static_cast<int>(k);
    sub.atoms.push_back(g.atoms[atoms[k]]);
  }
  for (const Bond& b : g.bonds)
    if (remap[b.a] >= 0 && remap[b.b] >= 0)
      sub.bonds.push_back(Bond{remap[b.a], remap[b.b], b.order, b.dir});
  return sub;
}

}  // namespace

std::vector<int> morgan_ranks(const MolGraph& g) {
  Adjacency adj = build_adjacency(g);
  std::vector<int> ranks = initial_ranks(g, adj);
  refine_ranks(g, adj, ranks);
  return ranks;
}

std::string canonicalize(const MolGraph& g) {
  if (g.atoms.empty()) return "";
  Adjacency adj = build_adjacency(g);
  auto comps = connected_components(g, adj);
  std::vector<std::string> parts;
  parts.reserve(comps.size());
  for (const auto& comp : comps) {
    MolGraph sub = extract_component(g, comp);
    Adjacency sub_adj = build_adjacency(sub);
    parts.push_back(resolve_and_emit(sub, sub_adj, initial_ranks(sub, sub_adj)));
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ".";
    out += parts[i];
  }
  return out;
}

std::string write_smiles(const MolGraph& g) {
  if (g.atoms.empty()) return "";
  Adjacency adj = build_adjacency(g);
  std::vector<int> ranks(g.atoms.size());
  for (std::size_t i = 0; i < ranks.size(); ++i) ranks[i] = static_cast<int>(i);
  std::vector<int> roots(g.atoms.size());
  for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = static_cast<int>(i);
  Emitter e(g, adj, ranks);
  return e.run(roots);
}

}  // namespace smigan
