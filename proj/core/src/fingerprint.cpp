#include "smigan/fingerprint.hpp"

#include <bit>
#include <cstring>
#include <functional>

namespace smigan {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

char bond_char(BondOrder order) {
  switch (order) {
    case BondOrder::Single: return '-';
    case BondOrder::Double: return '=';
    case BondOrder::Triple: return '#';
    case BondOrder::Aromatic: return ':';
  }
  return '?';
}

void atom_key(const Atom& a, std::string& out) {
  out += a.element;
  out += a.aromatic ? '*' : '.';
}

}  // namespace

void Fingerprint::set(int bit) { words_[bit >> 6] |= 1ULL << (bit & 63); }

bool Fingerprint::test(int bit) const {
  return (words_[bit >> 6] >> (bit & 63)) & 1ULL;
}

int Fingerprint::popcount() const {
  int n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

int Fingerprint::and_count(const Fingerprint& other) const {
  int n = 0;
  for (int i = 0; i < kWords; ++i) n += std::popcount(words_[i] & other.words_[i]);
  return n;
}

int Fingerprint::or_count(const Fingerprint& other) const {
  int n = 0;
  for (int i = 0; i < kWords; ++i) n += std::popcount(words_[i] | other.words_[i]);
  return n;
}

std::string Fingerprint::to_hex() const {
  static const char digits[] = "0123456789abcdef";
  std::string out(kBits / 4, '0');
  for (int d = 0; d < kBits / 4; ++d) {
    int v = 0;
    for (int k = 0; k < 4; ++k)
      v = (v << 1) | (test(4 * d + k) ? 1 : 0);  // bit 0 is the high bit
    out[d] = digits[v];
  }
  return out;
}

Fingerprint path_fingerprint(const MolGraph& g) {
  Fingerprint fp;
  Adjacency adj = build_adjacency(g);
  const int n = static_cast<int>(g.atoms.size());
  std::vector<bool> on_path(n, false);

  // DFS over simple paths of 0..7 bonds from every start atom; the key is
  // the element/aromatic/bond sequence, normalized to the smaller of the
  // two traversal directions so each path maps to one bit.
  std::vector<std::string> pieces;  // alternating atom / bond tokens
  std::string fwd, rev;
  auto set_path_bit = [&]() {
    fwd.clear();
    rev.clear();
    for (const auto& p : pieces) fwd += p;
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) rev += *it;
    fp.set(static_cast<int>(fnv1a(fwd <= rev ? fwd : rev) % Fingerprint::kBits));
  };

  std::function<void(int, int)> walk = [&](int u, int depth) {
    set_path_bit();
    if (depth == 7) return;
    for (auto [to, bidx] : adj[u]) {
      if (on_path[to]) continue;
      pieces.emplace_back(1, bond_char(g.bonds[bidx].order));
      std::string token;
      atom_key(g.atoms[to], token);
      pieces.push_back(std::move(token));
      on_path[to] = true;
      walk(to, depth + 1);
      on_path[to] = false;
      pieces.pop_back();
      pieces.pop_back();
    }
  };

  for (int start = 0; start < n; ++start) {
    pieces.clear();
    std::string token;
    atom_key(g.atoms[start], token);
    pieces.push_back(std::move(token));
    on_path[start] = true;
    walk(start, 0);
    on_path[start] = false;
  }
  return fp;
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  int unions = a.or_count(b);
  if (unions == 0) return 1.0;
  return static_cast<double>(a.and_count(b)) / static_cast<double>(unions);
}

}  // namespace smigan
