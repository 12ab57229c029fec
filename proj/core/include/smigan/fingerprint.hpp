#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "smigan/smiles.hpp"

namespace smigan {

/// 2048-bit substructure fingerprint.
class Fingerprint {
 public:
  static constexpr int kBits = 2048;
  static constexpr int kWords = kBits / 64;

  void set(int bit);
  bool test(int bit) const;
  int popcount() const;
  int and_count(const Fingerprint& other) const;
  int or_count(const Fingerprint& other) const;
  bool operator==(const Fingerprint& other) const = default;

  /// 512 hex chars, bit 0 first as the high bit of the first digit.
  std::string to_hex() const;

 private:
  std::array<std::uint64_t, kWords> words_{};
};

/// Hashes every linear atom-bond path of 0..7 bonds (element/aromatic/
/// bond-order sequence, direction-normalized) into 2048 bits. Invariant
/// under atom-order permutation.
Fingerprint path_fingerprint(const MolGraph& g);

/// |intersection| / |union| over set bits, with empty/empty defined as 1.
double tanimoto(const Fingerprint& a, const Fingerprint& b);

}  // namespace smigan
